"""Command line front end: ``hkdlab check|norms|reproduce``.

Exit status: 0 when every requested check passes, 1 when a check or a
golden comparison fails (the report is still written), 2 for usage or
configuration errors.  Reports are byte-for-byte deterministic for a fixed
configuration; wall time goes to stderr only.
"""

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import DomainError, HKDError, NotCompatibleError, PreconditionError
from .linops import max_entry
from .lyap_norms import NormFamily, norm_table
from .rates import class_g_witness, log_weight, logpoly, parse_rate
from .systems import (DEFAULT_SEED, GALLERY, KernelInverse, check_evolution_property,
                      check_invariance, check_v_identities, default_grid, default_probes,
                      example_gallery, invariance_defect)
from .verify import (check_theorem1, check_theorem2, classify_fixed_time, classify_uniformity,
                     dichotomy_envelope, growth_envelope)

SCHEMA_VERSION = "1.0"
REPRODUCIBLE = ("nonuniform-example", "growth-not-dicho", "theorem1", "theorem2")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    example: str
    h: str = "exp:1"
    k: str = "exp:1"
    u: str | None = None
    projector: str = "identity"
    tmax: float = 10.0
    grid_points: int = 101
    tol: float = 1e-9
    env_tol: float = 1e-6
    seed: int = DEFAULT_SEED
    out: str | None = None
    format: str = "json"
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.example not in GALLERY:
            raise UsageError(f"unknown example {self.example!r}; choose from {', '.join(GALLERY)}")
        if not self.tmax > 0:
            raise UsageError("--tmax must be positive")
        if self.grid_points < 2:
            raise UsageError("--grid-points must be at least 2")
        if self.format not in ("json", "csv"):
            raise UsageError("--format must be json or csv")

    def echo(self):
        d = asdict(self)
        d.pop("out")
        extra = d.pop("extra")
        d.update(extra)
        return d


def _clean(obj):
    """Make ``obj`` JSON-safe: numpy scalars to floats, non-finite to None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def _document(config):
    return {"config": config.echo(), "structural": {}, "envelopes": {}, "norms": {},
            "theorems": {}, "violations": [],
            "meta": {"schema_version": SCHEMA_VERSION, "package": "hkdlab", "version": __version__}}


def _build(config):
    try:
        h, k = parse_rate(config.h), parse_rate(config.k)
        sys_ = example_gallery(config.example, h, k, config.u, config.projector) \
            if config.example == "scalar-ulnu" else example_gallery(config.example, h, k)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    grid = default_grid(config.tmax, config.grid_points)
    probes = default_probes(sys_.space, config.seed)
    return sys_, h, k, grid, probes


def _doubled_grid(config):
    return default_grid(2 * config.tmax, 2 * (config.grid_points - 1) + 1)


def cmd_check(config):
    """Structural checks, then envelopes and the two-horizon uniformity verdict.

    Returns ``(document, ok)``; nonuniformity is a finding, not a failure.
    """
    config.validate()
    sys_, h, k, grid, probes = _build(config)
    doc = _document(config)
    st = doc["structural"]
    cocycle = check_evolution_property(sys_, grid, config.tol)
    inv = check_invariance(sys_, grid, config.tol, probes)
    st["evolution"] = cocycle.as_dict()
    st["invariance"] = inv.as_dict()
    st["projector_norm_max"] = float(max(max_entry(sys_.P(t)) for t in grid))
    ok = cocycle.passed and inv.passed
    if not inv.passed:
        t, s, p = inv.where
        doc["violations"].append({"check": "invariance", "t": t, "s": s, "probe": p,
                                  "defect": inv.worst_raw,
                                  "defect_at_1_0": invariance_defect(sys_, 1.0, 0.0, [0.0, 1.0])
                                  if sys_.space.n == 2 and grid[-1] >= 1.0 else None})
    if not cocycle.passed:
        doc["violations"].append({"check": "evolution", "where": list(cocycle.where),
                                  "defect": cocycle.worst_raw})
    V = KernelInverse(sys_)
    if inv.passed:
        try:
            vid = check_v_identities(sys_, V, grid, config.tol, probes)
            st["kernel_inverse"] = {name: c.as_dict() for name, c in vid.items()}
            ok = ok and all(c.passed for c in vid.values())
        except NotCompatibleError as exc:
            st["kernel_inverse"] = {"error": str(exc)}
            ok = False
            V = None
    env_rows = []
    if inv.passed:
        big = _doubled_grid(config)
        for name, fn in (("dichotomy", dichotomy_envelope), ("growth", growth_envelope)):
            small = fn(sys_, h, k, grid, probes, kernel_inverse=V)
            large = fn(sys_, h, k, big, probes, kernel_inverse=V)
            classify_uniformity(small, large)
            entry = small.as_dict()
            entry["fixed_time_growth_at_0"] = classify_fixed_time(small, large, 0.0)
            entry["max_envelope_2T"] = large.max_envelope
            doc["envelopes"][name] = entry
            doc["violations"].extend(small.violations)
            if name == "dichotomy":
                env_rows = small.rows()
    else:
        doc["envelopes"] = {"status": "precondition-failed", "reason": "P is not invariant for U"}
    if config.extra.get("theorems"):
        for name, fn in (("theorem1", check_theorem1), ("theorem2", check_theorem2)):
            doc["theorems"][name] = fn(sys_, V, h, k, grid, probes=probes).as_dict()
    doc["_csv"] = (["t", "N1_req", "N2_req", "hull"],
                   [[r["t"], r["N1_req"], r["N2_req"], r["hull"]] for r in env_rows])
    return doc, ok


def cmd_norms(config, kind, probe_list):
    """Norm tables of the growth- or dichotomy-type family on the grid."""
    config.validate()
    if kind not in ("growth", "dichotomy"):
        raise UsageError("--kind must be growth or dichotomy")
    sys_, h, k, grid, _ = _build(config)
    probes = np.atleast_2d(np.asarray(probe_list, dtype=float))
    if probes.shape[1] != sys_.space.n:
        raise UsageError(f"probes must have {sys_.space.n} components")
    doc = _document(config)
    V = KernelInverse(sys_)
    env_fn = dichotomy_envelope if kind == "dichotomy" else growth_envelope
    try:
        env = env_fn(sys_, h, k, grid, kernel_inverse=V)
    except (PreconditionError, NotCompatibleError) as exc:
        doc["norms"] = {"kind": kind, "status": "precondition-failed", "reason": str(exc)}
        return doc, False
    if not env.bounded():
        doc["norms"] = {"kind": kind, "status": "precondition-failed",
                        "reason": f"{kind} envelope grows with the horizon "
                                  f"(ratio {env.horizon_ratio:.6g})"}
        return doc, False
    fam = NormFamily(kind, sys_, h, k, grid, V)
    rows = norm_table(fam, probes, upper=env.hull)
    doc["norms"] = {"kind": kind, "probes": probes.tolist(),
                    "columns": ["t", "probe", "value", "lower", "upper"],
                    "rows": [list(r) for r in rows]}
    doc["_csv"] = (["t", "probe", "value", "lower", "upper"], [list(r) for r in rows])
    return doc, True


def _golden(name, actual, expected, ok, tolerance):
    return {"name": name, "actual": actual, "expected": expected,
            "tolerance": tolerance, "passed": bool(ok)}


def _within(actual, expected, rel):
    return abs(actual - expected) <= rel * abs(expected)


def cmd_reproduce(name, seed=DEFAULT_SEED):
    """Run a pinned configuration and compare it with golden values."""
    if name not in REPRODUCIBLE:
        raise UsageError(f"unknown artifact {name!r}; choose from {', '.join(REPRODUCIBLE)}")
    from .rates import exponential
    E = exponential(1.0)
    L = logpoly()
    g10, g20 = default_grid(10, 101), default_grid(20, 201)
    goldens = []
    if name in ("nonuniform-example", "theorem1", "theorem2"):
        config = RunConfig("dicho-2d-constantP", seed=seed, extra={"artifact": name})
    else:
        config = RunConfig("growth-not-dicho", "logpoly", "logpoly", seed=seed,
                           extra={"artifact": name})
    doc = _document(config)
    sys_ = example_gallery(config.example, *((E, E) if config.h == "exp:1" else (L, L)))
    probes = default_probes(sys_.space, seed)

    if name == "nonuniform-example":
        small = dichotomy_envelope(sys_, E, E, g10, probes)
        large = dichotomy_envelope(sys_, E, E, g20, probes)
        verdict = classify_uniformity(small, large)
        worst = float(np.max(small.req_p / (log_weight(g10) * (1 + 1e-9))))
        goldens += [
            _golden("N1_req(s) <= r(s)", worst, 1.0, worst <= 1.0, 1e-9),
            _golden("N2_req(10)", float(small.req_q[-1]), 27.9735,
                    _within(small.req_q[-1], 27.9735, 0.01), 0.01),
            _golden("N2_req(10) attained at s", float(small.argmax_q[-1]), 0.0,
                    small.argmax_q[-1] == 0.0, 0.0),
            _golden("max envelope T=10", small.max_envelope, 27.9735,
                    _within(small.max_envelope, 27.9735, 0.01), 0.01),
            _golden("max envelope T=20", large.max_envelope, 65.5866,
                    _within(large.max_envelope, 65.5866, 0.01), 0.01),
            _golden("uniformity", verdict, "nonuniform", verdict == "nonuniform", None),
        ]
        doc["envelopes"] = {"T10": small.as_dict(), "T20": large.as_dict()}
    elif name == "growth-not-dicho":
        wit = class_g_witness(L, L, g20)
        grow = growth_envelope(sys_, L, L, g10, probes)
        d10 = dichotomy_envelope(sys_, L, L, g10, probes)
        d20 = dichotomy_envelope(sys_, L, L, g20, probes)
        growing = classify_fixed_time(d10, d20, 0.0)
        r = log_weight(g10) * (1 + 1e-6)
        m_worst = float(max(np.max(grow.req_p / r), np.max(grow.req_q / r)))
        t2 = check_theorem2(sys_, None, L, L, g20, probes=probes)
        goldens += [
            _golden("class G margin", wit.worst_margin, 1.0, abs(wit.worst_margin - 1) <= 1e-12, 1e-12),
            _golden("M_req(t) <= r(t)", m_worst, 1.0, m_worst <= 1.0, 1e-6),
            _golden("M2_req(10)", float(grow.req_q[-1]), 27.9735,
                    _within(grow.req_q[-1], 27.9735, 0.01), 0.01),
            _golden("N1_req(0) on [0,20]", float(d20.req_p[0]), 65.0, d20.req_p[0] > 65.0, None),
            _golden("N1_req(0) horizon trend", growing, "growing", growing == "growing", None),
            _golden("theorem2 verdict", t2.verdict, "fail", t2.verdict == "fail", None),
            _golden("theorem2 fitted N(0)", float(t2.fitted_n_p[0]), 65.5866,
                    _within(t2.fitted_n_p[0], 65.5866, 0.01), 0.01),
        ]
        doc["envelopes"] = {"growth": grow.as_dict(), "dichotomy_T20": d20.as_dict()}
        doc["theorems"]["theorem2"] = t2.as_dict()
    elif name == "theorem1":
        cases = [
            ("dicho-2d-constantP", example_gallery("dicho-2d-constantP", E, E)),
            ("dicho-2d-repaired", example_gallery("dicho-2d-repaired", E, E)),
            ("scalar-ulnu", example_gallery("scalar-ulnu", E, E)),
        ]
        for label, s in cases:
            res = check_theorem1(s, None, E, E, g10, probes=default_probes(s.space, seed))
            slack = max(res.hd_slack, res.kd_slack)
            goldens += [
                _golden(f"{label} verdict", res.verdict, "pass", res.verdict == "pass", None),
                _golden(f"{label} worst slack", slack, 0.0, slack <= 1e-9, 1e-9),
                _golden(f"{label} sufficiency vs envelope", res.derived_ratio, 0.0,
                        res.derived_ratio <= 1e-6, 1e-6),
            ]
            doc["theorems"][label] = res.as_dict()
    else:
        res = check_theorem2(sys_, None, E, E, g10, probes=probes)
        fit = float(np.max(res.fitted_n / (log_weight(g10) * (1 + 1e-6))))
        goldens += [
            _golden("verdict", res.verdict, "pass", res.verdict == "pass", None),
            _golden("product N*M slack", res.product_slack, 0.0, res.product_slack <= 1e-6, 1e-6),
            _golden("fitted N(s) <= r(s)", fit, 1.0, fit <= 1.0, 1e-6),
        ]
        doc["theorems"]["theorem2"] = res.as_dict()
    doc["theorems"]["golden_comparisons"] = goldens
    return doc, all(gc["passed"] for gc in goldens)


def render(doc, fmt):
    csv_part = doc.pop("_csv", None)
    if fmt == "csv":
        header, rows = csv_part or ([], [])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if v is None else repr(float(v)) if isinstance(v, float) else v
                        for v in row])
        return buf.getvalue()
    return json.dumps(_clean(doc), indent=1) + "\n"


def _common(p):
    p.add_argument("--example", required=True)
    p.add_argument("--h", default="exp:1", help="rate specifier: exp:A, poly:A, logpoly, table:PATH")
    p.add_argument("--k", default="exp:1")
    p.add_argument("--u", default=None, help="u profile for scalar-ulnu (exp-shift:C or linear:C)")
    p.add_argument("--projector", default="identity", choices=["identity", "zero"])
    p.add_argument("--tmax", type=float, default=10.0)
    p.add_argument("--grid-points", type=int, default=101)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--env-tol", type=float, default=1e-6)
    p.add_argument("--seed", type=lambda v: int(v, 0), default=DEFAULT_SEED)
    p.add_argument("--out", default=None)
    p.add_argument("--format", default="json", choices=["json", "csv"])


def _config(args, **extra):
    return RunConfig(args.example, args.h, args.k, args.u, args.projector, args.tmax,
                     args.grid_points, args.tol, args.env_tol, args.seed, args.out,
                     args.format, extra)


def _parse_probe(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad probe {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog="hkdlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="structural checks, envelopes and uniformity verdict")
    _common(p)
    p.add_argument("--theorems", action="store_true", help="also run both theorem checks")
    p = sub.add_parser("norms", help="Lyapunov-type norm tables")
    _common(p)
    p.add_argument("--kind", default="dichotomy", choices=["growth", "dichotomy"])
    p.add_argument("--probe", action="append", type=_parse_probe, default=None,
                   help="probe vector as comma-separated components; repeatable")
    p = sub.add_parser("reproduce", help="pinned runs compared against golden values")
    p.add_argument("name", choices=REPRODUCIBLE)
    p.add_argument("--seed", type=lambda v: int(v, 0), default=DEFAULT_SEED)
    p.add_argument("--out", default=None)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    fmt = getattr(args, "format", "json")
    try:
        if args.command == "check":
            doc, ok = cmd_check(_config(args, theorems=args.theorems))
        elif args.command == "norms":
            cfg = _config(args)
            probe_list = args.probe
            if probe_list is None:
                probe_list = np.eye(1 if args.example == "scalar-ulnu" else 2).tolist()
            doc, ok = cmd_norms(cfg, args.kind, probe_list)
        else:
            doc, ok = cmd_reproduce(args.name, args.seed)
    except UsageError as exc:
        print(f"hkdlab: error: {exc}", file=sys.stderr)
        return 2
    except HKDError as exc:
        print(f"hkdlab: error: {exc}", file=sys.stderr)
        return 2
    text = render(doc, fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for gc in doc.get("theorems", {}).get("golden_comparisons", []):
        print(f"{'PASS' if gc['passed'] else 'FAIL'}  {gc['name']}: {gc['actual']}",
              file=sys.stderr)
    print(f"hkdlab: {'ok' if ok else 'FAILED'} in {time.perf_counter() - start:.2f}s",
          file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
