"""Envelopes of minimal admissible gains and numerical checks of the
equivalence theorems for (h, k)-dichotomies.

All quantifiers over (t, s, x) are replaced by maxima over a finite time
grid and a probe set.  An envelope is therefore a certified *lower* bound on
the true minimal gain, and admissibility of a candidate gain is certified on
the grid only.

Whether a gain is finite cannot be seen on one grid.  Each report compares
the P-part envelope computed up to half the horizon with the one computed up
to the full horizon (``horizon_ratio``): for fixed s the requirement of a
genuine dichotomy (or growth) stops changing once t runs past the transient.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _parallel
from .errors import DomainError, NotCompatibleError, PreconditionError
from .lyap_norms import NormFamily
from .rates import exponential, polynomial
from .systems import (KernelInverse, SKIP_BELOW, check_invariance, default_probes,
                      p_table, u_table)

__all__ = [
    "EnvelopeReport", "PrimedCheck", "TheoremResult", "CorollaryResult",
    "dichotomy_envelope", "growth_envelope", "classify_uniformity",
    "classify_fixed_time", "check_primed_forms", "check_theorem1",
    "check_theorem2", "check_corollaries", "running_max",
]

DELTA = 0.1
MAX_LOGGED = 20
VERDICTS = ("pass", "fail", "precondition-failed", "inconclusive")


def running_max(values):
    return np.maximum.accumulate(np.asarray(values, dtype=float))


@dataclass
class EnvelopeReport:
    """Minimal admissible gains per grid point.

    ``req_p[j]`` is the requirement at s = grid[j] from the P-inequality
    (N1_req or M1_req), ``req_q[i]`` the requirement at t = grid[i] from the
    Q-inequality (N2_req or M2_req).  ``req_q_primed`` is the same for the
    form written with the kernel inverse V, when one was supplied.
    ``argmax_p[j]`` is the t attaining ``req_p[j]``, ``argmax_q[i]`` the s
    attaining ``req_q[i]`` (NaN where nothing constrains).
    """

    kind: str
    label: str
    rates: tuple
    grid: np.ndarray
    req_p: np.ndarray
    req_q: np.ndarray
    req_q_primed: np.ndarray | None = None
    req_p_half: np.ndarray | None = None
    horizon_ratio: float = 1.0
    clamped: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    skipped: int = 0
    uniformity: str | None = None
    argmax_p: np.ndarray | None = None
    argmax_q: np.ndarray | None = None

    @property
    def names(self):
        return ("N1_req", "N2_req") if self.kind == "dichotomy" else ("M1_req", "M2_req")

    @property
    def hull_p(self):
        return running_max(self.req_p)

    @property
    def hull_q(self):
        return running_max(self.req_q)

    @property
    def hull(self):
        """Nondecreasing gain admissible for both inequalities on the grid."""
        parts = [self.req_p, self.req_q]
        if self.req_q_primed is not None:
            parts.append(self.req_q_primed)
        return running_max(np.max(parts, axis=0))

    @property
    def max_envelope(self):
        return float(self.hull[-1])

    def bounded(self, delta=DELTA):
        """P-part requirement at fixed s stable between half and full horizon."""
        return self.horizon_ratio <= 1.0 + delta

    def rows(self):
        n1, n2 = self.names
        hull = self.hull
        return [{"t": float(t), n1: float(a), n2: float(b), "hull": float(c)}
                for t, a, b, c in zip(self.grid, self.req_p, self.req_q, hull)]

    def as_dict(self):
        n1, n2 = self.names
        out = {
            "kind": self.kind, "label": self.label, "h": self.rates[0], "k": self.rates[1],
            "t": self.grid.tolist(), n1: self.req_p.tolist(), n2: self.req_q.tolist(),
            "hull": self.hull.tolist(), "horizon_ratio": self.horizon_ratio,
            "clamped": self.clamped, "skipped": self.skipped,
            "violations": self.violations, "uniformity": self.uniformity,
        }
        if self.req_q_primed is not None:
            out[n2 + "_primed"] = self.req_q_primed.tolist()
        return out


def _grid(grid):
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0 or g[0] < 0 or np.any(np.diff(g) <= 0):
        raise DomainError("grid must be nonempty, nonnegative and strictly increasing")
    return g


def _half_index(g):
    return int(np.searchsorted(g, g[0] + 0.5 * (g[-1] - g[0]), side="right")) - 1


class _Log:
    def __init__(self, form):
        self.form = form
        self.entries = []
        self.count = 0

    def add(self, mask, g, idx_fn):
        hits = np.argwhere(mask)
        self.count += len(hits)
        for hit in hits[:max(0, MAX_LOGGED - len(self.entries))]:
            t, s, p = idx_fn(hit)
            self.entries.append({"form": self.form, "t": float(g[t]), "s": float(g[s]),
                                 "probe": int(p), "reason": "zero denominator, nonzero numerator"})


def _ratio(num, den, log, g, idx_fn, valid):
    live = valid & (den > SKIP_BELOW)
    out = np.full(num.shape, -np.inf)
    np.divide(num, den, out=out, where=live)
    log.add(valid & ~live & (num > SKIP_BELOW), g, idx_fn)
    skipped = int(np.sum(valid & ~live))
    return out, skipped


def _argmax_time(table, g, axis):
    idx = np.argmax(table, axis=axis)
    best = np.max(table, axis=axis)
    return np.where(np.isfinite(best), g[idx], np.nan)


def _finish(raw, g, part, clamped):
    out = raw.copy()
    for i in np.nonzero(~(out >= 1.0))[0]:
        reason = "unconstrained" if out[i] == -np.inf else "below 1"
        clamped.append({"part": part, "t": float(g[i]), "reason": reason})
        out[i] = 1.0
    return out


def _envelope(kind, sys, h, k, grid, probes, kernel_inverse, tol):
    g = _grid(grid)
    probes = default_probes(sys.space) if probes is None else np.atleast_2d(probes)
    inv = check_invariance(sys, g, tol, probes)
    if not inv.passed:
        raise PreconditionError(
            f"P is not invariant for U: defect {inv.worst_raw:.6g} at (t, s) = "
            f"({inv.where[0]:g}, {inv.where[1]:g})", where=inv.where, defect=inv.worst_raw)
    m = g.size
    nrm = sys.norm
    ut = u_table(sys, g)
    pt = p_table(sys, g)
    qt = np.eye(sys.space.n)[None] - pt
    hv, kv = np.atleast_1d(h(g)), np.atleast_1d(k(g))
    tri = np.tril(np.ones((m, m), dtype=bool))[:, :, None]        # [i=t, j=s]
    valid = np.broadcast_to(tri, (m, m, probes.shape[0]))
    dich = kind == "dichotomy"
    logs, skipped, clamped = [], 0, []

    def ijk(hit):
        return hit[0], hit[1], hit[2]

    # P inequality, indexed [t, s, probe]
    px = np.einsum("jab,kb->jka", pt, probes)
    upx = np.einsum("ijab,jkb->ijka", ut, px)
    wh = (hv[:, None] / hv[None, :]) if dich else (hv[None, :] / hv[:, None])
    log = _Log("hd1" if dich else "hg1")
    rp, sk = _ratio(wh[:, :, None] * nrm(upx), np.broadcast_to(nrm(px)[None], valid.shape),
                    log, g, ijk, valid)
    logs.append(log)
    skipped += sk
    req_p_raw = rp.max(axis=(0, 2))
    argmax_p = _argmax_time(rp.max(axis=2), g, axis=0)
    ih = _half_index(g)
    half_raw = rp[:ih + 1, :ih + 1].max(axis=(0, 2))

    # Q inequality
    qx = np.einsum("jab,kb->jka", qt, probes)
    uqx = np.einsum("ijab,jkb->ijka", ut, qx)
    wk = (kv[:, None] / kv[None, :]) if dich else (kv[None, :] / kv[:, None])
    log = _Log("kd2" if dich else "kg2")
    rq, sk = _ratio(wk[:, :, None] * np.broadcast_to(nrm(qx)[None], valid.shape), nrm(uqx),
                    log, g, ijk, valid)
    logs.append(log)
    skipped += sk
    req_q_raw = rq.max(axis=(1, 2))
    argmax_q = _argmax_time(rq.max(axis=2), g, axis=1)

    req_qp = None
    if kernel_inverse is not None:
        vt = kernel_inverse.table(g)
        qtx = np.einsum("iab,kb->ika", qt, probes)
        vq = np.einsum("ijab,ikb->ijka", vt, qtx)
        log = _Log("kd2'" if dich else "kg2'")
        rqp, sk = _ratio(wk[:, :, None] * nrm(vq), np.broadcast_to(nrm(qtx)[:, None], valid.shape),
                         log, g, ijk, valid)
        logs.append(log)
        skipped += sk
        req_qp = _finish(rqp.max(axis=(1, 2)), g, "q_primed", clamped)

    req_p = _finish(req_p_raw, g, "p", clamped)
    req_q = _finish(req_q_raw, g, "q", clamped)
    half = np.maximum(half_raw, 1.0)
    horizon_ratio = float(np.max(req_p[:ih + 1] / half))
    violations = [e for lg in logs for e in lg.entries]
    return EnvelopeReport(kind, sys.label, (h.label, k.label), g, req_p, req_q, req_qp,
                          half, horizon_ratio, clamped, violations, skipped,
                          argmax_p=argmax_p, argmax_q=argmax_q)


def dichotomy_envelope(sys, h, k, grid, probes=None, kernel_inverse=None, tol=1e-10):
    """Minimal gains N1_req(s), N2_req(t) for the dichotomy inequalities.

    N1_req(s) = max h(t)|U(t,s)P(s)x| / (h(s)|P(s)x|) over grid t >= s and
    probes; N2_req(t) = max k(t)|Q(s)x| / (k(s)|U(t,s)Q(s)x|) over s <= t.
    With ``kernel_inverse`` the V-form k(t)|V(t,s)Q(t)x| / (k(s)|Q(t)x|) is
    added as ``req_q_primed``.  Raises :class:`PreconditionError` if P is not
    invariant.
    """
    return _envelope("dichotomy", sys, h, k, grid, probes, kernel_inverse, tol)


def growth_envelope(sys, h, k, grid, probes=None, kernel_inverse=None, tol=1e-10):
    """Minimal gains M1_req(s), M2_req(t) for the growth inequalities
    (rate ratios inverted relative to :func:`dichotomy_envelope`)."""
    return _envelope("growth", sys, h, k, grid, probes, kernel_inverse, tol)


def _check_pair(small, large):
    if (small.kind, small.label, small.rates) != (large.kind, large.label, large.rates):
        raise DomainError("reports come from different systems, rates or envelope kinds")
    pos = np.searchsorted(large.grid, small.grid)
    if np.any(pos >= large.grid.size) or not np.allclose(large.grid[np.minimum(pos, large.grid.size - 1)],
                                                          small.grid, rtol=0, atol=1e-12):
        raise DomainError("the small-horizon grid must be nested in the large one")
    if large.grid[-1] <= small.grid[-1]:
        raise DomainError("the second report must reach a longer horizon")


def classify_uniformity(report_small, report_large, delta=DELTA, flat_tol=1e-6):
    """Two-horizon test on the largest envelope value.

    ``nonuniform`` if it grows by more than a factor 1 + delta, ``uniform``
    if it stays flat (relative change within ``flat_tol``), otherwise
    ``inconclusive``.  Both reports get the verdict recorded.
    """
    _check_pair(report_small, report_large)
    a, b = report_small.max_envelope, report_large.max_envelope
    if not (np.isfinite(a) and np.isfinite(b)):
        verdict = "inconclusive"
    elif b > (1.0 + delta) * a:
        verdict = "nonuniform"
    elif b <= (1.0 + flat_tol) * a:
        verdict = "uniform"
    else:
        verdict = "inconclusive"
    report_small.uniformity = report_large.uniformity = verdict
    return verdict


def classify_fixed_time(report_small, report_large, at=0.0, delta=DELTA):
    """Does the P-part requirement at fixed s = ``at`` keep growing with the
    horizon?  Returns ``growing`` or ``bounded``."""
    _check_pair(report_small, report_large)
    i = int(np.argmin(np.abs(report_small.grid - at)))
    j = int(np.argmin(np.abs(report_large.grid - at)))
    a, b = report_small.req_p[i], report_large.req_p[j]
    return "growing" if b > (1.0 + delta) * a else "bounded"


@dataclass
class PrimedCheck:
    """Cross-substitution between the U-form and V-form of the Q-inequality."""

    kind: str
    req_q: np.ndarray
    req_q_primed: np.ndarray
    worst_excess: float
    passed: bool


def check_primed_forms(sys, V, h, k, grid, tol=1e-9, probes=None):
    """Any gain admissible for the U-form of the Q-inequality must be
    admissible for the V-form and conversely.

    Returns ``{"dichotomy": PrimedCheck, "growth": PrimedCheck}``.  The
    P-inequalities coincide in both forms.
    """
    V = _kernel(sys, V)
    out = {}
    for kind, fn in (("dichotomy", dichotomy_envelope), ("growth", growth_envelope)):
        rep = fn(sys, h, k, grid, probes, kernel_inverse=V)
        a, b = rep.req_q, rep.req_q_primed
        # substitute each hull into the other form
        excess = max(float(np.max(a / running_max(b))), float(np.max(b / running_max(a)))) - 1.0
        out[kind] = PrimedCheck(kind, a, b, excess, excess <= tol)
    return out


@dataclass
class TheoremResult:
    verdict: str
    reason: str = ""
    hd_slack: float = float("nan")
    kd_slack: float = float("nan")
    where: dict = field(default_factory=dict)
    p_part_bounded: bool = False
    fitted_n: np.ndarray | None = None
    fitted_n_p: np.ndarray | None = None
    fitted_n_q: np.ndarray | None = None
    derived_ratio: float = float("nan")
    product_slack: float = float("nan")
    sufficiency_ok: bool = False
    envelope: EnvelopeReport | None = None
    growth: EnvelopeReport | None = None

    def as_dict(self):
        def arr(a):
            return None if a is None else [float(v) for v in a]
        return {
            "verdict": self.verdict, "reason": self.reason,
            "hd_slack": self.hd_slack, "kd_slack": self.kd_slack, "where": self.where,
            "p_part_bounded": self.p_part_bounded, "fitted_N": arr(self.fitted_n),
            "derived_ratio": self.derived_ratio, "product_slack": self.product_slack,
            "sufficiency_ok": self.sufficiency_ok,
        }


def _slack(lhs, rhs):
    """Max of (lhs - rhs) / rhs over live entries; a zero rhs needs a zero lhs."""
    live = rhs > SKIP_BELOW
    if np.any(~live & (lhs > SKIP_BELOW)):
        return np.inf, int(np.argmax(~live & (lhs > SKIP_BELOW)))
    if not np.any(live):
        return -np.inf, 0
    rel = np.full(lhs.shape, -np.inf)
    rel[live] = (lhs[live] - rhs[live]) / rhs[live]
    i = int(np.argmax(rel))
    return float(rel.flat[i]), i


def _reduce(results):
    best = (-np.inf, None)
    for val, where in results:
        if val > best[0]:
            best = (val, where)
    return best


def _kernel(sys, V):
    return V if V is not None else KernelInverse(sys)


def _contraction_scans(sys, family, h, k, g, probes):
    """Worst slack of the two norm inequalities with gain one.

    Returns ``(hd, hd_where, kd, kd_where, ratio_p, ratio_q)``; the ratio
    arrays, indexed ``[t, s]``, hold lhs / rhs maximized over probes.
    """
    m = g.size
    ut = u_table(sys, g)
    vt = family._vt
    pt, qt = family._pt, family._qt
    hv, kv = np.atleast_1d(h(g)), np.atleast_1d(k(g))
    ps = np.einsum("jab,kb->jka", pt, probes)                 # P(s_j) x_k
    qs = np.einsum("iab,kb->ika", qt, probes)                 # Q(t_i) x_k
    norm_ps = np.stack([family.value_at(j, ps[j]) for j in range(m)])    # |P(s)x|_s
    norm_qt = np.stack([family.value_at(i, qs[i]) for i in range(m)])    # |Q(t)x|_t

    def hd_row(i):
        y = np.einsum("jab,jkb->jka", ut[i, :i + 1], ps[:i + 1])          # U(t_i, s_j) P(s_j) x
        lhs = hv[i] * family.value_at(i, y)
        base = hv[:i + 1, None] * norm_ps[:i + 1]
        val, at = _slack(lhs, base)
        j, p = divmod(at, probes.shape[0])
        ratio = np.where(base > SKIP_BELOW, lhs / np.where(base > SKIP_BELOW, base, 1.0), -np.inf)
        return (val, (float(g[i]), float(g[j]), p)), ratio.max(axis=1)

    def kd_row(j):
        z = np.einsum("iab,ikb->ika", vt[j:, j], qs[j:])                   # V(t_i, s_j) Q(t_i) x
        lhs = kv[j:, None] * family.value_at(j, z)
        base = kv[j] * norm_qt[j:]
        val, at = _slack(lhs, base)
        i, p = divmod(at, probes.shape[0])
        ratio = np.where(base > SKIP_BELOW, lhs / np.where(base > SKIP_BELOW, base, 1.0), -np.inf)
        return (val, (float(g[j + i]), float(g[j]), p)), ratio.max(axis=1)

    hd_rows = _parallel.pmap(hd_row, range(m))
    kd_rows = _parallel.pmap(kd_row, range(m))
    hd, hd_where = _reduce(r[0] for r in hd_rows)
    kd, kd_where = _reduce(r[0] for r in kd_rows)
    # fitted gains: P-part indexed by s over t >= s, Q-part indexed by t over s <= t
    ratio_p = np.full((m, m), -np.inf)          # [t, s]
    for i, (_, row) in enumerate(hd_rows):
        ratio_p[i, :i + 1] = row
    ratio_q = np.full((m, m), -np.inf)          # [t, s]
    for j, (_, row) in enumerate(kd_rows):
        ratio_q[j:, j] = row
    return hd, hd_where, kd, kd_where, ratio_p, ratio_q


def _where(label, w):
    if w is None:
        return None
    t, s, p = w
    return {"t": t, "s": s, "probe": int(p), "form": label}


def _prepare(sys, V, envelope_fn, h, k, g, probes):
    V = _kernel(sys, V)
    try:
        env = envelope_fn(sys, h, k, g, probes, kernel_inverse=V)
    except PreconditionError as exc:
        return V, None, str(exc)
    except NotCompatibleError as exc:
        return V, None, f"P is not compatible with U: {exc}"
    return V, env, ""


def check_theorem1(sys, V, h, k, grid, tol=1e-9, probes=None, sufficiency_tol=1e-6,
                   delta=DELTA):
    """Gain-one contraction in the dichotomy-type norms.

    Necessity: h(t)|||U(t,s)P(s)x|||_t <= h(s)|||P(s)x|||_s and
    k(t)|||V(t,s)Q(t)x|||_s <= k(s)|||Q(t)x|||_t on all grid pairs, relative
    slack ``tol``.  Sufficiency: the gains read off the norm sandwich,
    max |||P(s)x|||_s / |P(s)x| and max |||Q(t)x|||_t / |Q(t)x|, must be
    admissible for the direct inequalities and agree with the direct
    envelopes within ``sufficiency_tol``.

    The verdict is ``precondition-failed`` when P is not invariant or not
    compatible, or when the P-part envelope grows with the horizon (no
    dichotomy); slacks are still reported in that last case.
    """
    g = _grid(grid)
    probes = default_probes(sys.space) if probes is None else np.atleast_2d(probes)
    V, env, reason = _prepare(sys, V, dichotomy_envelope, h, k, g, probes)
    if env is None:
        return TheoremResult("precondition-failed", reason)
    family = NormFamily("dichotomy", sys, h, k, g, V)
    hd, hd_w, kd, kd_w, _, _ = _contraction_scans(sys, family, h, k, g, probes)

    nrm = sys.norm
    m = g.size
    derived_p = np.empty(m)
    derived_q = np.empty(m)
    for i in range(m):
        px = probes @ family._pt[i].T
        qx = probes @ family._qt[i].T
        bp, bq = nrm(px), nrm(qx)
        lp, lq = bp > SKIP_BELOW, bq > SKIP_BELOW
        derived_p[i] = np.max(family.value_at(i, px[lp]) / bp[lp]) if lp.any() else 1.0
        derived_q[i] = np.max(family.value_at(i, qx[lq]) / bq[lq]) if lq.any() else 1.0
    ratios = np.concatenate([derived_p / env.req_p, derived_q / env.req_q_primed])
    derived_ratio = float(np.max(np.abs(ratios - 1.0)))
    sufficiency_ok = derived_ratio <= sufficiency_tol
    bounded = env.bounded(delta)
    where = {"hd": _where("hd1''", hd_w), "kd": _where("kd2''", kd_w)}
    res = TheoremResult("pass", "", float(hd), float(kd), where, bounded,
                        fitted_n=np.maximum(running_max(derived_p), running_max(derived_q)),
                        fitted_n_p=derived_p, fitted_n_q=derived_q,
                        derived_ratio=derived_ratio, sufficiency_ok=sufficiency_ok,
                        envelope=env)
    if not bounded:
        res.verdict = "precondition-failed"
        res.reason = (f"P-part dichotomy envelope grows with the horizon "
                      f"(ratio {env.horizon_ratio:.6g}); not (h,k)-dichotomic")
    elif not (hd <= tol and kd <= tol and sufficiency_ok):
        res.verdict = "fail"
        res.reason = "inequality violated beyond tolerance"
    return res


def check_theorem2(sys, V, h, k, grid, tol=1e-6, probes=None, delta=DELTA):
    """Dichotomy in the growth-type norms with a nondecreasing gain N.

    Requires (h,k)-growth (bounded P-part growth envelope).  Fits the
    minimal N for h(t)|U(t,s)P(s)x|_t <= N(s)h(s)|P(s)x|_s and
    k(t)|V(t,s)Q(t)x|_s <= N(t)k(s)|Q(t)x|_t; the verdict is ``pass`` when
    the fitted N at fixed s stays bounded as the horizon doubles, ``fail``
    otherwise.  Independently the product N(t) M(t), with M the growth gain,
    is checked admissible for the direct dichotomy inequalities
    (``product_slack`` relative, ``sufficiency_ok`` at ``tol``).
    """
    g = _grid(grid)
    probes = default_probes(sys.space) if probes is None else np.atleast_2d(probes)
    V, grow, reason = _prepare(sys, V, growth_envelope, h, k, g, probes)
    if grow is None:
        return TheoremResult("precondition-failed", reason)
    if not grow.bounded(delta):
        return TheoremResult("precondition-failed",
                             f"growth envelope grows with the horizon (ratio "
                             f"{grow.horizon_ratio:.6g}); no (h,k)-growth", growth=grow)
    family = NormFamily("growth", sys, h, k, g, V)
    _, _, _, _, ratio_p, ratio_q = _contraction_scans(sys, family, h, k, g, probes)
    fit_p = np.maximum(ratio_p.max(axis=0), 1.0)        # by s, over t >= s
    fit_q = np.maximum(ratio_q.max(axis=1), 1.0)        # by t, over s <= t
    ih = _half_index(g)
    fit_p_half = np.maximum(ratio_p[:ih + 1, :ih + 1].max(axis=0), 1.0)
    horizon_ratio = float(np.max(fit_p[:ih + 1] / fit_p_half))
    n_hull = running_max(np.maximum(fit_p, fit_q))
    # the hull must dominate every fitted ratio
    hd = float(np.max(ratio_p / n_hull[None, :])) - 1.0
    kd = float(np.max(ratio_q / n_hull[:, None])) - 1.0

    # sufficiency: N * M admissible for the direct inequalities
    m_hull = grow.hull
    dich = dichotomy_envelope(sys, h, k, g, probes, kernel_inverse=V)
    product = n_hull * m_hull
    product_slack = float(max(np.max(dich.req_p / product), np.max(dich.req_q_primed / product)) - 1.0)
    bounded = horizon_ratio <= 1.0 + delta
    res = TheoremResult("pass" if bounded else "fail", "", hd, kd, {}, bounded,
                        fitted_n=n_hull, fitted_n_p=fit_p, fitted_n_q=fit_q,
                        product_slack=product_slack, sufficiency_ok=product_slack <= tol,
                        envelope=dich, growth=grow)
    if not bounded:
        res.reason = (f"fitted N at fixed s grows with the horizon (ratio {horizon_ratio:.6g}, "
                      f"N(0) = {fit_p[0]:.6g}); not (h,k)-dichotomic")
    elif not (hd <= tol and kd <= tol and res.sufficiency_ok):
        res.verdict = "fail"
        res.reason = "fitted gain not admissible on the grid"
    return res


@dataclass
class CorollaryResult:
    flavor: str
    inequalities: dict
    theorem1: TheoremResult
    theorem2: TheoremResult

    @property
    def passed(self):
        return all(self.inequalities.values())


def check_corollaries(sys, V, alpha, beta, grid, tol=1e-9, flavor="exponential", probes=None,
                      delta=DELTA):
    """Specialize both theorems to h = exp(alpha t), k = exp(beta t) or to
    h = (t+1)^alpha, k = (t+1)^beta and report each inequality by name
    (``ed1``, ``ed2``, ``ed1'``, ``ed2'`` or the ``pd`` counterparts)."""
    if not (alpha > 0 and beta > 0):
        raise DomainError(f"alpha and beta must be positive, got {alpha}, {beta}")
    if flavor == "exponential":
        h, k, tag = exponential(alpha), exponential(beta), "ed"
    elif flavor == "polynomial":
        h, k, tag = polynomial(alpha), polynomial(beta), "pd"
    else:
        raise DomainError(f"flavor must be 'exponential' or 'polynomial', got {flavor!r}")
    V = _kernel(sys, V)
    t1 = check_theorem1(sys, V, h, k, grid, tol, probes, delta=delta)
    t2 = check_theorem2(sys, V, h, k, grid, max(tol, 1e-6), probes, delta=delta)
    t1_ran = not np.isnan(t1.hd_slack)
    t2_ran = t2.fitted_n is not None
    ineq = {
        f"{tag}1": bool(t1_ran and t1.p_part_bounded and t1.hd_slack <= tol),
        f"{tag}2": bool(t1_ran and t1.kd_slack <= tol),
        f"{tag}1'": bool(t2_ran and t2.p_part_bounded and t2.hd_slack <= max(tol, 1e-6)),
        f"{tag}2'": bool(t2_ran and t2.kd_slack <= max(tol, 1e-6)),
    }
    return CorollaryResult(flavor, ineq, t1, t2)
