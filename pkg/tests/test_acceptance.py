"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected into an "acceptance criteria" section of the pytest summary.
"""

import json
import math

import numpy as np
import pytest

from hkdlab.cli import cmd_reproduce, render
from hkdlab.lyap_norms import NormFamily, check_compatibility_sandwich
from hkdlab.rates import class_g_witness
from hkdlab.systems import (KernelInverse, check_evolution_property, check_invariance,
                            check_v_identities, cocycle_defect, default_grid, example_gallery,
                            invariance_defect)
from hkdlab.verify import (check_theorem1, check_theorem2, classify_fixed_time,
                           classify_uniformity, dichotomy_envelope, growth_envelope)

from conftest import ACCEPTANCE_LINES, E1, LP, probes_for, r

R10 = 27.9735
R20 = 21 * math.log(20 + math.e)


def report(n, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} {detail}".rstrip()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, detail


@pytest.fixture(scope="module")
def cp():
    return example_gallery("dicho-2d-constantP", E1, E1)


@pytest.fixture(scope="module")
def cp_env(cp):
    return (dichotomy_envelope(cp, E1, E1, default_grid(10, 101)),
            dichotomy_envelope(cp, E1, E1, default_grid(20, 201)))


def test_01_nonuniform_example(cp_env):
    env, _ = cp_env
    g = env.grid
    n1_ok = bool(np.all(env.req_p <= r(g) * (1 + 1e-9)))
    n2 = float(env.req_q[-1])
    ok = n1_ok and abs(n2 - R10) <= 0.01 * R10 and env.argmax_q[-1] == 0.0
    report(1, "nonuniform example", ok,
           f"N1_req<=r: {n1_ok}, N2_req(10)={n2:.6f} at s={env.argmax_q[-1]}")


def test_02_nonuniformity_verdict(cp_env):
    small, large = cp_env
    verdict = classify_uniformity(small, large)
    a, b = small.max_envelope, large.max_envelope
    ok = (verdict == "nonuniform" and abs(a - R10) <= 0.01 * R10 and abs(b - R20) <= 0.01 * R20)
    report(2, "nonuniformity verdict", ok, f"{verdict}, {a:.4f} -> {b:.4f}")


def test_03_growth_without_dichotomy():
    sys = example_gallery("growth-not-dicho", LP, LP)
    g10, g20 = default_grid(10, 101), default_grid(20, 201)
    wit = class_g_witness(LP, LP, g20)
    grow = growth_envelope(sys, LP, LP, g10)
    m_ok = bool(np.all(grow.req_p <= r(g10) * (1 + 1e-6)) and
                np.all(grow.req_q <= r(g10) * (1 + 1e-6)))
    d10 = dichotomy_envelope(sys, LP, LP, g10)
    d20 = dichotomy_envelope(sys, LP, LP, g20)
    trend = classify_fixed_time(d10, d20, 0.0)
    n0 = float(d20.req_p[0])
    ok = (wit.passed and abs(wit.worst_margin - 1) <= 1e-12 and m_ok and n0 > 65
          and trend == "growing")
    report(3, "growth without dichotomy", ok,
           f"margin={wit.worst_margin:.15f}, M_req<=r: {m_ok}, N1_req(0)={n0:.4f} {trend}")


def test_04_theorem1_necessity_and_sufficiency():
    grid = default_grid()
    lines, ok = [], True
    for name in ("scalar-ulnu", "dicho-2d-literal", "dicho-2d-repaired", "dicho-2d-constantP",
                 "growth-not-dicho"):
        rate = LP if name == "growth-not-dicho" else E1
        sys = example_gallery(name, rate, rate)
        res = check_theorem1(sys, None, rate, rate, grid)
        if res.verdict == "precondition-failed":
            lines.append(f"{name}: skipped ({res.reason.split(':')[0].split(';')[0].split(' (')[0]})")
            continue
        slack = max(res.hd_slack, res.kd_slack)
        ok &= res.verdict == "pass" and slack <= 1e-9 and res.derived_ratio <= 1e-6
        lines.append(f"{name}: slack={slack:.2e} ratio={res.derived_ratio:.2e}")
    report(4, "theorem 1 slack-free", ok, "; ".join(lines))


def test_05_theorem2_product_constant(cp):
    res = check_theorem2(cp, None, E1, E1, default_grid())
    ok = res.verdict == "pass" and res.product_slack <= 1e-6
    report(5, "theorem 2 product constant", ok,
           f"verdict={res.verdict}, product slack={res.product_slack:.2e}")


def test_06_structural_identities():
    grid = default_grid()
    worst, ok = {}, True
    for name in ("scalar-ulnu", "dicho-2d-repaired", "dicho-2d-constantP", "growth-not-dicho"):
        rate = LP if name == "growth-not-dicho" else E1
        sys = example_gallery(name, rate, rate)
        probes = probes_for(sys)
        checks = [check_evolution_property(sys, grid, 1e-10),
                  check_invariance(sys, grid, 1e-10, probes)]
        checks += list(check_v_identities(sys, KernelInverse(sys), grid, 1e-10, probes).values())
        ok &= all(c.passed for c in checks)
        worst[name] = max(c.worst_defect for c in checks)
    lit = example_gallery("dicho-2d-literal", E1, E1)
    d = invariance_defect(lit, 1.0, 0.0, np.array([0.0, 1.0]))
    ok &= abs(d - 1.7783) <= 1e-3
    detail = ", ".join(f"{k}={v:.1e}" for k, v in worst.items())
    report(6, "structural identities", ok, f"{detail}; literal defect={d:.6f}")


def test_07_norm_family_compatibility():
    grid = default_grid()
    cases = [("dichotomy", example_gallery("dicho-2d-constantP", E1, E1), E1),
             ("growth", example_gallery("growth-not-dicho", LP, LP), LP)]
    ok, parts = True, []
    rng = np.random.default_rng(7)
    for kind, sys, rate in cases:
        fam = NormFamily(kind, sys, rate, rate, grid)
        probes = probes_for(sys)
        sw = check_compatibility_sandwich(fam, r, tol=1e-12, probes=probes)
        axiom = 0.0
        for t in grid[::5]:
            x, y = probes[rng.integers(len(probes), size=2)]
            c = rng.uniform(-5, 5)
            nx, ny = fam(t, x), fam(t, y)
            axiom = max(axiom, (fam(t, x + y) - nx - ny) / (1 + nx + ny),
                        abs(fam(t, c * x) - abs(c) * nx) / (1 + abs(c) * nx))
        ok &= sw.passed and axiom <= 1e-12
        parts.append(f"{kind}: margin={sw.worst_margin:.2e} axioms={axiom:.1e}")
    report(7, "norm family compatibility", ok, "; ".join(parts))


def test_08_scalar_example():
    sys = example_gallery("scalar-ulnu")
    u10 = float(sys.U(1.0, 0.0)[0, 0])
    grid = default_grid()
    tele = max(cocycle_defect(sys, t, s, 0.0) for t in grid[::10] for s in grid[::10] if s <= t)
    ok = abs(u10 - 1 / (2 * math.e)) <= 1e-6 and tele <= 1e-14
    report(8, "scalar example", ok, f"U(1,0)={u10:.9f}, telescoping defect={tele:.1e}")


def test_09_determinism():
    first = render(cmd_reproduce("theorem2")[0], "json")
    second = render(cmd_reproduce("theorem2")[0], "json")
    ok = first == second and json.loads(first)["theorems"]["theorem2"]["verdict"] == "pass"
    report(9, "determinism", ok, f"{len(first)} bytes, identical={first == second}")
