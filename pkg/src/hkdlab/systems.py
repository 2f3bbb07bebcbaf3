"""Evolution operators with projector families, structural checks and examples.

An :class:`EvolutionSystem` is a closed-form two-parameter family U(t, s)
on the triangle t >= s >= 0 together with a projector family P(t).  The
checkers scan grid pairs/triples with vectorized ``numpy`` and report the
worst relative defect; scans are pure max-reductions.
"""

import math
import threading
import weakref
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linops
from .errors import DomainError, NotCompatibleError, ResidualError
from .linops import StateSpace, max_entry
from .rates import GrowthRate, exponential, log_weight

__all__ = [
    "EvolutionSystem", "KernelInverse", "StructuralCheck", "GALLERY",
    "DEFAULT_SEED", "default_grid", "default_probes", "u_table", "p_table",
    "cocycle_defect", "invariance_defect", "check_evolution_property",
    "check_invariance", "build_kernel_inverse", "check_v_identities",
    "example_gallery", "split_system", "parse_u_profile",
]

DEFAULT_SEED = 0x5EED
DEFAULT_TMAX = 10.0
DEFAULT_POINTS = 101
SKIP_BELOW = 1e-300
GALLERY = ("scalar-ulnu", "dicho-2d-literal", "dicho-2d-repaired",
           "dicho-2d-constantP", "growth-not-dicho")


def default_grid(tmax=DEFAULT_TMAX, points=DEFAULT_POINTS):
    if not tmax > 0:
        raise DomainError(f"tmax must be positive, got {tmax}")
    if points < 1:
        raise DomainError(f"need at least one grid point, got {points}")
    return np.linspace(0.0, float(tmax), int(points))


def default_probes(space, seed=DEFAULT_SEED, count=8):
    """Canonical basis vectors followed by ``count`` seeded random unit vectors."""
    n = space.n
    rng = np.random.default_rng(seed)
    rand = rng.standard_normal((count, n))
    rand /= space.norm(rand)[:, None]
    return np.vstack([np.eye(n), rand])


@dataclass(frozen=True)
class EvolutionSystem:
    """Closed-form evolution system (U, P) on R^n.

    ``u_eval(t, s)`` and ``p_eval(t)`` return ``(n, n)`` arrays; Q is the
    complementary family.
    """

    space: StateSpace
    u_eval: Callable
    p_eval: Callable
    label: str = ""
    params: dict = field(default_factory=dict, compare=False)

    __hash__ = object.__hash__

    def U(self, t, s):
        t, s = float(t), float(s)
        if not (s >= 0 and t >= s):
            raise DomainError(f"U(t, s) needs t >= s >= 0, got t={t}, s={s}")
        return np.asarray(self.u_eval(t, s), dtype=float).reshape(self.space.n, self.space.n)

    def P(self, t):
        t = float(t)
        if not t >= 0:
            raise DomainError(f"P(t) needs t >= 0, got {t}")
        return np.asarray(self.p_eval(t), dtype=float).reshape(self.space.n, self.space.n)

    def Q(self, t):
        return np.eye(self.space.n) - self.P(t)

    def norm(self, x):
        return self.space.norm(x)


_U_TABLES = weakref.WeakKeyDictionary()


def u_table(sys, grid):
    """U(grid[i], grid[j]) for i >= j; zeros above the diagonal.

    Tables are memoized per system and grid and returned read-only.
    """
    g = np.asarray(grid, dtype=float)
    per_sys = _U_TABLES.setdefault(sys, {})
    key = g.tobytes()
    out = per_sys.get(key)
    if out is None:
        m, n = g.size, sys.space.n
        out = np.zeros((m, m, n, n))
        for i in range(m):
            for j in range(i + 1):
                out[i, j] = sys.U(g[i], g[j])
        out.setflags(write=False)
        per_sys[key] = out
    return out


def p_table(sys, grid):
    return np.stack([sys.P(t) for t in np.asarray(grid, dtype=float)])


@dataclass(frozen=True)
class StructuralCheck:
    """Outcome of a grid scan: worst relative defect, its raw size and location."""

    passed: bool
    worst_defect: float
    worst_raw: float
    where: tuple

    def as_dict(self):
        return {"passed": self.passed, "worst_defect": self.worst_defect,
                "worst_raw": self.worst_raw, "where": list(self.where)}


def _tri_mask(m):
    return np.tril(np.ones((m, m), dtype=bool))


def cocycle_defect(sys, t, s, t0):
    """Max-entry norm of U(t, t0) - U(t, s) U(s, t0)."""
    return float(max_entry(sys.U(t, t0) - sys.U(t, s) @ sys.U(s, t0)))


def check_evolution_property(sys, grid, tol=1e-10, table=None):
    """Scan all grid triples t >= s >= t0 for the evolution property.

    The defect is scaled by max(1, |U(t,t0)|, |U(t,s)| |U(s,t0)|).
    """
    g = np.asarray(grid, dtype=float)
    m = g.size
    ut = u_table(sys, g) if table is None else table
    norms = max_entry(ut)
    eye = np.eye(sys.space.n)
    worst = (0.0, float(max_entry(ut[0, 0] - eye)), (g[0], g[0], g[0]))
    mask = _tri_mask(m)
    for j in range(m):
        # prod[i, l] = U(i, j) U(j, l) for i >= j >= l
        prod = np.einsum("iab,lbc->ilac", ut[j:, j], ut[j, :j + 1])
        ref = ut[j:, :j + 1]
        raw = max_entry(ref - prod)
        scale = np.maximum(1.0, np.maximum(norms[j:, :j + 1],
                                           np.outer(norms[j:, j], norms[j, :j + 1])))
        rel = np.where(mask[j:, :j + 1], raw / scale, 0.0)
        a, b = np.unravel_index(np.argmax(rel), rel.shape)
        if rel[a, b] > worst[0]:
            worst = (float(rel[a, b]), float(raw[a, b]), (g[j + a], g[j], g[b]))
    # identity on the diagonal is part of the same contract
    diag = max(float(max_entry(ut[i, i] - eye)) for i in range(m))
    if diag > worst[0]:
        i = max(range(m), key=lambda i: float(max_entry(ut[i, i] - eye)))
        worst = (diag, diag, (g[i], g[i], g[i]))
    return StructuralCheck(worst[0] <= tol, worst[0], worst[1], tuple(map(float, worst[2])))


def invariance_defect(sys, t, s, x):
    """|U(t,s) P(s) x - P(t) U(t,s) x| in the base norm."""
    u = sys.U(t, s)
    x = np.asarray(x, dtype=float)
    return float(sys.norm(u @ sys.P(s) @ x - sys.P(t) @ u @ x))


def _invariance_scan(sys, g, ut, pt, probes, which):
    m = g.size
    proj = pt if which == "P" else np.eye(sys.space.n)[None] - pt
    # lhs[i, j, k] = U(i, j) proj(j) x_k ; rhs[i, j, k] = proj(i) U(i, j) x_k
    lhs = np.einsum("ijab,jbc,kc->ijka", ut, proj, probes)
    ux = np.einsum("ijab,kb->ijka", ut, probes)
    rhs = np.einsum("iab,ijkb->ijka", proj, ux)
    raw = sys.norm(lhs - rhs)
    scale = 1.0 + np.maximum(sys.norm(ux), sys.norm(lhs))
    rel = np.where(_tri_mask(m)[:, :, None], raw / scale, 0.0)
    idx = np.unravel_index(np.argmax(rel), rel.shape)
    return float(rel[idx]), float(raw[idx]), (float(g[idx[0]]), float(g[idx[1]]), int(idx[2]))


def check_invariance(sys, grid, tol=1e-10, probes=None, table=None):
    """Check U(t,s)P(s)x = P(t)U(t,s)x on grid pairs and probes.

    The same scan is repeated for Q, whose invariance follows from that of
    P; the check passes only if both scans do.  ``where`` is
    ``(t, s, probe_index)``.
    """
    g = np.asarray(grid, dtype=float)
    probes = default_probes(sys.space) if probes is None else np.atleast_2d(probes)
    ut = u_table(sys, g) if table is None else table
    pt = p_table(sys, g)
    rel, raw, where = _invariance_scan(sys, g, ut, pt, probes, "P")
    qrel, _, _ = _invariance_scan(sys, g, ut, pt, probes, "Q")
    return StructuralCheck(rel <= tol and qrel <= tol, rel, raw, where)


def build_kernel_inverse(sys, t, s, tol=linops.RANK_TOL):
    """Matrix of V(t, s): inverts U(t, s) from range Q(s) onto range Q(t).

    The result vanishes on range P(t).
    """
    qs, qt = sys.Q(s), sys.Q(t)
    bs = linops.range_basis(qs, tol)
    bt = linops.range_basis(qt, tol)
    if bs.shape[1] != bt.shape[1]:
        raise NotCompatibleError(
            f"dim range Q({s:g}) = {bs.shape[1]} != dim range Q({t:g}) = {bt.shape[1]}", t, s)
    try:
        return linops.solve_on_subspace(sys.U(t, s), bs, qt, tol)
    except (NotCompatibleError, ResidualError) as exc:
        raise NotCompatibleError(f"U({t:g}, {s:g}) not invertible on ker P: {exc}", t, s) from exc


class KernelInverse:
    """Lazily built, cached V(t, s) for one system.

    The cache is write-once per key; concurrent insertion of the same value
    is harmless.
    """

    def __init__(self, system, tol=linops.RANK_TOL):
        self.system = system
        self.tol = tol
        self._cache = {}
        self._lock = threading.Lock()

    def __call__(self, t, s):
        key = (float(t), float(s))
        v = self._cache.get(key)
        if v is None:
            v = build_kernel_inverse(self.system, key[0], key[1], self.tol)
            v.setflags(write=False)
            with self._lock:
                v = self._cache.setdefault(key, v)
        return v

    def table(self, grid):
        """V(grid[i], grid[j]) for i >= j; zeros above the diagonal."""
        g = np.asarray(grid, dtype=float)
        m, n = g.size, self.system.space.n
        out = np.zeros((m, m, n, n))
        for i in range(m):
            for j in range(i + 1):
                out[i, j] = self(g[i], g[j])
        return out


def check_v_identities(sys, V, grid, tol=1e-10, probes=None):
    """Check the four kernel-inverse identities on the grid.

    v1: U V Q(t) x = Q(t) x          v2: V U Q(s) x = Q(s) x
    v3: V(t, t0) = V(s, t0) V(t, s)  v4: V Q(t) = Q(s) V Q(t)
    """
    g = np.asarray(grid, dtype=float)
    m = g.size
    probes = default_probes(sys.space) if probes is None else np.atleast_2d(probes)
    ut = u_table(sys, g)
    vt = V.table(g)
    qt = np.eye(sys.space.n)[None] - p_table(sys, g)
    mask = _tri_mask(m)
    nrm = sys.norm
    out = {}

    def _pick(rel, raw, where_fn):
        idx = np.unravel_index(np.argmax(rel), rel.shape)
        return StructuralCheck(bool(rel[idx] <= tol), float(rel[idx]), float(raw[idx]),
                               where_fn(idx))

    qx_t = np.einsum("iab,kb->ika", qt, probes)                    # Q(t_i) x_k
    lhs1 = np.einsum("ijab,ijbc,ikc->ijka", ut, vt, qx_t)
    raw1 = nrm(lhs1 - qx_t[:, None])
    rel1 = np.where(mask[:, :, None], raw1 / (1.0 + nrm(qx_t)[:, None]), 0.0)
    out["v1"] = _pick(rel1, raw1, lambda ix: (float(g[ix[0]]), float(g[ix[1]]), int(ix[2])))

    lhs2 = np.einsum("ijab,ijbc,jkc->ijka", vt, ut, qx_t)
    raw2 = nrm(lhs2 - qx_t[None])
    rel2 = np.where(mask[:, :, None], raw2 / (1.0 + nrm(qx_t)[None]), 0.0)
    out["v2"] = _pick(rel2, raw2, lambda ix: (float(g[ix[0]]), float(g[ix[1]]), int(ix[2])))

    vn = max_entry(vt)
    best = StructuralCheck(True, 0.0, 0.0, (float(g[0]),) * 3)
    for j in range(m):
        prod = np.einsum("lab,ibc->ilac", vt[j, :j + 1], vt[j:, j])    # V(s,t0) V(t,s)
        ref = vt[j:, :j + 1]
        raw = max_entry(ref - prod)
        scale = np.maximum(1.0, np.maximum(vn[j:, :j + 1], np.outer(vn[j:, j], vn[j, :j + 1])))
        rel = np.where(mask[j:, :j + 1], raw / scale, 0.0)
        a, b = np.unravel_index(np.argmax(rel), rel.shape)
        if rel[a, b] > best.worst_defect:
            best = StructuralCheck(bool(rel[a, b] <= tol), float(rel[a, b]), float(raw[a, b]),
                                   (float(g[j + a]), float(g[j]), float(g[b])))
    out["v3"] = best

    vq = np.einsum("ijab,ibc->ijac", vt, qt)
    qvq = np.einsum("jab,ijbc->ijac", qt, vq)
    raw4 = max_entry(vq - qvq)
    rel4 = np.where(mask, raw4 / np.maximum(1.0, max_entry(vq)), 0.0)
    out["v4"] = _pick(rel4, raw4, lambda ix: (float(g[ix[0]]), float(g[ix[1]])))
    return out


# ---------------------------------------------------------------- gallery

def split_system(a, c, projector, label="split"):
    """U(t, s) = a(t, s) P + c(t, s) Q with a constant projector P."""
    p = np.asarray(projector, dtype=float)
    q = linops.complement(p)
    space = StateSpace(p.shape[0])
    return EvolutionSystem(space, lambda t, s: a(t, s) * p + c(t, s) * q,
                           lambda t: p, label)


def parse_u_profile(spec):
    """``exp-shift:<c>`` gives u(t) = exp(t + c); ``linear:<c>`` gives u(t) = t + c."""
    head, _, arg = spec.strip().partition(":")
    try:
        c = float(arg)
    except ValueError:
        raise DomainError(f"bad u profile {spec!r}") from None
    if head == "exp-shift":
        return lambda t: np.exp(np.asarray(t, dtype=float) + c)
    if head == "linear":
        return lambda t: np.asarray(t, dtype=float) + c
    raise DomainError(f"bad u profile {spec!r}")


def _scalar_ulnu(u, projector):
    probe = np.asarray(u(default_grid()), dtype=float)
    if not np.all(probe > 1.0):
        raise DomainError("u profile must stay above 1 (u ln u must not vanish)")

    def phi(t):
        val = float(u(t))
        if not val > 1.0:
            raise DomainError(f"u({t}) = {val} <= 1")
        return val * math.log(val)

    if projector not in ("identity", "zero"):
        raise DomainError(f"scalar projector must be 'identity' or 'zero', got {projector!r}")
    p = np.eye(1) if projector == "identity" else np.zeros((1, 1))
    return EvolutionSystem(StateSpace(1), lambda t, s: np.array([[phi(s) / phi(t)]]),
                           lambda t: p, "scalar-ulnu", {"projector": projector})


def _p_skew(t):
    return np.array([[1.0, -math.exp(t)], [0.0, 0.0]])


def _q_skew(t):
    return np.array([[0.0, math.exp(t)], [0.0, 1.0]])


def example_gallery(name, h=None, k=None, u_profile=None, projector="identity"):
    """Build one of the named example systems.

    Parameters
    ----------
    name : str
        One of :data:`GALLERY`.
    h, k : GrowthRate
        Rates wired into the 2-d examples (default ``exp:1``).
    u_profile : callable or str, optional
        u(t) for ``scalar-ulnu`` (default ``exp-shift:1``, i.e. e^(t+1)).
    projector : {"identity", "zero"}
        Constant projector for ``scalar-ulnu``.
    """
    h = exponential(1.0) if h is None else h
    k = exponential(1.0) if k is None else k
    if not isinstance(h, GrowthRate) or not isinstance(k, GrowthRate):
        raise DomainError("h and k must be GrowthRate instances")
    if name == "scalar-ulnu":
        u = parse_u_profile(u_profile or "exp-shift:1") if not callable(u_profile) else u_profile
        return _scalar_ulnu(u, projector)
    if u_profile is not None:
        raise DomainError(f"u_profile only applies to scalar-ulnu, not {name!r}")

    def ratio(t, s):
        return float(log_weight(s) / log_weight(t))

    def a(t, s):
        return h(s) / h(t) * ratio(t, s)

    def c(t, s):
        return k(t) / k(s) * ratio(t, s)

    params = {"h": h.label, "k": k.label}
    space = StateSpace(2, "max")
    if name == "dicho-2d-literal":
        return EvolutionSystem(space, lambda t, s: a(t, s) * _p_skew(s) + c(t, s) * _q_skew(s),
                               _p_skew, name, params)
    if name == "dicho-2d-repaired":
        return EvolutionSystem(space, lambda t, s: a(t, s) * _p_skew(s) + c(t, s) * _q_skew(t),
                               _p_skew, name, params)
    p0 = np.diag([1.0, 0.0])
    if name == "dicho-2d-constantP":
        sys = split_system(a, c, p0, name)
    elif name == "growth-not-dicho":
        sys = split_system(lambda t, s: h(t) / h(s) * ratio(t, s),
                           lambda t, s: k(s) / k(t) * ratio(t, s), p0, name)
    else:
        raise DomainError(f"unknown example {name!r}; choose from {', '.join(GALLERY)}")
    return EvolutionSystem(sys.space, sys.u_eval, sys.p_eval, name, params)
