"""Lyapunov-type norm families evaluated by suprema over a shared time grid.

Both families split a vector along P(t) and Q(t).  The P-part is a sup over
future grid times tau >= t of a weighted |U(tau, t) P(t) x|; the Q-part a sup
over past grid times tau <= t of a weighted |V(t, tau) Q(t) x|.  They differ
only in the weights:

=============  ====================  ====================
kind           P-part weight         Q-part weight
=============  ====================  ====================
``growth``     h(t) / h(tau)         k(tau) / k(t)
``dichotomy``  h(tau) / h(t)         k(t) / k(tau)
=============  ====================  ====================

Every t shares one global tau grid, so each computed value is a lower bound of
the continuous supremum and the contraction inequalities of the dichotomy
family hold exactly on the grid (the left-hand sup ranges over a subset of
the right-hand terms).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .systems import KernelInverse, default_probes, p_table, u_table

__all__ = [
    "NormFamily", "growth_norm", "dichotomy_norm", "check_projected_identities",
    "check_compatibility_sandwich", "norm_table", "IdentityCheck", "SandwichCheck",
]

KINDS = ("growth", "dichotomy")


class NormFamily:
    """Norm family ``|x|_t`` of the given ``kind`` on ``tau_grid``.

    Parameters
    ----------
    kind : {"growth", "dichotomy"}
    system : EvolutionSystem
    h, k : GrowthRate
    tau_grid : array_like
        Shared grid for the suprema; norms are only defined at its points.
    kernel_inverse : KernelInverse, optional
        Built on demand if omitted.
    """

    def __init__(self, kind, system, h, k, tau_grid, kernel_inverse=None):
        if kind not in KINDS:
            raise DomainError(f"norm kind must be one of {KINDS}, got {kind!r}")
        g = np.asarray(tau_grid, dtype=float)
        if g.ndim != 1 or g.size == 0 or np.any(np.diff(g) <= 0) or g[0] < 0:
            raise DomainError("tau grid must be nonempty, nonnegative and strictly increasing")
        self.kind = kind
        self.system = system
        self.h = h
        self.k = k
        self.tau_grid = g
        self.kernel_inverse = kernel_inverse or KernelInverse(system)
        self._ut = u_table(system, g)
        self._vt = self.kernel_inverse.table(g)
        self._pt = p_table(system, g)
        self._qt = np.eye(system.space.n)[None] - self._pt
        hv = np.atleast_1d(h(g))
        kv = np.atleast_1d(k(g))
        # wp[i, j] weights tau_j >= t_i, wq[i, j] weights tau_j <= t_i
        if kind == "growth":
            self._wp = hv[:, None] / hv[None, :]
            self._wq = kv[None, :] / kv[:, None]
        else:
            self._wp = hv[None, :] / hv[:, None]
            self._wq = kv[:, None] / kv[None, :]

    def __repr__(self):
        return (f"NormFamily({self.kind!r}, {self.system.label!r}, h={self.h.label}, "
                f"k={self.k.label}, {self.tau_grid.size} points)")

    def index(self, t):
        g = self.tau_grid
        i = int(np.searchsorted(g, t))
        for j in (i - 1, i):
            if 0 <= j < g.size and abs(g[j] - t) <= 1e-12 * (1.0 + abs(t)):
                return j
        raise DomainError(f"t={t} is not on the tau grid; norms are not interpolated")

    def p_term_at(self, i, x):
        """P-part sup at grid index ``i`` for vectors ``x`` of shape ``(..., n)``."""
        x = np.asarray(x, dtype=float)
        y = x @ self._pt[i].T
        traj = np.einsum("jab,...b->j...a", self._ut[i:, i], y)
        vals = self.system.norm(traj) * self._wp[i, i:].reshape((-1,) + (1,) * (x.ndim - 1))
        return vals.max(axis=0)

    def q_term_at(self, i, x):
        """Q-part sup at grid index ``i`` for vectors ``x`` of shape ``(..., n)``."""
        x = np.asarray(x, dtype=float)
        z = x @ self._qt[i].T
        back = np.einsum("jab,...b->j...a", self._vt[i, :i + 1], z)
        vals = self.system.norm(back) * self._wq[i, :i + 1].reshape((-1,) + (1,) * (x.ndim - 1))
        return vals.max(axis=0)

    def value_at(self, i, x):
        return self.p_term_at(i, x) + self.q_term_at(i, x)

    def p_term(self, t, x):
        return self.p_term_at(self.index(t), x)

    def q_term(self, t, x):
        return self.q_term_at(self.index(t), x)

    def __call__(self, t, x):
        return self.value_at(self.index(t), x)


def _require(family, kind):
    if family.kind != kind:
        raise DomainError(f"expected a {kind} norm family, got {family.kind}")


def growth_norm(family, t, x):
    """|x|_t for the growth-type family."""
    _require(family, "growth")
    return float(family(t, x))


def dichotomy_norm(family, t, x):
    """|||x|||_t for the dichotomy-type family."""
    _require(family, "dichotomy")
    return float(family(t, x))


@dataclass(frozen=True)
class IdentityCheck:
    passed: bool
    worst_defect: float
    where: tuple


def _grid_and_probes(family, grid, probes):
    g = family.tau_grid if grid is None else np.asarray(grid, dtype=float)
    idx = [family.index(t) for t in g]
    probes = default_probes(family.system.space) if probes is None else np.atleast_2d(probes)
    return g, idx, probes


def check_projected_identities(family, grid=None, tol=1e-12, probes=None):
    """|P(t)x|_t equals the P-part alone, |Q(t)x|_t the Q-part alone, and the
    norm of x is their sum.  Defects are relative to ``1 + |x|_t``."""
    g, idx, probes = _grid_and_probes(family, grid, probes)
    worst = (0.0, None)
    for t, i in zip(g, idx):
        px = probes @ family._pt[i].T
        qx = probes @ family._qt[i].T
        full = family.value_at(i, probes)
        np_, nq = family.value_at(i, px), family.value_at(i, qx)
        scale = 1.0 + full
        defects = np.stack([np.abs(np_ - family.p_term_at(i, probes)),
                            np.abs(nq - family.q_term_at(i, probes)),
                            np.abs(full - np_ - nq)]) / scale
        a, b = np.unravel_index(np.argmax(defects), defects.shape)
        if defects[a, b] > worst[0]:
            worst = (float(defects[a, b]), (float(t), int(b), ("P", "Q", "sum")[a]))
    return IdentityCheck(worst[0] <= tol, worst[0], worst[1] or ())


@dataclass(frozen=True)
class SandwichCheck:
    """``worst_margin`` is min of (rhs - lhs) / rhs over all inequalities."""

    passed: bool
    worst_margin: float
    where: tuple


def _bound_values(bound, g):
    if callable(bound):
        return np.array([float(bound(t)) for t in g])
    b = np.asarray(bound, dtype=float)
    if b.shape != g.shape:
        raise DomainError("bound array must match the grid")
    return b


def check_compatibility_sandwich(family, bound, grid=None, tol=1e-9, probes=None):
    """Check |x| <= |x|_t <= N(t)(|P(t)x| + |Q(t)x|) and its P/Q specializations.

    ``bound`` is N as a callable or as values on ``grid``.
    """
    g, idx, probes = _grid_and_probes(family, grid, probes)
    nvals = _bound_values(bound, g)
    nrm = family.system.norm
    worst = (np.inf, ())
    for t, i, nt in zip(g, idx, nvals):
        px = probes @ family._pt[i].T
        qx = probes @ family._qt[i].T
        base_p, base_q, base = nrm(px), nrm(qx), nrm(probes)
        val, val_p, val_q = family.value_at(i, probes), family.value_at(i, px), family.value_at(i, qx)
        pairs = [
            (base, val), (val, nt * (base_p + base_q)),
            (base_p, val_p), (val_p, nt * base_p),
            (base_q, val_q), (val_q, nt * base_q),
        ]
        for which, (lhs, rhs) in enumerate(pairs):
            live = rhs > 1e-300
            if not np.any(live):
                continue
            margin = np.full(rhs.shape, np.inf)
            margin[live] = (rhs[live] - lhs[live]) / rhs[live]
            j = int(np.argmin(margin))
            if margin[j] < worst[0]:
                worst = (float(margin[j]), (float(t), j, which))
            # a zero right-hand side demands a zero left-hand side
            dead = ~live & (lhs > 1e-300)
            if np.any(dead):
                worst = (-np.inf, (float(t), int(np.argmax(dead)), which))
    margin = 0.0 if worst[0] == np.inf else worst[0]
    return SandwichCheck(margin >= -tol, margin, worst[1])


def norm_table(family, probes, upper=None):
    """Rows ``(t, probe_index, value, lower, upper)`` ordered by t then probe.

    ``value`` is the grid supremum, which is also the certified lower bound;
    ``upper`` is N(t)(|P(t)x| + |Q(t)x|) when a bound N is supplied.
    """
    probes = np.atleast_2d(np.asarray(probes, dtype=float))
    nvals = None if upper is None else _bound_values(upper, family.tau_grid)
    nrm = family.system.norm
    rows = []
    for i, t in enumerate(family.tau_grid):
        vals = family.value_at(i, probes)
        split = nrm(probes @ family._pt[i].T) + nrm(probes @ family._qt[i].T)
        for p, v in enumerate(vals):
            up = None if nvals is None else float(nvals[i] * split[p])
            rows.append((float(t), p, float(v), float(v), up))
    return rows
