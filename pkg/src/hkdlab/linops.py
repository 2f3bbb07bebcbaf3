"""Small dense linear algebra on R^n.

Operators are plain ``numpy`` arrays of shape ``(n, n)``; vectors have shape
``(n,)``.  Norms act on the last axis so they broadcast over stacks.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError, NotCompatibleError, ResidualError

__all__ = [
    "StateSpace", "ProjectorCheck", "apply", "is_projector", "complement",
    "range_basis", "solve_on_subspace", "max_entry",
]

RANK_TOL = 1e-10


@dataclass(frozen=True)
class StateSpace:
    """R^n with a fixed base norm (``"max"`` or ``"euclidean"``)."""

    n: int
    base_norm: str = "max"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.n}")
        if self.base_norm not in ("max", "euclidean"):
            raise DomainError(f"unknown base norm {self.base_norm!r}")

    def norm(self, x):
        x = np.asarray(x, dtype=float)
        if self.base_norm == "max":
            return np.max(np.abs(x), axis=-1)
        return np.linalg.norm(x, axis=-1)

    def identity(self):
        return np.eye(self.n)


def max_entry(a):
    """Entrywise max norm, over the last two axes."""
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return np.zeros(a.shape[:-2]) if a.ndim > 2 else 0.0
    return np.max(np.abs(a), axis=(-2, -1))


def _square(a):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("operator has non-finite entries")
    return a


def apply(a, x):
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    if a.ndim != 2 or x.shape[0] != a.shape[1]:
        raise DomainError(f"cannot apply {a.shape} operator to vector of shape {x.shape}")
    return a @ x


@dataclass(frozen=True)
class ProjectorCheck:
    passed: bool
    defect: float

    def __bool__(self):
        return self.passed


def is_projector(a, tol=RANK_TOL):
    a = _square(a)
    defect = float(max_entry(a @ a - a))
    return ProjectorCheck(defect <= tol, defect)


def complement(p, tol=RANK_TOL):
    """Return I - P; P must be a projector to ``tol``."""
    p = _square(p)
    chk = is_projector(p, tol)
    if not chk:
        raise ContractError(f"not a projector (defect {chk.defect:.3e})")
    return np.eye(p.shape[0]) - p


def range_basis(p, tol=RANK_TOL):
    """Orthonormal basis of range(P) as the columns of an ``(n, r)`` array.

    Singular values below ``tol`` times max(1, largest) count as zero; the
    floor keeps a roundoff-sized complement from acquiring a spurious rank
    (nonzero singular values of a projector are at least 1).
    """
    p = _square(p)
    u, sv, _ = np.linalg.svd(p)
    if sv.size == 0 or sv[0] == 0.0:
        return np.zeros((p.shape[0], 0))
    rank = int(np.sum(sv > tol * max(sv[0], 1.0)))
    return u[:, :rank]


def solve_on_subspace(a, basis, y, tol=RANK_TOL):
    """Find w in span(basis) with A w = y.

    ``y`` may be a vector or an ``(n, m)`` array of right-hand sides.
    Raises :class:`NotCompatibleError` when A restricted to the span is
    singular and :class:`ResidualError` when ``y`` is not in its image.
    """
    a = _square(a)
    basis = np.asarray(basis, dtype=float).reshape(a.shape[0], -1)
    y = np.asarray(y, dtype=float)
    if y.shape[0] != a.shape[0]:
        raise DomainError(f"right-hand side shape {y.shape} does not match {a.shape}")
    ynorm = np.max(np.abs(y)) if y.size else 0.0
    if basis.shape[1] == 0:
        if ynorm > tol:
            raise ResidualError("nonzero right-hand side for an empty subspace", ynorm)
        return np.zeros_like(y)
    ab = a @ basis
    sv = np.linalg.svd(ab, compute_uv=False)
    if sv[-1] <= tol * max(sv[0], np.finfo(float).tiny):
        raise NotCompatibleError(
            f"restricted map is singular (sigma_min = {sv[-1]:.3e}, sigma_max = {sv[0]:.3e})")
    coef, *_ = np.linalg.lstsq(ab, y, rcond=None)
    w = basis @ coef
    residual = float(np.max(np.abs(a @ w - y))) if y.size else 0.0
    if residual > tol * (1.0 + ynorm) * max(1.0, float(max_entry(a))):
        raise ResidualError(f"right-hand side outside the image (residual {residual:.3e})",
                            residual)
    return w
