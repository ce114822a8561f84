"""Products of two orthogonal projections.

Classification (three mutually checking criteria), the canonical factorization
``T = P_ranT P_ranT*``, the unitary / completely non-unitary splitting of
``T = P1 P2`` and the two-summand description of ``ker(P1 P2)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import ClassificationError, ConsistencyError, DimensionError, InputError
from .hilbert import (
    DEFAULT_TOL,
    Subspace,
    Tolerances,
    as_matrix,
    complement,
    intersect,
    join,
    kernel,
    norm_at_most,
    opnorm,
    orthonormal_range,
    projector,
    subspace_equal,
)

__all__ = [
    "ProjectionPair",
    "ClassificationReport",
    "CanonicalDecomposition",
    "is_projection",
    "classify",
    "canonical_factorization",
    "canonical_sandwich",
    "sebestyen_right_factor",
    "unitary_part",
    "cnu_part",
    "canonical_decomposition",
    "kernel_decomposition",
]


def _square(a, name):
    a = as_matrix(a, name)
    if a.shape[0] != a.shape[1]:
        raise InputError(f"{name} must be square, got shape {a.shape}")
    return a


def _ran(p, tol):
    # projections and their products are contractions of unit scale
    return orthonormal_range(p, tol, scale=1.0)


def _projection_residuals(p):
    return opnorm(p - p.conj().T), opnorm(p - p @ p)


def _passes_projection(p, tol):
    return norm_at_most(p - p.conj().T, tol.tol_eq) and norm_at_most(p - p @ p, tol.tol_eq)


def is_projection(p, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff ``p`` is Hermitian and idempotent within ``tol_eq``."""
    return _passes_projection(_square(p, "P"), tol)


@dataclass(frozen=True, eq=False)
class ProjectionPair:
    """Two orthogonal projections of the same size; ``product`` is ``P1 P2``.

    Inputs that are not projections within ``tol.tol_eq`` are rejected, never
    repaired.
    """

    p1: np.ndarray
    p2: np.ndarray
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        p1 = _square(self.p1, "P1")
        p2 = _square(self.p2, "P2")
        if p1.shape != p2.shape:
            raise DimensionError(f"P1 is {p1.shape} but P2 is {p2.shape}")
        for name, p in (("P1", p1), ("P2", p2)):
            if not _passes_projection(p, self.tol):
                herm, idem = _projection_residuals(p)
                raise InputError(
                    f"{name} is not an orthogonal projection "
                    f"(||P - P*|| = {herm:.3e}, ||P - P^2|| = {idem:.3e})"
                )
            p.setflags(write=False)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    @classmethod
    def from_subspaces(cls, s1: Subspace, s2: Subspace, tol: Tolerances = DEFAULT_TOL):
        return cls(projector(s1), projector(s2), tol)

    @property
    def dim(self) -> int:
        return self.p1.shape[0]

    @property
    def product(self) -> np.ndarray:
        return self.p1 @ self.p2

    def adjoint(self) -> "ProjectionPair":
        """The pair ``(P2, P1)``, whose product is ``(P1 P2)*``."""
        return ProjectionPair(self.p2, self.p1, self.tol)


@dataclass(frozen=True)
class ClassificationReport:
    is_product: bool
    crimmins_residual: float
    factor_residual: float
    sebestyen_residual: float
    sebestyen_adjoint_residual: float
    is_contraction: bool
    norm: float
    rank: int
    consistent: bool

    def to_json(self) -> dict:
        return asdict(self)


def classify(t, tol: Tolerances = DEFAULT_TOL) -> ClassificationReport:
    """Decide whether ``t`` is a product of two orthogonal projections.

    Three equivalent criteria are evaluated and must agree:
    ``||T T* T - T^2||``, ``||T - P_ranT P_ranT*||`` and ``||T T* - T P_ranT||``.
    The adjoint twin ``||T T* - P_ranT T*||`` is reported alongside.
    ``consistent`` is False when one criterion accepts while another rejects
    by more than a factor of ten beyond ``tol_eq``.
    """
    t = _square(t, "T")
    th = t.conj().T
    p_ran = projector(orthonormal_range(t, tol))
    p_ran_adj = projector(orthonormal_range(th, tol))
    tth = t @ th

    crimmins = opnorm(tth @ t - t @ t)
    factor = opnorm(t - p_ran @ p_ran_adj)
    sebestyen = opnorm(tth - t @ p_ran)
    sebestyen_adj = opnorm(tth - p_ran @ th)
    norm = opnorm(t)

    residuals = (crimmins, factor, sebestyen)
    accepted = [r <= tol.tol_eq for r in residuals]
    is_product = all(accepted)
    consistent = is_product or not any(accepted) or max(residuals) <= 10 * tol.tol_eq
    return ClassificationReport(
        is_product=is_product,
        crimmins_residual=crimmins,
        factor_residual=factor,
        sebestyen_residual=sebestyen,
        sebestyen_adjoint_residual=sebestyen_adj,
        is_contraction=norm <= 1.0 + tol.tol_eq,
        norm=norm,
        rank=orthonormal_range(t, tol).dim,
        consistent=consistent,
    )


def canonical_factorization(t, tol: Tolerances = DEFAULT_TOL):
    """Return ``(P_ranT, P_ranT*)``, whose product is ``t``.

    Raises ClassificationError if ``t`` is not a product of two projections.
    """
    t = _square(t, "T")
    report = classify(t, tol)
    if not report.is_product:
        raise ClassificationError(
            f"T is not a product of two projections "
            f"(||T T* T - T^2|| = {report.crimmins_residual:.3e})",
            residual=report.crimmins_residual,
        )
    q1 = projector(orthonormal_range(t, tol))
    q2 = projector(orthonormal_range(t.conj().T, tol))
    resid = opnorm(t - q1 @ q2)
    if resid > tol.tol_eq:
        raise ConsistencyError(f"canonical factors reproduce T only to {resid:.3e}")
    return q1, q2


def canonical_sandwich(x, p1, p2, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Form ``T = P1 X P2`` and confirm ``T = P_ranT X P_ranT*``."""
    pair = ProjectionPair(p1, p2, tol)
    x = _square(x, "X")
    if x.shape != pair.p1.shape:
        raise DimensionError(f"X is {x.shape} but the projections are {pair.p1.shape}")
    t = pair.p1 @ x @ pair.p2
    q1 = projector(orthonormal_range(t, tol))
    q2 = projector(orthonormal_range(t.conj().T, tol))
    resid = opnorm(t - q1 @ x @ q2)
    if resid > tol.tol_eq * max(1.0, opnorm(x)):
        raise ConsistencyError(f"||T - P_ranT X P_ranT*|| = {resid:.3e} exceeds tolerance")
    return t


def sebestyen_right_factor(t1, t2, tol: Tolerances = DEFAULT_TOL) -> Subspace | None:
    """Find a projection ``P`` with ``T1 = T2 P``, if one exists.

    Exists iff ``T1 T1* = T2 T1*``; then ``P`` projects onto ``ran T1*``.
    Returns that subspace, or None.
    """
    t1 = as_matrix(t1, "T1")
    t2 = as_matrix(t2, "T2")
    if t1.shape != t2.shape:
        raise DimensionError(f"T1 is {t1.shape} but T2 is {t2.shape}")
    t1h = t1.conj().T
    if not norm_at_most(t1 @ t1h - t2 @ t1h, tol.tol_eq):
        return None
    s = orthonormal_range(t1h, tol)
    if not norm_at_most(t1 - t2 @ projector(s), tol.tol_eq):
        raise ConsistencyError("||T1 - T2 P|| exceeds tolerance despite T1 T1* = T2 T1*")
    return s


def unitary_part(pair: ProjectionPair, tol: Tolerances = DEFAULT_TOL) -> Subspace:
    """``ker(P1 P2 - I)``, checked against ``ran P1 ∩ ran P2``."""
    hu = kernel(pair.product - np.eye(pair.dim), tol, scale=1.0)
    common = intersect(_ran(pair.p1, tol), _ran(pair.p2, tol), tol)
    if not subspace_equal(hu, common, tol):
        raise ConsistencyError(
            f"ker(P1 P2 - I) has dim {hu.dim} but ran P1 ∩ ran P2 has dim {common.dim}"
        )
    return hu


def cnu_part(t, tol: Tolerances = DEFAULT_TOL) -> Subspace:
    """``ker T ⋁ ker T*`` for a product of two projections ``t``."""
    t = _square(t, "T")
    report = classify(t, tol)
    if not report.is_product:
        raise ClassificationError(
            "cnu_part needs a product of two projections", residual=report.crimmins_residual
        )
    hcnu = join(kernel(t, tol, scale=1.0), kernel(t.conj().T, tol, scale=1.0), tol)
    hu = kernel(t - np.eye(t.shape[0]), tol, scale=1.0)
    if not subspace_equal(hcnu, complement(hu), tol):
        raise ConsistencyError(
            f"ker T ⋁ ker T* (dim {hcnu.dim}) is not the complement of "
            f"ker(T - I) (dim {hu.dim})"
        )
    return hcnu


@dataclass(frozen=True, eq=False)
class CanonicalDecomposition:
    """``T = T_u ⊕ T_cnu`` on ``H = H_u ⊕ H_cnu``; blocks are in the frames' coordinates."""

    unitary_space: Subspace
    cnu_space: Subspace
    unitary_block: np.ndarray
    cnu_block: np.ndarray
    off_diagonal_norm: float
    unitarity_defect: float


def canonical_decomposition(pair: ProjectionPair, tol: Tolerances = DEFAULT_TOL) -> CanonicalDecomposition:
    t = pair.product
    hu = unitary_part(pair, tol)
    hcnu = complement(hu)
    fu, fc = hu.frame, hcnu.frame
    u_block = fu.conj().T @ t @ fu
    c_block = fc.conj().T @ t @ fc
    off = max(opnorm(fu.conj().T @ t @ fc), opnorm(fc.conj().T @ t @ fu))
    if off > tol.tol_eq:
        raise ConsistencyError(f"T is not block diagonal on H_u ⊕ H_cnu (off-diagonal {off:.3e})")
    k = hu.dim
    defect = opnorm(u_block.conj().T @ u_block - np.eye(k)) if k else 0.0
    if defect > 10 * tol.tol_eq:
        raise ConsistencyError(f"unitary block has ||U*U - I|| = {defect:.3e}")
    if k and opnorm(u_block - np.eye(k)) > 10 * tol.tol_eq:
        raise ConsistencyError("T does not act as the identity on H_u")
    return CanonicalDecomposition(hu, hcnu, u_block, c_block, off, defect)


def kernel_decomposition(pair: ProjectionPair, tol: Tolerances = DEFAULT_TOL):
    """``ker(P1 P2) = [ran(I - P1) ∩ ran P2] ⊕ ran(I - P2)``; returns the two summands."""
    eye = np.eye(pair.dim)
    first = intersect(_ran(eye - pair.p1, tol), _ran(pair.p2, tol), tol)
    second = _ran(eye - pair.p2, tol)
    if first.dim and second.dim:
        overlap = first.frame.conj().T @ second.frame
        if not norm_at_most(overlap, tol.tol_eq):
            raise ConsistencyError(
                f"kernel summands are not orthogonal (overlap {opnorm(overlap):.3e})"
            )
    if not subspace_equal(join(first, second, tol), kernel(pair.product, tol, scale=1.0), tol):
        raise ConsistencyError("the two summands do not span ker(P1 P2)")
    return first, second
