"""H^2 of the unit disc by truncation, and inner / model projections.

Coefficient index ``k`` stands for the monomial ``z**k``, ``0 <= k < N``.
Inner and model projections of a finite Blaschke product ``b`` are built from
the reproducing kernels at its zeros; the error is ``O(rho**N)`` with
``rho = max |zero|``, which ``HardyTruncation.require`` bounds.

Invariant-subspace searches (smallest ``phi H^2`` containing a subspace,
largest ``psi H^2`` inside one) run on the orthogonal complement, which is
small. The duality used is ``(V ⋁ zV)^⊥ = {w in V^⊥ : S* w in V^⊥}``.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .blaschke import (
    DEFAULT_TOL_ZERO,
    BlaschkeProduct,
    blaschke_lcm,
    cluster_points,
    divides,
)
from .errors import ConfigError, ConsistencyError, EmptyFamilyError, InputError, TruncationError
from .hilbert import (
    DEFAULT_TOL,
    Subspace,
    Tolerances,
    as_matrix,
    complement,
    intersect,
    join,
    kernel,
    opnorm,
    orthonormal_range,
    projector,
)
from .products import ProjectionPair, kernel_decomposition, unitary_part

__all__ = [
    "HardyTruncation",
    "InnerPair",
    "ConditioningWarning",
    "blaschke_taylor",
    "shift_matrix",
    "model_space_frame",
    "inner_space_frame",
    "model_projection_matrix",
    "inner_projection_matrix",
    "toeplitz_inner_projection",
    "smallest_beurling_containing",
    "largest_invariant_inside",
    "range_inner_function",
    "InnerCheckReport",
    "ModelCheckReport",
    "product_inner_check",
    "product_model_check",
    "model_product_classify",
    "model_beurling_intersection",
    "intersection_dimension",
]

# Distinct recovered eigenvalues closer than this are merged. A zero of
# multiplicity s comes back split by about eps**(1/s); the cluster mean is
# accurate to O(eps) regardless.
DEFAULT_TOL_RECOVER = 1e-5

PROBE_ZEROS = (0j, 0.5 + 0j, -0.5 + 0j, 0.5j, -0.5j)


class ConditioningWarning(UserWarning):
    """The kernel vectors spanning a model space are nearly dependent."""


@dataclass(frozen=True)
class HardyTruncation:
    """Truncation order ``N``: H^2 is identified with coefficient space C^N."""

    order: int = 256
    tol_trunc: float = 1e-12
    tol_zero: float = DEFAULT_TOL_ZERO
    tol_recover: float = DEFAULT_TOL_RECOVER

    def __post_init__(self):
        if not isinstance(self.order, (int, np.integer)) or self.order < 2:
            raise ConfigError(f"truncation order must be an integer >= 2, got {self.order!r}")
        if not 0 < self.tol_trunc < 1:
            raise ConfigError("tol_trunc must lie in (0, 1)")

    def suggested_order(self, *products: BlaschkeProduct) -> int:
        n = 2
        for b in products:
            n = max(n, 2 * b.degree)
            rho = b.max_modulus
            if rho > 0:
                n = max(n, math.floor(math.log(self.tol_trunc) / math.log(rho)) + 1)
        return n

    def require(self, *products: BlaschkeProduct):
        """Raise TruncationError unless every product is resolved at this order."""
        for b in products:
            if self.order < 2 * b.degree:
                raise TruncationError(
                    f"N = {self.order} < 2 x {b.degree} zeros", self.suggested_order(*products)
                )
            if b.max_modulus ** self.order >= self.tol_trunc:
                raise TruncationError(
                    f"rho^N = {b.max_modulus:.4g}^{self.order} is not below {self.tol_trunc:g}",
                    self.suggested_order(*products),
                )

    def with_order(self, order: int) -> "HardyTruncation":
        return HardyTruncation(order, self.tol_trunc, self.tol_zero, self.tol_recover)


@dataclass(frozen=True)
class InnerPair:
    phi1: BlaschkeProduct
    phi2: BlaschkeProduct
    trunc: HardyTruncation = field(default_factory=HardyTruncation)

    def __post_init__(self):
        self.trunc.require(self.phi1, self.phi2)


def shift_matrix(n: int) -> np.ndarray:
    """Multiplication by z on C^n; the top coefficient falls off."""
    return np.eye(n, k=-1, dtype=np.complex128)


def _backward_shift(w: np.ndarray) -> np.ndarray:
    """Apply S* (drop the constant coefficient, move the rest down) to each column."""
    out = np.zeros_like(w)
    out[:-1] = w[1:]
    return out


def _forward_shift(w: np.ndarray) -> np.ndarray:
    out = np.zeros_like(w)
    out[1:] = w[:-1]
    return out


def blaschke_taylor(b: BlaschkeProduct, trunc: HardyTruncation) -> np.ndarray:
    """First N Taylor coefficients of ``b`` at the origin."""
    trunc.require(b)
    n = trunc.order
    coef = np.zeros(n, dtype=np.complex128)
    coef[0] = b.constant
    k = np.arange(1, n)
    for a in b.zeros:
        fac = np.empty(n, dtype=np.complex128)
        fac[0] = -a
        fac[1:] = (1 - abs(a) ** 2) * np.conj(a) ** (k - 1)
        coef = np.convolve(coef, fac)[:n]
    # |b| = 1 on the circle, so the coefficients have unit l2 norm
    tail = 1.0 - float(np.vdot(coef, coef).real)
    if tail > trunc.tol_trunc:
        raise TruncationError(
            f"Taylor tail mass {tail:.3e} exceeds {trunc.tol_trunc:g}",
            trunc.suggested_order(b) * 2,
        )
    return coef


def _kernel_vectors(b: BlaschkeProduct, n: int, tol_zero: float) -> np.ndarray:
    """Reproducing kernels at the zeros, with derivative kernels for repeated zeros."""
    k = np.arange(n)
    cols = []
    for lam, mult in b.clusters(tol_zero):
        lc = np.conj(lam)
        for j in range(mult):
            v = np.zeros(n, dtype=np.complex128)
            falling = np.ones(n - j)
            for i in range(j):
                falling = falling * (k[j:] - i)
            v[j:] = falling * lc ** (k[j:] - j)
            cols.append(v / np.linalg.norm(v))
    if not cols:
        return np.zeros((n, 0), dtype=np.complex128)
    return np.column_stack(cols)


def model_space_frame(b: BlaschkeProduct, trunc: HardyTruncation) -> Subspace:
    """Orthonormal frame of the model space ``Q_b = (b H^2)^⊥``, of dimension ``deg b``.

    ``meta["condition"]`` holds the condition number of the kernel vectors the
    frame was built from. Above 1e8 a ConditioningWarning is issued and
    ``meta["well_conditioned"]`` is False.
    """
    trunc.require(b)
    n = trunc.order
    kv = _kernel_vectors(b, n, trunc.tol_zero)
    if kv.shape[1] == 0:
        return Subspace(kv, meta={"condition": 1.0, "well_conditioned": True})
    u, s, _ = np.linalg.svd(kv, full_matrices=False)
    cond = float(s[0] / s[-1]) if s[-1] > 0 else math.inf
    ok = cond < 1e8
    if not ok:
        warnings.warn(
            f"model space kernels of {b} are ill-conditioned (cond = {cond:.3g})",
            ConditioningWarning,
            stacklevel=2,
        )
    return Subspace(u, meta={"condition": cond, "well_conditioned": ok})


def inner_space_frame(b: BlaschkeProduct, trunc: HardyTruncation) -> Subspace:
    """Orthonormal frame of ``b H^2`` (as truncated)."""
    return complement(model_space_frame(b, trunc))


def model_projection_matrix(b: BlaschkeProduct, trunc: HardyTruncation) -> np.ndarray:
    return projector(model_space_frame(b, trunc))


def toeplitz_inner_projection(b: BlaschkeProduct, trunc: HardyTruncation) -> np.ndarray:
    """``T_b T_b*`` compressed to the first N coefficients (independent route)."""
    c = blaschke_taylor(b, trunc)
    n = trunc.order
    idx = np.subtract.outer(np.arange(n), np.arange(n))
    tb = np.where(idx >= 0, c[np.clip(idx, 0, n - 1)], 0)
    return tb @ tb.conj().T


def inner_projection_matrix(
    b: BlaschkeProduct, trunc: HardyTruncation, tol: Tolerances = DEFAULT_TOL, validate: bool = True
) -> np.ndarray:
    """Projection onto ``b H^2``: ``I - P_{Q_b}``.

    With ``validate`` the result is compared with the truncated Toeplitz
    product ``T_b T_b*`` on the leading ``N - deg b`` block.
    """
    n = trunc.order
    p = np.eye(n) - model_projection_matrix(b, trunc)
    if validate:
        lead = n - b.degree
        diff = opnorm((p - toeplitz_inner_projection(b, trunc))[:lead, :lead])
        if diff > tol.tol_eq:
            raise ConsistencyError(f"inner projection of {b} differs from T_b T_b* by {diff:.3e}")
    return p


# --- zero recovery ---------------------------------------------------------


def _zeros_from_coinvariant(w: np.ndarray, trunc: HardyTruncation) -> BlaschkeProduct:
    """Blaschke product whose model space is span(w): eigenvalues of the compressed shift."""
    if w.shape[1] == 0:
        return BlaschkeProduct(())
    compressed = w.conj().T @ _forward_shift(w)
    eig = np.linalg.eigvals(compressed)
    zeros = []
    for center, idx in cluster_points(eig, trunc.tol_recover):
        zeros.extend([center] * len(idx))
    rho = max(abs(z) for z in zeros)
    return BlaschkeProduct(tuple(zeros), 1.0, max_zero_modulus=max(rho, 0.95))


def _null_columns(m: np.ndarray, thresh: float) -> np.ndarray:
    """Orthonormal basis (as coefficient vectors) of {x : ||m x|| ~ 0}."""
    c = m.shape[1]
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    s_full = np.zeros(c)
    s_full[: s.size] = s
    return vh[s_full <= thresh].conj().T


def _saturate_complement(w: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Largest S*-invariant subspace of span(w): W <- W ∩ {x : S* x in W}."""
    while w.shape[1]:
        sw = _backward_shift(w)
        resid = sw - w @ (w.conj().T @ sw)
        keep = _null_columns(resid, tol.tol_eq)
        if keep.shape[1] == w.shape[1]:
            break
        w = w @ keep
    return w


def _grow_coinvariant(w: np.ndarray, n: int, tol: Tolerances, cap: int) -> np.ndarray | None:
    """Smallest S*-invariant subspace containing span(w); None once it exceeds ``cap``."""
    while True:
        if w.shape[1] > cap:
            return None
        if w.shape[1] == 0:
            return w
        grown = orthonormal_range(np.hstack([w, _backward_shift(w)]), tol).frame
        if grown.shape[1] == w.shape[1]:
            return w
        w = grown


def _orth(a: np.ndarray) -> np.ndarray:
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((a.shape[0], 0), dtype=np.complex128)
    return u[:, s > 1e-14 * max(1.0, s[0])]


def _beurling_from_complement(w: np.ndarray, trunc: HardyTruncation, tol: Tolerances):
    """phi with phi H^2 the smallest shift-invariant subspace whose complement lies in span(w)."""
    n = w.shape[0]
    q = _saturate_complement(w, tol)
    if q.shape[1] > n // 2:
        raise TruncationError(
            f"recovered model space has dimension {q.shape[1]} > N/2 = {n // 2}",
            suggested_order=2 * n,
        )
    return _zeros_from_coinvariant(q, trunc), q


def _refine(w: np.ndarray, dim: int, trunc: HardyTruncation, tol: Tolerances):
    """Redo the saturation at N + dim with zero-padded data; the dimension must not move."""
    n, c = w.shape
    extra = max(dim, 1)
    padded = np.zeros((n + extra, c + extra), dtype=np.complex128)
    padded[:n, :c] = w
    padded[n:, c:] = np.eye(extra)
    q = _saturate_complement(padded, tol)
    if q.shape[1] != dim:
        raise TruncationError(
            f"model space dimension changes from {dim} to {q.shape[1]} when N grows "
            f"from {n} to {n + extra}",
            suggested_order=2 * n,
        )


def _check_minimal(phi: BlaschkeProduct, frame: np.ndarray, trunc: HardyTruncation, tol: Tolerances):
    """``frame`` lies in phi H^2 but in no (phi * b_a) H^2 for the probed a."""
    n = trunc.order
    q = _kernel_model_frame(phi, n, trunc)
    outside = opnorm(q.conj().T @ frame) if q.shape[1] else 0.0
    if outside > tol.tol_eq:
        raise ConsistencyError(f"subspace is not inside {phi} H^2 (leak {outside:.3e})")
    if 2 * (phi.degree + 1) > n:
        return
    for a in set(phi.zeros) | set(PROBE_ZEROS):
        aug = phi * BlaschkeProduct.factor(a)
        qa = _kernel_model_frame(aug, n, trunc)
        if opnorm(qa.conj().T @ frame) <= tol.tol_eq:
            raise ConsistencyError(f"subspace also lies in ({aug}) H^2; {phi} is not minimal")


def _kernel_model_frame(b: BlaschkeProduct, n: int, trunc: HardyTruncation) -> np.ndarray:
    kv = _kernel_vectors(b, n, trunc.tol_zero)
    return _orth(kv) if kv.shape[1] else kv


def range_inner_function(t, trunc: HardyTruncation, tol: Tolerances = DEFAULT_TOL, verify: bool = True):
    """phi_T: the inner function of the smallest shift-invariant subspace containing ran T.

    One SVD of ``t`` gives both ``ran T`` and its complement ``ker T*``.
    """
    t = as_matrix(t, "T")
    u, s, _ = np.linalg.svd(t)
    r = int(np.count_nonzero(s > tol.tol_rank * s[0])) if s[0] > 0 else 0
    if r == 0:
        raise InputError("T is zero; ran T is trivial")
    return _smallest_from_parts(u[:, :r], u[:, r:], trunc, tol, verify)


def _smallest_from_parts(frame, perp, trunc, tol, verify):
    if frame.shape[0] != trunc.order:
        raise InputError(f"subspace lives in C^{frame.shape[0]}, truncation is N = {trunc.order}")
    phi, q = _beurling_from_complement(perp, trunc, tol)
    if verify:
        _refine(perp, q.shape[1], trunc, tol)
        _check_minimal(phi, frame, trunc, tol)
    return phi


def smallest_beurling_containing(
    s: Subspace, trunc: HardyTruncation, tol: Tolerances = DEFAULT_TOL, verify: bool = True
) -> BlaschkeProduct:
    """Smallest ``phi H^2`` containing ``s``, returned as ``phi`` (constant normalized to 1).

    Saturates ``V <- V ⋁ zV``; zeros are the eigenvalues of the shift
    compressed to ``V^⊥``. Saturation to the full space gives ``phi = 1``.
    """
    if s.dim == 0:
        raise InputError("subspace must be nontrivial")
    return _smallest_from_parts(s.frame, complement(s).frame, trunc, tol, verify)


def largest_invariant_inside(
    k: Subspace,
    trunc: HardyTruncation,
    tol: Tolerances = DEFAULT_TOL,
    reference: BlaschkeProduct | None = None,
) -> BlaschkeProduct:
    """Largest ``psi H^2`` inside ``k``, returned as ``psi``.

    Iterates ``V <- V ∩ {f : z f in V}``. If nothing resolvable survives
    (the complement grows past N/2) the family of inner ``phi`` with
    ``phi H^2 ⊆ k`` is empty and EmptyFamilyError is raised.

    The result is checked against the divisor lattice of ``reference``
    (default ``psi * z * b_{1/2}``): every divisor ``phi`` of it with
    ``phi H^2 ⊆ k`` must be a multiple of ``psi``.
    """
    if k.ambient_dim != trunc.order:
        raise InputError(f"subspace lives in C^{k.ambient_dim}, truncation is N = {trunc.order}")
    return _largest_from_complement(complement(k).frame, trunc, tol, reference)


def _largest_from_complement(perp, trunc, tol, reference=None):
    n = trunc.order
    q = _grow_coinvariant(perp, n, tol, cap=n // 2)
    if q is None:
        raise EmptyFamilyError("J_T empty: no nonzero shift-invariant subspace fits inside")
    psi = _zeros_from_coinvariant(q, trunc)
    q_check = _kernel_model_frame(psi, n, trunc)
    leak = opnorm(perp - q_check @ (q_check.conj().T @ perp)) if perp.shape[1] else 0.0
    if leak > tol.tol_eq:
        raise ConsistencyError(f"{psi} H^2 is not inside the subspace (leak {leak:.3e})")
    _check_divisor_lattice(psi, perp, trunc, tol, reference)
    return psi


def _check_divisor_lattice(psi, perp, trunc, tol, reference):
    n = trunc.order
    if reference is None:
        reference = psi * BlaschkeProduct((0j, 0.5 + 0j))
    if 2 * reference.degree > n:
        return
    clusters = reference.clusters(trunc.tol_zero)
    for counts in itertools.product(*[range(m + 1) for _, m in clusters]):
        zs = tuple(z for (z, _), c in zip(clusters, counts) for _ in range(c))
        phi = BlaschkeProduct(zs, 1.0, reference.max_zero_modulus)
        q = _kernel_model_frame(phi, n, trunc)
        # phi H^2 ⊆ K  iff  K^⊥ ⊆ Q_phi
        inside = perp.shape[1] == 0 or opnorm(perp - q @ (q.conj().T @ perp)) <= tol.tol_eq
        if inside and not divides(psi, phi, trunc.tol_recover):
            raise ConsistencyError(f"{phi} H^2 fits inside but {psi} does not divide {phi}")


# --- theorem checks --------------------------------------------------------


def _subspace_gap(s1: Subspace, s2: Subspace) -> float:
    return opnorm(projector(s1) - projector(s2))


@dataclass(frozen=True)
class InnerCheckReport:
    truncation: int
    phi1: BlaschkeProduct
    phi2: BlaschkeProduct
    phi_T: BlaschkeProduct
    phi_T_adjoint: BlaschkeProduct
    factor_residual: float
    sebestyen_residual: float
    kernel_residual: float
    unitary_dim: int
    lcm_residual: float
    cnu_obstruction_ok: bool
    ok: bool
    diagnostic: str = ""

    def to_json(self) -> dict:
        return {
            "truncation": self.truncation,
            "phi1": self.phi1.to_json(),
            "phi2": self.phi2.to_json(),
            "phi_T": self.phi_T.to_json(),
            "phi_T_adjoint": self.phi_T_adjoint.to_json(),
            "factor_residual": self.factor_residual,
            "sebestyen_residual": self.sebestyen_residual,
            "kernel_residual": self.kernel_residual,
            "unitary_dim": self.unitary_dim,
            "lcm_residual": self.lcm_residual,
            "cnu_obstruction_ok": self.cnu_obstruction_ok,
            "ok": self.ok,
            "diagnostic": self.diagnostic,
        }


def product_inner_check(pair: InnerPair, tol: Tolerances = DEFAULT_TOL) -> InnerCheckReport:
    """Recover phi_T, phi_T* for ``T = P_{phi1 H^2} P_{phi2 H^2}`` and test the factorizations."""
    trunc = pair.trunc
    n = trunc.order
    p1 = inner_projection_matrix(pair.phi1, trunc, tol)
    p2 = inner_projection_matrix(pair.phi2, trunc, tol)
    t = p1 @ p2
    phi_t = range_inner_function(t, trunc, tol)
    phi_ts = range_inner_function(t.conj().T, trunc, tol)

    a = inner_projection_matrix(phi_t, trunc, tol, validate=False)
    b = inner_projection_matrix(phi_ts, trunc, tol, validate=False)
    factor = opnorm(t - a @ b)
    sebestyen = opnorm(t @ t.conj().T - a @ t.conj().T)
    first, second = kernel_decomposition(ProjectionPair(a, b, tol), tol)
    kern = _subspace_gap(join(first, second, tol), kernel(t, tol))

    hu = unitary_part(ProjectionPair(p1, p2, tol), tol)
    lcm_space = inner_space_frame(blaschke_lcm(pair.phi1, pair.phi2, trunc.tol_zero), trunc)
    lcm_res = _subspace_gap(hu, lcm_space) if hu.dim == lcm_space.dim else 1.0
    obstruction = hu.dim >= n - pair.phi1.degree - pair.phi2.degree

    resid = {"factor": factor, "sebestyen": sebestyen, "kernel": kern, "lcm": lcm_res}
    bad = [k for k, v in resid.items() if v > tol.tol_eq]
    ok = not bad and obstruction
    diag = ""
    if bad:
        diag = (
            f"residuals {', '.join(bad)} exceed {tol.tol_eq:g} at N = {n}; "
            f"try N = {2 * n} (suggested minimum {trunc.suggested_order(pair.phi1, pair.phi2)})"
        )
    return InnerCheckReport(
        n, pair.phi1, pair.phi2, phi_t, phi_ts, factor, sebestyen, kern, hu.dim, lcm_res,
        obstruction, ok, diag,
    )


@dataclass(frozen=True)
class ModelCheckReport:
    truncation: int
    is_model_product: bool
    psi_T: BlaschkeProduct | None
    psi_T_adjoint: BlaschkeProduct | None
    factor_residual: float | None
    sebestyen_residual: float | None
    kernel_residual: float | None
    classification: str

    def to_json(self) -> dict:
        return {
            "truncation": self.truncation,
            "is_model_product": self.is_model_product,
            "psi_T": self.psi_T.to_json() if self.psi_T else None,
            "psi_T_adjoint": self.psi_T_adjoint.to_json() if self.psi_T_adjoint else None,
            "factor_residual": self.factor_residual,
            "sebestyen_residual": self.sebestyen_residual,
            "kernel_residual": self.kernel_residual,
            "classification": self.classification,
        }


def model_product_classify(t, trunc: HardyTruncation, tol: Tolerances = DEFAULT_TOL) -> ModelCheckReport:
    """Is ``t`` a product of two model projections?

    Needs both families {phi : phi H^2 ⊆ ker T*} and {phi : phi H^2 ⊆ ker T}
    nonempty, ``T T* = P_{Q_psi_T} T*`` and
    ``ker T = [Q_{psi_T*} ∩ psi_T H^2] ⊕ psi_T* H^2``.
    """
    t = as_matrix(t, "T")
    n = trunc.order
    if t.shape != (n, n):
        raise InputError(f"T must be {n}x{n} for truncation N = {n}, got {t.shape}")
    u, s, vh = np.linalg.svd(t)
    r = int(np.count_nonzero(s > tol.tol_rank * s[0])) if s[0] > 0 else 0
    if r == 0:
        raise InputError("T is zero")
    try:
        # ker T* has complement ran T; ker T has complement ran T*
        psi_t = _largest_from_complement(u[:, :r], trunc, tol)
        psi_ts = _largest_from_complement(vh[:r].conj().T, trunc, tol)
    except EmptyFamilyError as exc:
        return ModelCheckReport(
            n, False, None, None, None, None, None,
            f"not a product of two model projections ({exc})",
        )
    a = model_projection_matrix(psi_t, trunc)
    b = model_projection_matrix(psi_ts, trunc)
    factor = opnorm(t - a @ b)
    sebestyen = opnorm(t @ t.conj().T - a @ t.conj().T)
    first, second = kernel_decomposition(ProjectionPair(a, b, tol), tol)
    kern = _subspace_gap(join(first, second, tol), kernel(t, tol))
    ok = max(factor, sebestyen, kern) <= tol.tol_eq
    label = "product of two model projections" if ok else (
        "not a product of two model projections (residuals exceed tolerance)"
    )
    return ModelCheckReport(n, ok, psi_t, psi_ts, factor, sebestyen, kern, label)


def product_model_check(pair: InnerPair, tol: Tolerances = DEFAULT_TOL) -> ModelCheckReport:
    """Recover psi_T, psi_T* for ``T = P_{Q_phi1} P_{Q_phi2}``."""
    t = model_projection_matrix(pair.phi1, pair.trunc) @ model_projection_matrix(pair.phi2, pair.trunc)
    return model_product_classify(t, pair.trunc, tol)


def model_beurling_intersection(
    b1: BlaschkeProduct, b2: BlaschkeProduct, trunc: HardyTruncation, tol: Tolerances = DEFAULT_TOL
) -> Subspace:
    """``Q_b1 ∩ b2 H^2``."""
    return intersect(model_space_frame(b1, trunc), inner_space_frame(b2, trunc), tol)


def intersection_dimension(
    b1: BlaschkeProduct, b2: BlaschkeProduct, trunc: HardyTruncation, tol: Tolerances = DEFAULT_TOL
) -> int:
    """``dim(Q_b1 ∩ b2 H^2)``; zero exactly when ``deg b1 <= deg b2``."""
    d = model_beurling_intersection(b1, b2, trunc, tol).dim
    if (d == 0) != (b1.degree <= b2.degree):
        raise ConsistencyError(
            f"dim(Q_b1 ∩ b2 H^2) = {d} but deg b1 = {b1.degree}, deg b2 = {b2.degree}"
        )
    return d
