"""Finite-dimensional complex Hilbert space: matrices, subspaces, lattice operations.

Operators are dense ``complex128`` numpy arrays. A closed subspace is stored as
an orthonormal frame (ambient dimension x k, k may be zero).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .errors import ConsistencyError, DimensionError, InputError

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "Subspace",
    "as_matrix",
    "opnorm",
    "norm_at_most",
    "orthonormal_range",
    "kernel",
    "projector",
    "intersect",
    "join",
    "complement",
    "subspace_equal",
    "contains",
    "matrix_to_json",
    "matrix_from_json",
    "subspace_to_json",
    "subspace_from_json",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    tol_rank
        Relative singular-value cutoff for numerical rank.
    tol_eq
        Bound on the operator norm of a difference for two matrices to count as equal.
    tol_orth
        Bound on ``||F* F - I||`` for a frame to count as orthonormal.
    """

    tol_rank: float = 1e-10
    tol_eq: float = 1e-8
    tol_orth: float = 1e-10

    def __post_init__(self):
        for name in ("tol_rank", "tol_eq", "tol_orth"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise InputError(f"{name} must lie in (0, 1), got {v!r}")

    def replace(self, **kw) -> "Tolerances":
        return Tolerances(**{**self.__dict__, **kw})


DEFAULT_TOL = Tolerances()


def as_matrix(a, name: str = "matrix", allow_empty: bool = False) -> np.ndarray:
    """Coerce ``a`` to a finite 2-d complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise InputError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not allow_empty and (m.shape[0] == 0 or m.shape[1] == 0):
        raise InputError(f"{name} must be nonempty, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError(f"{name} has non-finite entries")
    return m


def opnorm(a: np.ndarray) -> float:
    """Operator 2-norm (largest singular value); 0 for empty matrices."""
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def norm_at_most(a: np.ndarray, bound: float) -> bool:
    """``||a||_2 <= bound``, deciding from the Frobenius norm when it suffices."""
    if a.size == 0 or np.linalg.norm(a) <= bound:
        return True
    return opnorm(a) <= bound


@dataclass(frozen=True, eq=False)
class Subspace:
    """Closed subspace given by an orthonormal frame.

    The trivial subspace has a frame with zero columns. ``meta`` carries
    diagnostics (e.g. conditioning of the vectors the frame was built from)
    and takes no part in comparisons.
    """

    frame: np.ndarray
    meta: Mapping[str, Any] = field(default_factory=dict, repr=False)
    tol_orth: float = field(default=DEFAULT_TOL.tol_orth, repr=False)

    def __post_init__(self):
        f = np.array(self.frame, dtype=np.complex128)
        if f.ndim != 2 or f.shape[0] == 0:
            raise InputError(f"frame must be (ambient_dim, k) with ambient_dim >= 1, got {f.shape}")
        if not np.all(np.isfinite(f)):
            raise InputError("frame has non-finite entries")
        if f.shape[1] > f.shape[0]:
            raise InputError(f"frame has more columns than rows: {f.shape}")
        if f.shape[1]:
            gram_err = f.conj().T @ f - np.eye(f.shape[1])
            if not norm_at_most(gram_err, self.tol_orth):
                raise InputError(
                    f"frame columns are not orthonormal (||F*F - I|| = {opnorm(gram_err):.3e})"
                )
        f.setflags(write=False)
        object.__setattr__(self, "frame", f)

    @property
    def ambient_dim(self) -> int:
        return self.frame.shape[0]

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    @classmethod
    def trivial(cls, n: int) -> "Subspace":
        return cls(np.zeros((n, 0), dtype=np.complex128))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def span(cls, vectors, tol: Tolerances = DEFAULT_TOL) -> "Subspace":
        """Subspace spanned by the columns of ``vectors`` (need not be independent)."""
        return orthonormal_range(as_matrix(vectors, "vectors", allow_empty=True), tol)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def _check_same_space(s1: Subspace, s2: Subspace):
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError(
            f"subspaces live in different spaces: {s1.ambient_dim} vs {s2.ambient_dim}"
        )


def _rank(s: np.ndarray, tol: Tolerances, scale: float = 0.0) -> int:
    ref = max(s[0], scale) if s.size else 0.0
    if ref == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.tol_rank * ref))


def orthonormal_range(t, tol: Tolerances = DEFAULT_TOL, scale: float = 0.0) -> Subspace:
    """Orthonormal frame for the column space of ``t``.

    Singular values count toward the rank when they exceed
    ``tol_rank * max(sigma_max, scale)``. The default ``scale = 0`` gives a
    purely relative cutoff. Pass the natural size of the operator family
    (1 for anything built from projections) so that a matrix of pure rounding
    noise has rank 0 rather than full rank.
    """
    t = as_matrix(t, "T", allow_empty=True)
    if t.shape[0] == 0:
        raise InputError("T must have at least one row")
    if t.shape[1] == 0:
        return Subspace.trivial(t.shape[0])
    u, s, _ = np.linalg.svd(t, full_matrices=False)
    return Subspace(u[:, : _rank(s, tol, scale)])


def kernel(t, tol: Tolerances = DEFAULT_TOL, scale: float = 0.0) -> Subspace:
    """Orthonormal frame for the null space of ``t`` (``scale`` as in orthonormal_range)."""
    t = as_matrix(t, "T")
    _, s, vh = np.linalg.svd(t, full_matrices=True)
    r = _rank(s, tol, scale)
    return Subspace(vh[r:].conj().T)


def projector(s: Subspace) -> np.ndarray:
    """Orthogonal projection onto ``s``."""
    f = s.frame
    return f @ f.conj().T


def complement(s: Subspace) -> Subspace:
    """Orthogonal complement of ``s`` in its ambient space."""
    n, k = s.frame.shape
    if k == 0:
        return Subspace.full(n)
    if k == n:
        return Subspace.trivial(n)
    u, _, _ = np.linalg.svd(s.frame, full_matrices=True)
    return Subspace(u[:, k:])


def join(s1: Subspace, s2: Subspace, tol: Tolerances = DEFAULT_TOL) -> Subspace:
    """Closed span of ``s1`` and ``s2``."""
    _check_same_space(s1, s2)
    if s2.dim == 0:
        return s1
    if s1.dim == 0:
        return s2
    return orthonormal_range(np.hstack([s1.frame, s2.frame]), tol)


def intersect(s1: Subspace, s2: Subspace, tol: Tolerances = DEFAULT_TOL) -> Subspace:
    """Intersection of two subspaces.

    Taken as the eigenvalue-1 eigenspace of ``P1 P2 P1`` (eigenvalues at least
    ``1 - tol_rank``). The dimension is cross-checked against the null space of
    ``I - P1 P2``; for a principal angle t both tests reduce to ``sin(t)**2``
    against ``tol_rank``.
    """
    _check_same_space(s1, s2)
    n = s1.ambient_dim
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.trivial(n)
    # Work inside s1: the compression F1* P2 F1 has the same nonzero spectrum as P1 P2 P1.
    g = s1.frame.conj().T @ s2.frame
    m = g @ g.conj().T
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    keep = w >= 1.0 - tol.tol_rank
    result = Subspace(s1.frame @ v[:, keep])

    p1, p2 = projector(s1), projector(s2)
    s = np.linalg.svd(np.eye(n) - p1 @ p2, compute_uv=False)
    null_dim = int(np.count_nonzero(s <= tol.tol_rank))
    if null_dim != result.dim:
        raise ConsistencyError(
            f"intersection dimension {result.dim} (spectral) disagrees with "
            f"{null_dim} (null space of I - P1 P2)"
        )
    return result


def subspace_equal(s1: Subspace, s2: Subspace, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff ``||P_s1 - P_s2|| <= tol_eq``."""
    _check_same_space(s1, s2)
    if s1.dim != s2.dim:
        return False
    return norm_at_most(projector(s1) - projector(s2), tol.tol_eq)


def contains(big: Subspace, small: Subspace, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff ``small`` lies inside ``big`` (``P_big F = F`` within tol_eq)."""
    _check_same_space(big, small)
    if small.dim == 0:
        return True
    resid = small.frame - big.frame @ (big.frame.conj().T @ small.frame)
    return norm_at_most(resid, tol.tol_eq)


# --- JSON -----------------------------------------------------------------


def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    flat = a.reshape(-1)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_json(obj, allow_empty: bool = False) -> np.ndarray:
    if not isinstance(obj, Mapping):
        raise InputError("matrix JSON must be an object")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise InputError(f"matrix JSON is missing {key!r}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
        raise InputError("'rows' and 'cols' must be nonnegative integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise InputError(f"'data' must be a list of rows*cols = {rows * cols} entries")
    try:
        vals = [complex(float(re), float(im)) for re, im in data]
    except (TypeError, ValueError) as exc:
        raise InputError(f"'data' entries must be [re, im] pairs: {exc}") from None
    a = np.array(vals, dtype=np.complex128).reshape(rows, cols)
    return as_matrix(a, allow_empty=allow_empty) if rows else a


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "frame": matrix_to_json(s.frame)}


def subspace_from_json(obj, tol: Tolerances = DEFAULT_TOL) -> Subspace:
    if not isinstance(obj, Mapping) or "ambient_dim" not in obj or "frame" not in obj:
        raise InputError("subspace JSON needs 'ambient_dim' and 'frame'")
    f = matrix_from_json(obj["frame"], allow_empty=True)
    if f.shape[0] != obj["ambient_dim"]:
        raise InputError("frame rows do not match ambient_dim")
    return Subspace(f, tol_orth=tol.tol_orth)
