"""von Neumann alternating projections: powers of ``P1 P2`` and their limit.

Convergence is measured in operator norm, which in finite dimension is
equivalent to strong convergence.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConsistencyError, InputError
from .hilbert import DEFAULT_TOL, Tolerances, intersect, opnorm, orthonormal_range, projector
from .products import ProjectionPair, canonical_decomposition, unitary_part

__all__ = [
    "IterationRecord",
    "IterationTrace",
    "iterate_product",
    "von_neumann_limit",
    "c00_decay_check",
    "trace_to_csv",
]

DEFAULT_TOL_CONV = 1e-10
DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True)
class IterationRecord:
    m: int
    residual: float
    cnu_norm: float
    cnu_adjoint_norm: float


@dataclass(frozen=True, eq=False)
class IterationTrace:
    iterates: list[IterationRecord]
    converged: bool
    limit: np.ndarray
    tol_conv: float
    # Fitted ratio r_{m+1}/r_m over the tail of the residual path. Informational
    # only (it tracks cos^2 of the Friedrichs angle); None if fewer than 3 steps.
    rate: float | None = None
    backend: str = field(default=kernels.BACKEND)

    @property
    def final_residual(self) -> float:
        return self.iterates[-1].residual


def iterate_product(pair: ProjectionPair, m: int) -> np.ndarray:
    """``(P1 P2)^m`` by repeated squaring; ``m = 0`` gives the identity."""
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise InputError(f"m must be a nonnegative integer, got {m!r}")
    return np.linalg.matrix_power(pair.product, int(m))


def _fit_rate(res: np.ndarray) -> float | None:
    pos = res[res > 0]
    if pos.size < 3:
        return None
    tail = pos[-min(pos.size, 20):]
    steps = np.arange(tail.size)
    slope = np.polyfit(steps, np.log(tail), 1)[0]
    return float(np.exp(slope))


def von_neumann_limit(
    pair: ProjectionPair,
    tol_conv: float = DEFAULT_TOL_CONV,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: Tolerances = DEFAULT_TOL,
) -> IterationTrace:
    """Iterate ``(P1 P2)^m`` until it is within ``tol_conv`` of ``P_{H_u}``.

    ``H_u = ker(P1 P2 - I)`` is the unitary part. Exhausting ``max_iter`` is
    not an error: the trace comes back with ``converged=False``.
    """
    if not tol_conv > 0:
        raise InputError("tol_conv must be positive")
    if max_iter < 1:
        raise InputError("max_iter must be at least 1")
    limit = projector(unitary_part(pair, tol))
    dec = canonical_decomposition(pair, tol)
    b = dec.cnu_block

    res = kernels.power_norms(pair.product, limit, tol_conv, max_iter)
    steps = res.size
    zero = np.zeros_like(b)
    cnu = kernels.power_norms(b, zero, -1.0, steps)
    cnu_adj = kernels.power_norms(b.conj().T, zero, -1.0, steps)
    if b.shape[0] == 0:
        cnu = cnu_adj = np.zeros(steps)

    records = [
        IterationRecord(m + 1, float(res[m]), float(cnu[m]), float(cnu_adj[m]))
        for m in range(steps)
    ]
    slack = 10 * tol.tol_eq
    if np.any(np.diff(res) > slack):
        raise ConsistencyError("residuals of (P1 P2)^m - P_Hu increased beyond slack")
    return IterationTrace(
        iterates=records,
        converged=bool(res[-1] <= tol_conv),
        limit=limit,
        tol_conv=tol_conv,
        rate=_fit_rate(res),
    )


def check_limit_identification(trace: IterationTrace, pair: ProjectionPair, tol: Tolerances = DEFAULT_TOL) -> float:
    """``||P_Hu - P_{ran P1 ∩ ran P2}||`` for a trace; the two must agree."""
    common = intersect(orthonormal_range(pair.p1, tol, scale=1.0), orthonormal_range(pair.p2, tol, scale=1.0), tol)
    return opnorm(trace.limit - projector(common))


def c00_decay_check(pair: ProjectionPair, m_max: int = DEFAULT_MAX_ITER, tol: Tolerances = DEFAULT_TOL):
    """Norms ``||B^m||`` and ``||(B*)^m||`` of the cnu block ``B``.

    Both sequences run until they fall below ``tol_eq``. Raises
    ConsistencyError if either stays above it through ``m_max``.
    """
    b = canonical_decomposition(pair, tol).cnu_block
    if b.shape[0] == 0:
        return [0.0], [0.0]
    zero = np.zeros_like(b)
    fwd = kernels.power_norms(b, zero, tol.tol_eq, m_max)
    adj = kernels.power_norms(b.conj().T, zero, tol.tol_eq, m_max)
    if fwd[-1] > tol.tol_eq or adj[-1] > tol.tol_eq:
        raise ConsistencyError(
            f"cnu block powers did not decay below {tol.tol_eq:g} within {m_max} steps "
            f"(||B^m|| = {fwd[-1]:.3e}, ||B*^m|| = {adj[-1]:.3e})"
        )
    return [float(x) for x in fwd], [float(x) for x in adj]


def trace_to_csv(trace: IterationTrace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "residual", "cnu_norm", "cnu_adjoint_norm"])
    for r in trace.iterates:
        w.writerow([r.m, f"{r.residual:.17g}", f"{r.cnu_norm:.17g}", f"{r.cnu_adjoint_norm:.17g}"])
    return buf.getvalue()
