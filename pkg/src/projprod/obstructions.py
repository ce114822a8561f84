"""Numerical checks of two obstructions for products of inner projections.

* Mismatched ranges: no product ``T`` of two inner projections has
  ``closure(ran T) = b1 H^2`` and ``closure(ran T*) = b2 H^2`` when ``b1`` and
  ``b2`` have different zero counts. Checked by a seeded random sweep.
* Kernel divisors: ``ker T`` never lies inside ``phi H^2`` for a nonconstant
  inner ``phi``, and ``ker T`` is not shift invariant unless ``T = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, same_zeros
from .errors import InputError
from .hardy import (
    HardyTruncation,
    InnerPair,
    inner_projection_matrix,
    model_space_frame,
    range_inner_function,
    shift_matrix,
)
from .hilbert import DEFAULT_TOL, Tolerances, kernel, opnorm, projector

__all__ = [
    "DEFAULT_ZERO_POOL",
    "MismatchReport",
    "KernelDivisorReport",
    "mismatched_range_verifier",
    "kernel_inner_divisor_check",
]

DEFAULT_ZERO_POOL = (0j, 0.5 + 0j, -0.5 + 0j, 0.5j, 0.3 + 0.4j, -0.6 + 0j)


@dataclass(frozen=True)
class MismatchReport:
    b1: BlaschkeProduct
    b2: BlaschkeProduct
    trials: int
    truncation: int
    matches: int
    near_misses: list
    consistent: bool

    def to_json(self) -> dict:
        return {
            "b1": self.b1.to_json(),
            "b2": self.b2.to_json(),
            "trials": self.trials,
            "truncation": self.truncation,
            "matches": self.matches,
            "near_misses": self.near_misses,
            "consistent": self.consistent,
        }


def _sample_inner(rng: np.random.Generator, pool) -> BlaschkeProduct:
    count = int(rng.integers(1, 4))
    picks = rng.integers(0, len(pool), size=count)
    return BlaschkeProduct(tuple(pool[i] for i in picks))


def mismatched_range_verifier(
    b1: BlaschkeProduct,
    b2: BlaschkeProduct,
    trials: int,
    trunc: HardyTruncation = HardyTruncation(),
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 0,
    pool=DEFAULT_ZERO_POOL,
) -> MismatchReport:
    """Sample products ``T = P_{phi_a H^2} P_{phi_b H^2}`` and look for ranges ``b1 H^2``, ``b2 H^2``.

    A trial where only one of the two range equalities holds is a near miss.
    A trial where both hold would contradict the obstruction and makes the
    report inconsistent.
    """
    if b1.degree == b2.degree:
        raise InputError(
            f"b1 and b2 must have different zero counts, both have {b1.degree}"
        )
    if trials < 1:
        raise InputError("trials must be at least 1")
    trunc.require(b1, b2)
    children = np.random.SeedSequence(seed).spawn(trials)
    matches = 0
    near = []
    for idx, child in enumerate(children):
        rng = np.random.default_rng(child)
        pair = InnerPair(_sample_inner(rng, pool), _sample_inner(rng, pool), trunc)
        t = inner_projection_matrix(pair.phi1, trunc, tol, validate=False) @ inner_projection_matrix(
            pair.phi2, trunc, tol, validate=False
        )
        phi_t = range_inner_function(t, trunc, tol, verify=False)
        phi_ts = range_inner_function(t.conj().T, trunc, tol, verify=False)
        hit1 = same_zeros(phi_t, b1, trunc.tol_recover)
        hit2 = same_zeros(phi_ts, b2, trunc.tol_recover)
        if hit1 and hit2:
            matches += 1
        if hit1 or hit2:
            near.append(
                {
                    "trial": idx,
                    "phi1": pair.phi1.to_json(),
                    "phi2": pair.phi2.to_json(),
                    "range_matches_b1": hit1,
                    "adjoint_range_matches_b2": hit2,
                }
            )
    return MismatchReport(b1, b2, trials, trunc.order, matches, near, matches == 0)


@dataclass(frozen=True)
class KernelDivisorReport:
    truncation: int
    kernel_dim: int
    outside_norms: list
    shift_defect: float
    lemma_holds: bool
    corollary_holds: bool

    def to_json(self) -> dict:
        return {
            "truncation": self.truncation,
            "kernel_dim": self.kernel_dim,
            "outside_norms": self.outside_norms,
            "shift_defect": self.shift_defect,
            "lemma_holds": self.lemma_holds,
            "corollary_holds": self.corollary_holds,
        }


def kernel_inner_divisor_check(
    pair: InnerPair, candidates, tol: Tolerances = DEFAULT_TOL
) -> KernelDivisorReport:
    """Test ``ker T ⊄ phi H^2`` for each candidate and that ``ker T`` is not shift invariant.

    ``outside_norms[i]`` is ``||P_{Q_phi} F||`` for an orthonormal frame ``F``
    of ``ker T``: the size of the part of the kernel outside ``phi H^2``.
    ``shift_defect`` is ``||(I - P_ker) S P_ker||``.
    """
    candidates = list(candidates)
    for c in candidates:
        if c.degree == 0:
            raise InputError("candidates must be nonconstant inner functions")
    trunc = pair.trunc
    trunc.require(*candidates)
    t = inner_projection_matrix(pair.phi1, trunc, tol) @ inner_projection_matrix(pair.phi2, trunc, tol)
    ker = kernel(t, tol)
    outside = []
    for c in candidates:
        q = model_space_frame(c, trunc).frame
        outside.append(opnorm(q.conj().T @ ker.frame) if ker.dim else 0.0)
    if ker.dim:
        pk = projector(ker)
        defect = opnorm(pk @ shift_matrix(trunc.order) @ pk - shift_matrix(trunc.order) @ pk)
    else:
        defect = 0.0
    t_nonzero = opnorm(t) > tol.tol_eq
    return KernelDivisorReport(
        truncation=trunc.order,
        kernel_dim=ker.dim,
        outside_norms=outside,
        shift_defect=defect,
        lemma_holds=ker.dim > 0 and all(v > tol.tol_eq for v in outside),
        corollary_holds=(not t_nonzero) or defect > tol.tol_eq,
    )
