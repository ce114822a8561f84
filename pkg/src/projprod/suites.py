"""Seeded property suites and the random generators behind them.

Every trial draws from its own generator, spawned from the root seed by trial
index, so a suite's report depends only on its configuration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .alternating import c00_decay_check, check_limit_identification, von_neumann_limit
from .blaschke import BlaschkeProduct, blaschke_gcd, blaschke_lcm, divides, same_zeros
from .errors import InputError, ProjprodError
from .hardy import (
    HardyTruncation,
    InnerPair,
    inner_projection_matrix,
    inner_space_frame,
    intersection_dimension,
    model_beurling_intersection,
    model_projection_matrix,
    model_space_frame,
    product_inner_check,
    product_model_check,
    range_inner_function,
)
from .hilbert import (
    DEFAULT_TOL,
    Subspace,
    Tolerances,
    complement,
    contains,
    intersect,
    opnorm,
    orthonormal_range,
    projector,
    subspace_equal,
)
from .obstructions import kernel_inner_divisor_check, mismatched_range_verifier
from .products import (
    ProjectionPair,
    canonical_decomposition,
    classify,
    cnu_part,
    kernel_decomposition,
    unitary_part,
)

__all__ = [
    "RunConfig",
    "SuiteReport",
    "SUITES",
    "random_frame",
    "random_projection",
    "random_pair",
    "random_contraction",
    "friedrichs_cosine",
    "run_suite",
]

MAX_LISTED_FAILURES = 20

# Largest Friedrichs cosine admitted by the alternating-projection suite. The
# residual after m steps is c**(2m - 1); with c = 0.998 it is below 1e-17 by
# m = 10**4, while c > 0.99885 cannot reach 1e-10 within that budget at all.
VON_NEUMANN_MAX_COSINE = 0.998

NEGATIVE_SCALARS = (0.3, 0.5, 0.9)

# Zeros for random Blaschke products in the Hardy suite (moduli <= 0.8).
HARDY_ZERO_POOL = (0j, 0.5 + 0j, -0.5 + 0j, 0.5j, 0.3 + 0.4j, -0.6 + 0j, 0.2 - 0.7j, -0.4 - 0.4j)

# Zero lists for the exhaustive sweep over zero counts m1, m2 <= 4.
LEMMA_ZEROS_1 = (0j, 0.5 + 0j, -0.5j, 0.3 + 0.3j)
LEMMA_ZEROS_2 = (0.5 + 0j, -0.6 + 0j, 0.4j, -0.2 - 0.5j)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int | None = None
    dim: int | None = None
    truncation: int = 256
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            raise InputError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.trials is not None and self.trials < 1:
            raise InputError("trials must be at least 1")
        if self.dim is not None and self.dim < 1:
            raise InputError("dim must be at least 1")
        if self.truncation < 2:
            raise InputError("truncation must be at least 2")


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    trials: int
    passed: int
    failed: int
    worst: dict
    failures: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "ok": self.ok,
            "worst": self.worst,
            "failures": self.failures,
            "extra": self.extra,
            "backend": kernels.BACKEND,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


class _Tally:
    """Pass/fail bookkeeping shared by the suites."""

    def __init__(self):
        self.passed = 0
        self.failed = 0
        self.worst: dict[str, float] = {}
        self.failures: list = []

    def note(self, key: str, value: float, larger_is_worse: bool = True):
        value = float(value)
        old = self.worst.get(key)
        if old is None or (value > old if larger_is_worse else value < old):
            self.worst[key] = value

    def record(self, label, problems: list[str]):
        if problems:
            self.failed += 1
            if len(self.failures) < MAX_LISTED_FAILURES:
                self.failures.append({"trial": label, "problems": problems})
        else:
            self.passed += 1

    def report(self, suite, cfg, trials, extra=None) -> SuiteReport:
        return SuiteReport(
            suite, int(cfg.seed), trials, self.passed, self.failed,
            dict(sorted(self.worst.items())), self.failures, extra or {},
        )


def _streams(seed: int, count: int):
    return [np.random.default_rng(c) for c in np.random.SeedSequence(seed).spawn(count)]


# --- generators --------------------------------------------------------------


def random_frame(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """Haar-distributed orthonormal ``n x k`` frame."""
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    q, r = np.linalg.qr(g)
    # fix the phases so the distribution is exactly Haar
    d = np.diagonal(r)
    return q * (d / np.where(np.abs(d) > 0, np.abs(d), 1.0))


def random_projection(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    if rank is None:
        rank = int(rng.integers(0, n + 1))
    f = random_frame(rng, n, rank)
    return f @ f.conj().T


def random_pair(rng: np.random.Generator, n: int, max_shared: int = 2) -> ProjectionPair:
    """Two random projections whose ranges share a random subspace of dimension <= max_shared.

    Outside the shared part both ranges are Haar subspaces of random rank, so
    further intersection appears whenever the ranks force it.
    """
    k = int(rng.integers(0, min(max_shared, n) + 1))
    r1 = int(rng.integers(k, n + 1))
    r2 = int(rng.integers(k, n + 1))
    basis = random_frame(rng, n, n)
    shared, rest = basis[:, :k], basis[:, k:]
    f1 = np.hstack([shared, rest @ random_frame(rng, n - k, r1 - k)])
    f2 = np.hstack([shared, rest @ random_frame(rng, n - k, r2 - k)])
    p1, p2 = f1 @ f1.conj().T, f2 @ f2.conj().T
    # exact symmetrization of a matrix that is Hermitian up to rounding
    return ProjectionPair((p1 + p1.conj().T) / 2, (p2 + p2.conj().T) / 2)


def random_contraction(rng: np.random.Generator, n: int) -> np.ndarray:
    """Complex Gaussian matrix scaled to a norm drawn from [0.2, 0.95]."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g * (rng.uniform(0.2, 0.95) / opnorm(g))


def friedrichs_cosine(pair: ProjectionPair, tol: Tolerances = DEFAULT_TOL) -> float:
    """Norm of ``P1 P2`` on the completely non-unitary part."""
    b = canonical_decomposition(pair, tol).cnu_block
    return opnorm(b) if b.size else 0.0


# --- suites --------------------------------------------------------------------


def _guard(problems: list[str], fn, *args):
    try:
        return fn(*args)
    except ProjprodError as exc:
        problems.append(f"{type(exc).__name__}: {exc}")
        return None


def _crimmins(cfg: RunConfig) -> SuiteReport:
    trials = cfg.trials or 1000
    n = cfg.dim or 8
    tol = cfg.tol
    negatives = 100
    tally = _Tally()
    streams = _streams(cfg.seed, trials + negatives)
    for i in range(trials):
        pair = random_pair(streams[i], n)
        t = pair.product
        rep = classify(t, tol)
        adj = classify(t.conj().T, tol)
        for key in ("crimmins_residual", "factor_residual", "sebestyen_residual", "sebestyen_adjoint_residual"):
            tally.note(key, getattr(rep, key))
        tally.note("norm", rep.norm)
        problems = []
        if not rep.is_product:
            problems.append("product of projections rejected")
        if not adj.is_product:
            problems.append("adjoint rejected")
        if not rep.is_contraction:
            problems.append(f"norm {rep.norm!r} exceeds 1")
        if not rep.consistent:
            problems.append("criteria disagree")
        tally.record(i, problems)

    threshold = max(1e-4, 10 * tol.tol_eq)
    for c in NEGATIVE_SCALARS:
        rep = classify(c * np.eye(n), tol)
        tally.note("negative_min_crimmins", rep.crimmins_residual, larger_is_worse=False)
        tally.record(f"scalar {c}", ["c*I accepted"] if rep.is_product else [])
    for j in range(negatives):
        rng = streams[trials + j]
        t = random_contraction(rng, n)
        while classify(t, tol).crimmins_residual <= threshold:
            t = random_contraction(rng, n)
        rep = classify(t, tol)
        tally.note("negative_min_crimmins", rep.crimmins_residual, larger_is_worse=False)
        tally.record(f"contraction {j}", ["random contraction accepted"] if rep.is_product else [])
    return tally.report("crimmins", cfg, trials, {"dim": n, "negatives": negatives + len(NEGATIVE_SCALARS)})


def _decomposition(cfg: RunConfig) -> SuiteReport:
    trials = cfg.trials or 500
    n = cfg.dim or 10
    tol = cfg.tol
    tally = _Tally()
    for i, rng in enumerate(_streams(cfg.seed, trials)):
        pair = random_pair(rng, n)
        t = pair.product
        problems: list[str] = []
        hu = _guard(problems, unitary_part, pair, tol)
        common = intersect(orthonormal_range(pair.p1, tol, 1.0), orthonormal_range(pair.p2, tol, 1.0), tol)
        if hu is not None:
            if not subspace_equal(hu, common, tol):
                problems.append("ker(T - I) differs from ran P1 ∩ ran P2")
            hcnu = _guard(problems, cnu_part, t, tol)
            if hcnu is not None and not subspace_equal(hcnu, complement(hu), tol):
                problems.append("ker T ⋁ ker T* differs from the complement of H_u")
            dec = _guard(problems, canonical_decomposition, pair, tol)
            if dec is not None:
                tally.note("unitarity_defect", dec.unitarity_defect)
                tally.note("off_diagonal", dec.off_diagonal_norm)
                b = dec.cnu_block
                if b.size:
                    closure = opnorm(b @ b.conj().T @ b - b @ b)
                    tally.note("cnu_restriction_crimmins", closure)
                    if closure > tol.tol_eq:
                        problems.append(f"cnu block fails the product test ({closure:.3e})")
            # the isometric set {f : ||T f|| = ||f||}
            if hu.dim:
                stretch = np.abs(np.linalg.norm(t @ hu.frame, axis=0) - 1.0).max()
                tally.note("isometry_defect_on_Hu", stretch)
                if stretch > tol.tol_eq:
                    problems.append("T is not isometric on H_u")
            if hu.dim < n:
                f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                f /= np.linalg.norm(f)
                ratio = np.linalg.norm(t @ f)
                tally.note("max_norm_off_Hu", ratio)
                if not ratio < 1.0:
                    problems.append("a vector with a cnu component keeps its norm")
        parts = _guard(problems, kernel_decomposition, pair, tol)
        if parts is not None:
            first, second = parts
            if first.dim and second.dim:
                tally.note("kernel_summand_overlap", opnorm(first.frame.conj().T @ second.frame))
        tally.record(i, problems)
    return tally.report("decomposition", cfg, trials, {"dim": n})


def _closed_form_45() -> float:
    """Largest deviation of the 45-degree trace from (1/2)**(m-1)/sqrt(2), m <= 30."""
    pair = ProjectionPair(np.diag([1.0, 0.0]), 0.5 * np.ones((2, 2)))
    trace = von_neumann_limit(pair, tol_conv=1e-300, max_iter=30)
    return max(abs(r.residual - 0.5 ** (r.m - 1) / np.sqrt(2)) for r in trace.iterates)


def _vonneumann(cfg: RunConfig) -> SuiteReport:
    trials = cfg.trials or 500
    n = cfg.dim or 10
    tol = cfg.tol
    tally = _Tally()
    closed = _closed_form_45()
    tally.note("closed_form_45_error", closed)
    tally.record("45-degree lines", [] if closed <= 1e-12 else [f"closed form off by {closed:.3e}"])
    rejected = 0
    longest = 0
    for i, rng in enumerate(_streams(cfg.seed, trials)):
        problems: list[str] = []
        while True:
            pair = random_pair(rng, n)
            if friedrichs_cosine(pair, tol) <= VON_NEUMANN_MAX_COSINE:
                break
            rejected += 1
        trace = _guard(problems, von_neumann_limit, pair, 1e-10, 10_000, tol)
        if trace is not None:
            longest = max(longest, len(trace.iterates))
            tally.note("final_residual", trace.final_residual)
            if not trace.converged:
                problems.append(f"no convergence in 10^4 steps ({trace.final_residual:.3e})")
            gap = check_limit_identification(trace, pair, tol)
            tally.note("limit_vs_intersection", gap)
            if gap > tol.tol_eq:
                problems.append(f"limit differs from the intersection projector by {gap:.3e}")
        decay = _guard(problems, c00_decay_check, pair, 10_000, tol)
        if decay is not None:
            fwd, adj = decay
            tally.note("c00_steps", max(len(fwd), len(adj)))
        tally.record(i, problems)
    return tally.report(
        "vonneumann", cfg, trials,
        {"dim": n, "rejected_draws": rejected, "max_cosine": VON_NEUMANN_MAX_COSINE, "longest_trace": longest},
    )


def _random_blaschke(rng, max_zeros=3) -> BlaschkeProduct:
    count = int(rng.integers(1, max_zeros + 1))
    picks = rng.integers(0, len(HARDY_ZERO_POOL), size=count)
    return BlaschkeProduct(tuple(HARDY_ZERO_POOL[k] for k in picks))


def _hardy(cfg: RunConfig) -> SuiteReport:
    trials = cfg.trials or 10
    tol = cfg.tol
    trunc = HardyTruncation(cfg.truncation)
    tally = _Tally()
    z = BlaschkeProduct.monomial(1)
    half = BlaschkeProduct.factor(0.5)
    fixed = [z, BlaschkeProduct.monomial(2), half, z * half]
    for b in fixed:
        problems: list[str] = []
        trunc.require(b)
        p = inner_projection_matrix(b, trunc, tol)
        herm, idem = opnorm(p - p.conj().T), opnorm(p @ p - p)
        comp = opnorm(p + model_projection_matrix(b, trunc) - np.eye(trunc.order))
        tally.note("inner_projection_defect", max(herm, idem))
        tally.note("inner_model_complementarity", comp)
        if max(herm, idem) > 1e-10:
            problems.append("inner projection is not a projection to 1e-10")
        if comp > tol.tol_eq:
            problems.append("inner and model projections do not sum to I")
        if model_space_frame(b, trunc).dim != b.degree:
            problems.append("dim Q_b differs from the zero count")
        back = _guard(problems, range_inner_function, p, trunc, tol)
        if back is not None and not same_zeros(back, b, trunc.tol_recover):
            problems.append(f"zeros recovered as {back}")
        tally.record(str(b), problems)
    for b1 in fixed:
        for b2 in fixed:
            cap = intersect(inner_space_frame(b1, trunc), inner_space_frame(b2, trunc), tol)
            lcm = inner_space_frame(blaschke_lcm(b1, b2, trunc.tol_zero), trunc)
            gap = opnorm(projector(cap) - projector(lcm)) if cap.dim == lcm.dim else 1.0
            tally.note("intersection_vs_lcm", gap)
            tally.record(f"{b1} ∩ {b2}", [] if gap <= tol.tol_eq else [f"gap {gap:.3e}"])

    for i, rng in enumerate(_streams(cfg.seed, trials)):
        problems = []
        phi1, phi2 = _random_blaschke(rng), _random_blaschke(rng)
        try:
            pair = InnerPair(phi1, phi2, trunc)
        except ProjprodError as exc:
            tally.record(i, [f"{type(exc).__name__}: {exc}"])
            continue
        inner = _guard(problems, product_inner_check, pair, tol)
        if inner is not None:
            for key in ("factor_residual", "sebestyen_residual", "kernel_residual", "lcm_residual"):
                tally.note(f"inner_{key}", getattr(inner, key))
            if not inner.ok:
                problems.append(inner.diagnostic or "inner check failed")
        model = _guard(problems, product_model_check, pair, tol)
        if model is not None:
            if not model.is_model_product:
                problems.append(model.classification)
            else:
                tally.note("model_factor_residual", model.factor_residual)
        # divisibility, containment and the lattice laws
        q1, q2 = model_space_frame(phi1, trunc), model_space_frame(phi2, trunc)
        if divides(phi1, phi2, trunc.tol_zero) != contains(q2, q1, tol):
            problems.append("divisibility and model-space containment disagree")
        lcm, gcd = blaschke_lcm(phi1, phi2, trunc.tol_zero), blaschke_gcd(phi1, phi2, trunc.tol_zero)
        if not (divides(phi1, lcm) and divides(phi2, lcm) and divides(gcd, phi1) and divides(gcd, phi2)):
            problems.append("lcm/gcd divisibility laws fail")
        if lcm.degree + gcd.degree != phi1.degree + phi2.degree:
            problems.append("zero counts of lcm and gcd do not add up")
        tally.record(i, problems)
    return tally.report("hardy", cfg, trials, {"truncation": trunc.order})


def _witness_gap(trunc: HardyTruncation, tol: Tolerances):
    """(dimension, distance) of Q_{z^2} ∩ b_{1/2} H^2 from span{z - 1/2}."""
    cap = model_beurling_intersection(
        BlaschkeProduct.monomial(2), BlaschkeProduct.factor(0.5), trunc, tol
    )
    target = np.zeros(trunc.order, dtype=np.complex128)
    target[0], target[1] = -0.5, 1.0
    line = Subspace.span(target.reshape(-1, 1), tol)
    gap = opnorm(projector(cap) - projector(line)) if cap.dim == 1 else 1.0
    return cap.dim, gap


def _blaschke_lemma(cfg: RunConfig) -> SuiteReport:
    trials = cfg.trials or 20
    tol = cfg.tol
    trunc = HardyTruncation(cfg.truncation)
    tally = _Tally()
    for m1 in range(5):
        for m2 in range(5):
            b1 = BlaschkeProduct(LEMMA_ZEROS_1[:m1])
            b2 = BlaschkeProduct(LEMMA_ZEROS_2[:m2])
            problems: list[str] = []
            d = _guard(problems, intersection_dimension, b1, b2, trunc, tol)
            if d is not None and d != max(0, m1 - m2):
                problems.append(f"dimension {d}, expected {max(0, m1 - m2)}")
            tally.record(f"({m1}, {m2})", problems)

    dim, gap = _witness_gap(trunc, tol)
    tally.note("witness_gap", gap)
    tally.record("witness (2, 1)", [] if dim == 1 and gap <= tol.tol_eq else [f"dim {dim}, gap {gap:.3e}"])

    z = BlaschkeProduct.monomial(1)
    half = BlaschkeProduct.factor(0.5)
    for b1, b2 in ((z, BlaschkeProduct.monomial(2)), (z * half, z)):
        rep = mismatched_range_verifier(b1, b2, trials, trunc, tol, seed=cfg.seed)
        tally.note("mismatch_matches", rep.matches)
        tally.record(f"mismatch {b1} / {b2}", [] if rep.consistent else [f"{rep.matches} matches"])

    for phi1, phi2, cands in ((z, half, [z]), (z, z, [z, half]), (half, z * half, [z, half, z * half])):
        rep = kernel_inner_divisor_check(InnerPair(phi1, phi2, trunc), cands, tol)
        tally.note("min_outside_norm", min(rep.outside_norms), larger_is_worse=False)
        tally.note("min_shift_defect", rep.shift_defect, larger_is_worse=False)
        problems = []
        if not rep.lemma_holds:
            problems.append("ker T fits inside a Beurling subspace")
        if not rep.corollary_holds:
            problems.append("ker T is shift invariant")
        tally.record(f"kernel {phi1} / {phi2}", problems)
    return tally.report("blaschke-lemma", cfg, trials, {"truncation": trunc.order})


SUITES = {
    "crimmins": _crimmins,
    "decomposition": _decomposition,
    "vonneumann": _vonneumann,
    "hardy": _hardy,
    "blaschke-lemma": _blaschke_lemma,
}


def run_suite(name: str, cfg: RunConfig = RunConfig()) -> SuiteReport:
    """Run a suite by name; unknown names raise InputError."""
    try:
        fn = SUITES[name]
    except KeyError:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(cfg)
