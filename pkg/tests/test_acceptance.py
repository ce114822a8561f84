"""Acceptance criteria 1-11, one test each.

Every test prints a single ``criterion k: PASS|FAIL`` line (visible without
``-s``) and then asserts. Run on its own with

    pytest tests/test_acceptance.py -v
"""

import time

import numpy as np
import pytest

from projprod.alternating import c00_decay_check, trace_to_csv, von_neumann_limit
from projprod.blaschke import BlaschkeProduct, blaschke_lcm, same_zeros
from projprod.hardy import (
    HardyTruncation,
    InnerPair,
    inner_projection_matrix,
    inner_space_frame,
    intersection_dimension,
    model_beurling_intersection,
    model_product_classify,
    model_space_frame,
    product_inner_check,
    product_model_check,
    range_inner_function,
)
from projprod.hilbert import (
    Subspace,
    complement,
    intersect,
    join,
    kernel,
    opnorm,
    orthonormal_range,
    projector,
    subspace_equal,
)
from projprod.products import ProjectionPair, canonical_decomposition, classify, kernel_decomposition
from projprod.suites import (
    VON_NEUMANN_MAX_COSINE,
    RunConfig,
    friedrichs_cosine,
    random_contraction,
    random_pair,
    run_suite,
)

SEED = 0
Z = BlaschkeProduct.monomial(1)
HALF = BlaschkeProduct.factor(0.5)
POOL = [
    Z,
    HALF,
    Z * HALF,
    BlaschkeProduct.monomial(2),
    BlaschkeProduct((0.3 + 0.4j, -0.6)),
    BlaschkeProduct((0j, -0.5, 0.7j)),
]


def streams(count, salt):
    children = np.random.SeedSequence([SEED, salt]).spawn(count)
    return [np.random.default_rng(c) for c in children]


@pytest.fixture
def verdict(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def budget_pairs():
    """500 random pairs in C^10 whose Friedrichs cosine is at most 0.998."""
    pairs, rejected = [], 0
    for rng in streams(500, 4):
        while True:
            pair = random_pair(rng, 10)
            if friedrichs_cosine(pair) <= VON_NEUMANN_MAX_COSINE:
                break
            rejected += 1
        pairs.append(pair)
    return pairs, rejected


def test_criterion_01_crimmins_equivalence(verdict):
    t0 = time.perf_counter()
    worst = np.zeros(3)
    for rng in streams(1000, 1):
        rep = classify(random_pair(rng, 8).product)
        worst = np.maximum(worst, [rep.crimmins_residual, rep.factor_residual, rep.sebestyen_residual])
    elapsed = time.perf_counter() - t0
    ok = bool(worst.max() <= 1e-8 and elapsed <= 10)
    verdict(1, ok, f"max residuals {worst.max():.2e} (<= 1e-8), {elapsed:.2f} s (<= 10 s)")


def test_criterion_02_negative_classification(verdict):
    rejected = total = 0
    cases = [c * np.eye(8) for c in (0.3, 0.5, 0.9)]
    for rng in streams(100, 2):
        t = random_contraction(rng, 8)
        while classify(t).crimmins_residual <= 1e-4:
            t = random_contraction(rng, 8)
        cases.append(t)
    for t in cases:
        total += 1
        rejected += not classify(t).is_product
    verdict(2, rejected == total, f"{rejected}/{total} non-products rejected")


def test_criterion_03_canonical_decomposition(verdict):
    failures, worst_defect = 0, 0.0
    for rng in streams(500, 3):
        pair = random_pair(rng, 10)
        t = pair.product
        hu = kernel(t - np.eye(10), scale=1.0)
        common = intersect(orthonormal_range(pair.p1, scale=1.0), orthonormal_range(pair.p2, scale=1.0))
        hcnu = join(kernel(t, scale=1.0), kernel(t.conj().T, scale=1.0))
        dec = canonical_decomposition(pair)
        u = dec.unitary_block
        defect = opnorm(u.conj().T @ u - np.eye(u.shape[0])) if u.size else 0.0
        worst_defect = max(worst_defect, defect)
        good = subspace_equal(hu, common) and subspace_equal(hcnu, complement(hu)) and defect <= 1e-7
        failures += not good
    verdict(3, failures == 0, f"{500 - failures}/500 trials, worst ||U*U - I|| = {worst_defect:.2e}")


def test_criterion_04_von_neumann_limit(verdict, budget_pairs):
    pair45 = ProjectionPair(np.diag([1.0, 0.0]), 0.5 * np.ones((2, 2)))
    trace = von_neumann_limit(pair45, tol_conv=1e-300, max_iter=30)
    closed = max(abs(r.residual - 0.5 ** (r.m - 1) / np.sqrt(2)) for r in trace.iterates)
    pairs, rejected = budget_pairs
    failures, longest, worst_gap = 0, 0, 0.0
    for pair in pairs:
        tr = von_neumann_limit(pair, tol_conv=1e-10, max_iter=10_000)
        common = intersect(orthonormal_range(pair.p1, scale=1.0), orthonormal_range(pair.p2, scale=1.0))
        gap = opnorm(tr.limit - projector(common))
        worst_gap = max(worst_gap, gap)
        longest = max(longest, len(tr.iterates))
        failures += not (tr.converged and tr.final_residual <= 1e-10 and gap <= 1e-8)
    ok = closed <= 1e-12 and failures == 0
    verdict(
        4, ok,
        f"45-degree error {closed:.1e}; {500 - failures}/500 converged (longest {longest} steps, "
        f"limit gap {worst_gap:.1e}; {rejected} draws above cosine {VON_NEUMANN_MAX_COSINE} resampled)",
    )


def test_criterion_05_c00_decay(verdict, budget_pairs):
    pairs, _ = budget_pairs
    failures, longest = 0, 0
    for pair in pairs:
        try:
            fwd, adj = c00_decay_check(pair, m_max=10_000)
        except Exception:
            failures += 1
            continue
        longest = max(longest, len(fwd), len(adj))
        failures += not (fwd[-1] < 1e-8 or fwd == [0.0]) or not (adj[-1] < 1e-8 or adj == [0.0])
    verdict(5, failures == 0, f"{500 - failures}/500 cnu blocks decayed, slowest after {longest} steps")


def test_criterion_06_kernel_decomposition(verdict):
    failures, worst = 0, 0.0
    for rng in streams(500, 6):
        pair = random_pair(rng, 10)
        first, second = kernel_decomposition(pair)
        overlap = opnorm(first.frame.conj().T @ second.frame) if first.dim and second.dim else 0.0
        worst = max(worst, overlap)
        same = subspace_equal(join(first, second), kernel(pair.product, scale=1.0))
        failures += not (same and overlap <= 1e-8)
    verdict(6, failures == 0, f"{500 - failures}/500 trials, worst overlap {worst:.1e}")


def test_criterion_07_hardy_exactness(verdict):
    tr = HardyTruncation(256)
    family = [Z, BlaschkeProduct.monomial(2), HALF, Z * HALF]
    problems = []
    worst = 0.0
    for b in family:
        p = inner_projection_matrix(b, tr)
        defect = max(opnorm(p - p.conj().T), opnorm(p @ p - p))
        worst = max(worst, defect)
        if defect > 1e-10:
            problems.append(f"{b}: projection defect {defect:.1e}")
        if model_space_frame(b, tr).dim != b.degree:
            problems.append(f"{b}: dim Q_b != {b.degree}")
    gap_worst = 0.0
    for b1 in family:
        for b2 in family:
            cap = intersect(inner_space_frame(b1, tr), inner_space_frame(b2, tr))
            lcm = inner_space_frame(blaschke_lcm(b1, b2), tr)
            gap = opnorm(projector(cap) - projector(lcm)) if cap.dim == lcm.dim else np.inf
            gap_worst = max(gap_worst, gap)
            if gap > 1e-8:
                problems.append(f"{b1} ∩ {b2}: gap {gap:.1e}")
    verdict(7, not problems, f"projection defect {worst:.1e}, intersection vs lcm {gap_worst:.1e} {problems}")


def test_criterion_08_inner_recovery(verdict):
    t0 = time.perf_counter()
    tr, oracle_tr = HardyTruncation(256), HardyTruncation(512)
    problems, worst = [], 0.0
    for phi1 in POOL:
        for phi2 in POOL:
            rep = product_inner_check(InnerPair(phi1, phi2, tr))
            res = max(rep.factor_residual, rep.sebestyen_residual, rep.kernel_residual, rep.lcm_residual)
            worst = max(worst, res)
            t = inner_projection_matrix(phi1, oracle_tr, validate=False) @ inner_projection_matrix(
                phi2, oracle_tr, validate=False
            )
            ref = range_inner_function(t, oracle_tr)
            ref_adj = range_inner_function(t.conj().T, oracle_tr)
            if res > 1e-6 or not rep.ok:
                problems.append(f"({phi1}, {phi2}) residual {res:.1e}")
            if not (same_zeros(rep.phi_T, ref, 1e-4) and same_zeros(rep.phi_T_adjoint, ref_adj, 1e-4)):
                problems.append(f"({phi1}, {phi2}) zeros differ from N = 512")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed <= 60
    verdict(8, ok, f"36 pairs, worst residual {worst:.1e}, {elapsed:.1f} s (<= 60 s) {problems}")


def test_criterion_09_model_recovery(verdict):
    tr = HardyTruncation(256)
    problems, worst = [], 0.0
    empty_ok = 0
    for phi1 in POOL:
        for phi2 in POOL:
            rep = product_model_check(InnerPair(phi1, phi2, tr))
            if not rep.is_model_product:
                problems.append(f"({phi1}, {phi2}): {rep.classification}")
                continue
            worst = max(worst, rep.factor_residual)
            if rep.factor_residual > 1e-6:
                problems.append(f"({phi1}, {phi2}) residual {rep.factor_residual:.1e}")
            # a product of inner projections has a finite-dimensional ker T*,
            # which holds no nonzero invariant subspace: J_T is empty
            t = inner_projection_matrix(phi1, tr, validate=False) @ inner_projection_matrix(phi2, tr, validate=False)
            neg = model_product_classify(t, tr)
            if not neg.is_model_product and "J_T empty" in neg.classification:
                empty_ok += 1
            else:
                problems.append(f"({phi1}, {phi2}) inner product classified as model product")
    ok = not problems and empty_ok == 36
    verdict(9, ok, f"worst model residual {worst:.1e}; {empty_ok}/36 J_T-empty instances classified {problems}")


def test_criterion_10_lemma_exhaustive(verdict):
    tr = HardyTruncation(256)
    zs1 = (0j, 0.5, -0.5j, 0.3 + 0.3j)
    zs2 = (0.5, -0.6, 0.4j, -0.2 - 0.5j)
    wrong = []
    for m1 in range(5):
        for m2 in range(5):
            d = intersection_dimension(BlaschkeProduct(zs1[:m1]), BlaschkeProduct(zs2[:m2]), tr)
            if d != max(0, m1 - m2):
                wrong.append((m1, m2, d))
    cap = model_beurling_intersection(BlaschkeProduct.monomial(2), HALF, tr)
    w = np.zeros((256, 1), dtype=np.complex128)
    w[0], w[1] = -0.5, 1.0
    gap = opnorm(projector(cap) - projector(Subspace.span(w))) if cap.dim == 1 else np.inf
    ok = not wrong and cap.dim == 1 and gap <= 1e-8
    verdict(10, ok, f"25 pairs, mismatches {wrong}; witness dim {cap.dim}, distance to span(z - 1/2) {gap:.1e}")


def test_criterion_11_determinism(verdict):
    configs = {
        "crimmins": RunConfig(seed=11, trials=200, dim=8),
        "decomposition": RunConfig(seed=11, trials=100, dim=10),
        "vonneumann": RunConfig(seed=11, trials=100, dim=10),
        "hardy": RunConfig(seed=11, trials=3),
        "blaschke-lemma": RunConfig(seed=11, trials=4),
    }
    differing = [n for n, cfg in configs.items() if run_suite(n, cfg).dumps() != run_suite(n, cfg).dumps()]
    pair = random_pair(np.random.default_rng(11), 10)
    csv_same = trace_to_csv(von_neumann_limit(pair)) == trace_to_csv(von_neumann_limit(pair))
    ok = not differing and csv_same
    verdict(11, ok, f"5 suites repeated, differing reports {differing}, CSV trace identical {csv_same}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
