import csv
import io

import numpy as np
import pytest
from hypothesis import given

from projprod.alternating import (
    c00_decay_check,
    check_limit_identification,
    iterate_product,
    trace_to_csv,
    von_neumann_limit,
)
from projprod.errors import InputError
from projprod.hilbert import DEFAULT_TOL, opnorm
from projprod.products import ProjectionPair
from tests.strategies import pairs


def closed_45(m):
    # T^m = (1/2)^(m-1) T and ||T|| = 1/sqrt 2
    return 0.5 ** (m - 1) / np.sqrt(2)


def test_iterate_product_examples(lines45):
    pair = ProjectionPair(*lines45)
    np.testing.assert_allclose(iterate_product(pair, 1), pair.product)
    np.testing.assert_allclose(iterate_product(pair, 3), np.array([[1, 1], [0, 0]]) / 8, atol=1e-15)
    p = lines45[1]
    np.testing.assert_allclose(iterate_product(ProjectionPair(p, p), 7), p, atol=1e-14)
    np.testing.assert_array_equal(iterate_product(pair, 0), np.eye(2))


def test_iterate_product_rejects_negative(lines45):
    with pytest.raises(InputError):
        iterate_product(ProjectionPair(*lines45), -1)


def test_45_degree_closed_form(lines45):
    trace = von_neumann_limit(ProjectionPair(*lines45), tol_conv=1e-300, max_iter=30)
    assert len(trace.iterates) == 30
    assert not trace.converged
    for rec in trace.iterates:
        assert abs(rec.residual - closed_45(rec.m)) <= 1e-12
        assert abs(rec.cnu_norm - closed_45(rec.m)) <= 1e-12
    # geometric ratio 1/2 = cos^2 of the 45-degree angle
    assert trace.rate == pytest.approx(0.5, rel=1e-9)
    assert not trace.limit.any()


def test_identical_projections_converge_at_once(lines45):
    p = lines45[1]
    trace = von_neumann_limit(ProjectionPair(p, p))
    assert trace.converged and len(trace.iterates) == 1
    assert trace.final_residual <= 1e-15
    np.testing.assert_allclose(trace.limit, p, atol=1e-12)


def test_commuting_diagonals_converge_at_step_one():
    pair = ProjectionPair(np.diag([1.0, 1, 0]), np.diag([0.0, 1, 1]))
    trace = von_neumann_limit(pair)
    assert trace.converged and len(trace.iterates) == 1
    np.testing.assert_allclose(trace.limit, np.diag([0, 1, 0]), atol=1e-12)


def test_exhausted_budget_is_not_an_error(lines45):
    trace = von_neumann_limit(ProjectionPair(*lines45), tol_conv=1e-10, max_iter=5)
    assert not trace.converged and len(trace.iterates) == 5


def test_bad_arguments(lines45):
    pair = ProjectionPair(*lines45)
    with pytest.raises(InputError):
        von_neumann_limit(pair, tol_conv=0)
    with pytest.raises(InputError):
        von_neumann_limit(pair, max_iter=0)


def test_c00_examples(lines45):
    p = lines45[1]
    fwd, adj = c00_decay_check(ProjectionPair(p, p))
    assert len(fwd) == len(adj) == 1 and max(fwd + adj) <= 1e-15
    fwd, adj = c00_decay_check(ProjectionPair(*lines45))
    # (1/2)^(m-1)/sqrt 2 drops below 1e-8 first at m = 28 (1.05e-8 at m = 27)
    assert len(fwd) == 28 <= 29 and fwd[-1] < 1e-8 <= fwd[-2]
    assert fwd == pytest.approx(adj, abs=1e-15)


def test_c00_random_pair_strictly_below_one():
    from projprod.suites import random_pair

    pair = random_pair(np.random.default_rng(8), 8)
    fwd, adj = c00_decay_check(pair)
    assert max(fwd) < 1 and max(adj) < 1
    assert fwd[-1] <= DEFAULT_TOL.tol_eq and adj[-1] <= DEFAULT_TOL.tol_eq


def test_csv_format(lines45):
    trace = von_neumann_limit(ProjectionPair(*lines45), max_iter=3, tol_conv=1e-300)
    text = trace_to_csv(trace)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["m", "residual", "cnu_norm", "cnu_adjoint_norm"]
    assert [r[0] for r in rows[1:]] == ["1", "2", "3"]
    # 17 significant digits survive a round trip exactly
    assert float(rows[1][1]) == trace.iterates[0].residual
    assert rows[1][1] == "0.70710678118654757"


@given(pairs(max_dim=7))
def test_limit_is_intersection_projector(pair):
    trace = von_neumann_limit(pair, max_iter=20000)
    res = [r.residual for r in trace.iterates]
    assert all(b <= a + 10 * DEFAULT_TOL.tol_eq for a, b in zip(res, res[1:]))
    if trace.converged:
        assert trace.final_residual <= 1e-10
        assert check_limit_identification(trace, pair) <= DEFAULT_TOL.tol_eq


@given(pairs(max_dim=7))
def test_power_norms_monotone(pair):
    t = pair.product
    norms = [opnorm(np.linalg.matrix_power(t, m)) for m in range(1, 8)]
    assert all(b <= a + DEFAULT_TOL.tol_eq for a, b in zip(norms, norms[1:]))
