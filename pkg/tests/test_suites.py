import numpy as np
import pytest

from projprod.errors import InputError
from projprod.suites import (
    SUITES,
    RunConfig,
    friedrichs_cosine,
    random_frame,
    random_pair,
    run_suite,
)


def test_random_frame_is_orthonormal():
    f = random_frame(np.random.default_rng(0), 7, 4)
    np.testing.assert_allclose(f.conj().T @ f, np.eye(4), atol=1e-14)


def test_random_pair_shares_subspace_when_asked():
    dims = set()
    for s in range(40):
        pair = random_pair(np.random.default_rng(s), 6)
        t = pair.product
        dims.add(int(np.sum(np.abs(np.linalg.eigvals(t) - 1) < 1e-8)))
    assert 0 in dims and max(dims) >= 1


def test_friedrichs_cosine_45(lines45):
    from projprod.products import ProjectionPair

    assert friedrichs_cosine(ProjectionPair(*lines45)) == pytest.approx(2 ** -0.5)


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig(seed=-1)
    with pytest.raises(InputError):
        RunConfig(trials=0)
    with pytest.raises(InputError):
        RunConfig(dim=0)
    with pytest.raises(InputError):
        RunConfig(truncation=1)


def test_unknown_suite():
    with pytest.raises(InputError):
        run_suite("foo")


@pytest.mark.parametrize("name", ["crimmins", "decomposition", "vonneumann"])
def test_small_matrix_suites_pass_and_repeat(name):
    cfg = RunConfig(seed=7, trials=25, dim=6)
    first = run_suite(name, cfg)
    assert first.ok, first.failures
    assert run_suite(name, cfg).dumps() == first.dumps()


def test_different_seeds_differ():
    a = run_suite("crimmins", RunConfig(seed=1, trials=5, dim=5)).dumps()
    b = run_suite("crimmins", RunConfig(seed=2, trials=5, dim=5)).dumps()
    assert a != b


def test_hardy_suites_small():
    cfg = RunConfig(seed=3, trials=2, truncation=128)
    for name in ("hardy", "blaschke-lemma"):
        rep = run_suite(name, cfg)
        assert rep.ok, rep.failures


def test_registry():
    assert sorted(SUITES) == sorted(["crimmins", "decomposition", "vonneumann", "hardy", "blaschke-lemma"])
