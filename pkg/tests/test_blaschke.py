import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from projprod.blaschke import (
    BlaschkeProduct,
    blaschke_eval,
    blaschke_gcd,
    blaschke_lcm,
    cluster_points,
    divides,
    same_zeros,
)
from projprod.errors import DomainError, InputError

Z = BlaschkeProduct.monomial(1)
Z2 = BlaschkeProduct.monomial(2)
HALF = BlaschkeProduct.factor(0.5)
THIRD = BlaschkeProduct.factor(1 / 3)

grid = st.sampled_from([0j, 0.5, -0.5, 0.5j, 0.3 + 0.4j, -0.6, 0.2 - 0.7j])
products = st.lists(grid, max_size=4).map(lambda zs: BlaschkeProduct(tuple(zs)))


def test_eval_examples():
    assert blaschke_eval(Z, 0.3) == pytest.approx(0.3)
    assert blaschke_eval(HALF, 0) == pytest.approx(-0.5)
    v = blaschke_eval(HALF, 1)
    assert v == pytest.approx(1) and abs(v) == pytest.approx(1)


def test_eval_outside_disc():
    with pytest.raises(DomainError):
        blaschke_eval(HALF, 1.5)


@given(products, st.floats(0, 2 * cmath.pi))
def test_unimodular_on_circle(b, theta):
    assert abs(b(cmath.exp(1j * theta))) == pytest.approx(1.0, abs=1e-12)


def test_validation():
    with pytest.raises(DomainError):
        BlaschkeProduct((0.97,))
    assert BlaschkeProduct((0.97,), max_zero_modulus=0.99).degree == 1
    with pytest.raises(InputError):
        BlaschkeProduct((), constant=2.0)
    with pytest.raises(InputError):
        BlaschkeProduct((complex("nan"),))


def test_divides_examples():
    assert divides(Z, Z * HALF)
    assert not divides(HALF, Z2)
    assert not divides(Z2, Z)


def test_lcm_gcd_examples():
    assert same_zeros(blaschke_lcm(Z, HALF), Z * HALF)
    assert blaschke_gcd(Z, HALF).degree == 0
    assert same_zeros(blaschke_lcm(Z2, Z), Z2)
    assert same_zeros(blaschke_gcd(Z2, Z), Z)
    assert same_zeros(blaschke_lcm(Z * HALF, Z * THIRD), Z * HALF * THIRD)
    assert same_zeros(blaschke_gcd(Z * HALF, Z * THIRD), Z)


def test_near_zeros_merge():
    a = BlaschkeProduct((0.5, 0.5 + 1e-10))
    assert a.clusters() == [(pytest.approx(0.5), 2)]
    assert divides(BlaschkeProduct((0.5 + 5e-9,)), a)
    assert not divides(BlaschkeProduct((0.5 + 1e-6,)), a)


def test_cluster_points_is_transitive():
    groups = cluster_points([0, 0.6e-8, 1.2e-8, 1.0], 1e-8)
    assert sorted(len(idx) for _, idx in groups) == [1, 3]


@given(products, products)
def test_lattice_laws(b1, b2):
    lcm, gcd = blaschke_lcm(b1, b2), blaschke_gcd(b1, b2)
    assert divides(b1, lcm) and divides(b2, lcm)
    assert divides(gcd, b1) and divides(gcd, b2)
    assert lcm.degree + gcd.degree == b1.degree + b2.degree
    assert same_zeros(lcm * gcd, b1 * b2)
    assert divides(b1, b2) == same_zeros(lcm, b2)


@given(products)
def test_json_round_trip(b):
    assert BlaschkeProduct.from_json(b.to_json()) == b


def test_json_errors():
    with pytest.raises(InputError):
        BlaschkeProduct.from_json({"constant": [1, 0]})
    with pytest.raises(InputError):
        BlaschkeProduct.from_json({"zeros": [["x", 0]]})
    with pytest.raises(DomainError):
        BlaschkeProduct.from_json({"zeros": [[0.99, 0]]})
