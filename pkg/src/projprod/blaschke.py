"""Finite Blaschke products and their divisibility lattice.

A product is a unimodular constant times ``prod (z - a) / (1 - conj(a) z)``
over a finite multiset of zeros ``a`` in the open disc. Zeros closer than
``tol_zero`` are treated as one zero of higher multiplicity.
"""

from __future__ import annotations

import cmath
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DomainError, InputError

__all__ = [
    "BlaschkeProduct",
    "DEFAULT_MAX_ZERO_MODULUS",
    "DEFAULT_TOL_ZERO",
    "cluster_points",
    "blaschke_eval",
    "divides",
    "blaschke_lcm",
    "blaschke_gcd",
    "same_zeros",
]

DEFAULT_MAX_ZERO_MODULUS = 0.95
DEFAULT_TOL_ZERO = 1e-8


def _sort_key(z: complex):
    return (round(z.real, 12), round(z.imag, 12))


@dataclass(frozen=True)
class BlaschkeProduct:
    zeros: tuple[complex, ...] = ()
    constant: complex = 1.0 + 0.0j
    max_zero_modulus: float = field(default=DEFAULT_MAX_ZERO_MODULUS, compare=False, repr=False)

    def __post_init__(self):
        zs = tuple(sorted((complex(z) for z in self.zeros), key=_sort_key))
        c = complex(self.constant)
        if not all(cmath.isfinite(z) for z in zs) or not cmath.isfinite(c):
            raise InputError("Blaschke data must be finite")
        if abs(abs(c) - 1.0) > 1e-8:
            raise InputError(f"constant must be unimodular, |c| = {abs(c)!r}")
        for z in zs:
            if abs(z) > self.max_zero_modulus:
                raise DomainError(
                    f"zero {z} has modulus {abs(z):.6g} > max_zero_modulus {self.max_zero_modulus}"
                )
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "constant", c)

    @classmethod
    def monomial(cls, k: int) -> "BlaschkeProduct":
        """``z**k``."""
        return cls((0j,) * k)

    @classmethod
    def factor(cls, alpha: complex) -> "BlaschkeProduct":
        return cls((complex(alpha),))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def max_modulus(self) -> float:
        return max((abs(z) for z in self.zeros), default=0.0)

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        return BlaschkeProduct(
            self.zeros + other.zeros,
            self.constant * other.constant,
            max(self.max_zero_modulus, other.max_zero_modulus),
        )

    def normalized(self) -> "BlaschkeProduct":
        return BlaschkeProduct(self.zeros, 1.0, self.max_zero_modulus)

    def clusters(self, tol_zero: float = DEFAULT_TOL_ZERO) -> list[tuple[complex, int]]:
        """Distinct zeros (cluster means) with multiplicities."""
        return [(c, len(idx)) for c, idx in cluster_points(self.zeros, tol_zero)]

    def __call__(self, z):
        return blaschke_eval(self, z)

    def to_json(self) -> dict:
        return {
            "constant": [self.constant.real, self.constant.imag],
            "zeros": [[z.real, z.imag] for z in self.zeros],
        }

    @classmethod
    def from_json(cls, obj, max_zero_modulus: float = DEFAULT_MAX_ZERO_MODULUS) -> "BlaschkeProduct":
        if not isinstance(obj, Mapping) or "zeros" not in obj:
            raise InputError("Blaschke JSON needs a 'zeros' array")
        try:
            zeros = [complex(float(re), float(im)) for re, im in obj["zeros"]]
            re, im = obj.get("constant", [1.0, 0.0])
            const = complex(float(re), float(im))
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed Blaschke JSON: {exc}") from None
        return cls(tuple(zeros), const, max_zero_modulus)

    def __str__(self):
        if not self.zeros:
            return f"{self.constant:g}"
        parts = ["z" if z == 0 else f"b[{z:g}]" for z in self.zeros]
        return "*".join(parts)


def cluster_points(points: Iterable[complex], tol: float) -> list[tuple[complex, list[int]]]:
    """Single-linkage clusters of points within ``tol``; returns (mean, member indices)."""
    pts = [complex(p) for p in points]
    parent = list(range(len(pts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(pts)):
        groups.setdefault(find(i), []).append(i)
    out = [(complex(np.mean([pts[i] for i in idx])), idx) for idx in groups.values()]
    out.sort(key=lambda t: _sort_key(t[0]))
    return out


def blaschke_eval(b: BlaschkeProduct, z) -> complex:
    """Value of ``b`` at a point of the closed disc."""
    z = complex(z)
    if abs(z) > 1.0 + 1e-12:
        raise DomainError(f"|z| = {abs(z):.6g} lies outside the closed disc")
    val = b.constant
    for a in b.zeros:
        den = 1.0 - a.conjugate() * z
        if den == 0:
            raise DomainError(f"z = {z} is a pole of the factor at {a}")
        val *= (z - a) / den
    return val


def _match(small: tuple[complex, ...], big: tuple[complex, ...], tol: float) -> bool:
    """Can every point of ``small`` be paired with a distinct point of ``big`` within tol?"""
    if len(small) > len(big):
        return False
    if not small:
        return True
    d = np.abs(np.subtract.outer(np.array(small), np.array(big)))
    # any pairing using an edge longer than tol costs more than every admissible one
    cost = np.where(d <= tol, d, 1.0 + len(small) * tol)
    rows, cols = linear_sum_assignment(cost)
    return bool(np.all(d[rows, cols] <= tol))


def divides(b1: BlaschkeProduct, b2: BlaschkeProduct, tol_zero: float = DEFAULT_TOL_ZERO) -> bool:
    """True iff the zero multiset of ``b1`` is contained in that of ``b2``."""
    return _match(b1.zeros, b2.zeros, tol_zero)


def same_zeros(b1: BlaschkeProduct, b2: BlaschkeProduct, tol_zero: float = DEFAULT_TOL_ZERO) -> bool:
    return b1.degree == b2.degree and _match(b1.zeros, b2.zeros, tol_zero)


def _combine(b1, b2, tol_zero, pick):
    zs = b1.zeros + b2.zeros
    out = []
    for center, idx in cluster_points(zs, tol_zero):
        c1 = sum(1 for i in idx if i < b1.degree)
        out.extend([center] * pick(c1, len(idx) - c1))
    return BlaschkeProduct(tuple(out), 1.0, max(b1.max_zero_modulus, b2.max_zero_modulus))


def blaschke_lcm(b1: BlaschkeProduct, b2: BlaschkeProduct, tol_zero: float = DEFAULT_TOL_ZERO) -> BlaschkeProduct:
    """Least common multiple: each zero with the larger of its two multiplicities."""
    return _combine(b1, b2, tol_zero, max)


def blaschke_gcd(b1: BlaschkeProduct, b2: BlaschkeProduct, tol_zero: float = DEFAULT_TOL_ZERO) -> BlaschkeProduct:
    """Greatest common divisor: each zero with the smaller of its two multiplicities."""
    return _combine(b1, b2, tol_zero, min)
