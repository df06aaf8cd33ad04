"""Normalized Gegenbauer polynomials for the unit sphere.

``G(n, k)`` is the degree-k zonal polynomial of S^{n-1}, normalized so
that G_k(1) = 1, defined by the three-term recurrence

    G_0 = 1,  G_1 = t,
    G_k = ((n + 2k - 4) t G_{k-1} - (k - 1) G_{k-2}) / (n + k - 3).

NOTE: ``n`` is the ambient dimension of R^n, i.e. the sphere is S^{n-1}.
An off-by-one in ``n`` silently corrupts every bound built on these
polynomials, so every caller passes the ambient dimension explicitly.

Coefficient vectors are computed once per (n, k) and memoized; evaluation
is Horner-style and exact whenever the argument is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from fewdist.errors import PreconditionError
from fewdist.numbers import Scalar, is_exact_scalar


@lru_cache(maxsize=None)
def coefficients(n: int, k: int) -> tuple[Fraction, ...]:
    """Exact coefficients of G_k for S^{n-1}, lowest degree first."""
    if n < 2:
        raise PreconditionError("ambient dimension must be at least 2")
    if k < 0:
        raise PreconditionError("degree must be nonnegative")
    if k == 0:
        return (Fraction(1),)
    if k == 1:
        return (Fraction(0), Fraction(1))
    prev2 = coefficients(n, k - 2)
    prev1 = coefficients(n, k - 1)
    t_weight = Fraction(n + 2 * k - 4, n + k - 3)
    drop = Fraction(k - 1, n + k - 3)
    out = [Fraction(0)] * (k + 1)
    for i, c in enumerate(prev1):
        out[i + 1] += t_weight * c
    for i, c in enumerate(prev2):
        out[i] -= drop * c
    return tuple(out)


def gegenbauer_eval(n: int, k: int, t: Scalar) -> Scalar:
    """Value of G_k^{(n)}(t); exact Fraction when t is rational."""
    coeffs = coefficients(n, k)
    if is_exact_scalar(t):
        t = Fraction(t)
        acc = Fraction(0)
    else:
        t = float(t)
        acc = 0.0
        coeffs = tuple(float(c) for c in coeffs)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def leading_coefficient(n: int, s: int) -> Fraction:
    """Leading coefficient of G_s^{(n)}: prod_{i=2..s} (n+2i-4)/(n+i-3)."""
    if n < 2:
        raise PreconditionError("ambient dimension must be at least 2")
    if s < 1:
        raise PreconditionError("degree must be at least 1")
    out = Fraction(1)
    for i in range(2, s + 1):
        out *= Fraction(n + 2 * i - 4, n + i - 3)
    return out


@dataclass(frozen=True)
class ZonalCombination:
    """A nonnegative linear combination of Gegenbauer polynomials."""

    dimension: int
    terms: tuple[tuple[int, Scalar], ...]  # (degree, coefficient), degree-sorted

    def __post_init__(self):
        if self.dimension < 2:
            raise PreconditionError("ambient dimension must be at least 2")
        if not self.terms:
            raise PreconditionError("combination needs at least one term")
        seen = set()
        any_nonzero = False
        for degree, coeff in self.terms:
            if degree < 0:
                raise PreconditionError("degrees must be nonnegative")
            if degree in seen:
                raise PreconditionError(f"repeated degree {degree}")
            seen.add(degree)
            if coeff < 0:
                raise PreconditionError("coefficients must be nonnegative")
            any_nonzero = any_nonzero or coeff != 0
        if not any_nonzero:
            raise PreconditionError("combination needs a nonzero coefficient")

    @classmethod
    def from_mapping(cls, dimension: int, coeffs: Mapping[int, Scalar]) -> "ZonalCombination":
        return cls(dimension, tuple(sorted(coeffs.items())))

    @classmethod
    def pure(cls, dimension: int, degree: int) -> "ZonalCombination":
        return cls(dimension, ((degree, Fraction(1)),))

    @property
    def max_degree(self) -> int:
        return self.terms[-1][0]

    def evaluate(self, t: Scalar) -> Scalar:
        return sum(
            coeff * gegenbauer_eval(self.dimension, degree, t)
            for degree, coeff in self.terms
        )


def zonal_combination_eval(combo: ZonalCombination, t: Scalar) -> Scalar:
    return combo.evaluate(t)
