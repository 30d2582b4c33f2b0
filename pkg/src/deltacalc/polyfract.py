"""Integer polynomials in the binomial basis.

A polyfract is a finite integer combination of products
C(x_1, n_1) * ... * C(x_N, n_N), stored sparsely as a mapping from the
exponent tuple n to its integer coefficient.  Every integer-valued
polynomial function on Z^N has exactly one such form, and the basis is
the natural home for difference calculus: the standard forward
differences act by shifting exponent tuples down, so degrees, kernels
and reconstructions all become exact bookkeeping.

count() is the largest |n| over the support, the degree in this basis;
the zero polynomial gets NEG_INFINITY so that degree arithmetic stays
monotone under differences.
"""

from __future__ import annotations

import itertools
import math
from functools import cache
from typing import Iterable, Iterator, Mapping

from .group_ring import DimensionMismatchError, IntegerFunction, LatticePoint

ExponentTuple = tuple[int, ...]

NEG_INFINITY = float("-inf")


@cache
def binom(x: int, k: int) -> int:
    """Exact C(x, k) for arbitrary integer x: zero when k < 0, else the
    falling factorial x(x-1)...(x-k+1) over k!."""
    if k < 0:
        return 0
    numerator = 1
    for i in range(k):
        numerator *= x - i
    return numerator // math.factorial(k)


def exponent_tuples(dimension: int, max_norm: int | float) -> Iterator[ExponentTuple]:
    """All tuples n in N^dimension with |n| <= max_norm."""
    if max_norm < 0:
        return
    bound = int(max_norm)
    for exps in itertools.product(range(bound + 1), repeat=dimension):
        if sum(exps) <= bound:
            yield exps


@cache
def _shifted_basis(n: ExponentTuple, a: LatticePoint) -> tuple[tuple[ExponentTuple, int], ...]:
    # C(x + a, n) re-expanded over the basis; the j <= n truncation is
    # exact because C(x, n - j) is not a basis element once any j_l > n_l.
    out = []
    for j in itertools.product(*(range(nl + 1) for nl in n)):
        weight = 1
        for al, jl in zip(a, j):
            weight *= binom(al, jl)
            if not weight:
                break
        if weight:
            out.append((tuple(nl - jl for nl, jl in zip(n, j)), weight))
    return tuple(out)


class Polyfract:
    """A canonical binomial-basis polynomial with integer coefficients."""

    __slots__ = ("dimension", "_coeffs")

    def __init__(
        self,
        dimension: int,
        coeffs: Mapping[ExponentTuple, int] | Iterable[tuple[ExponentTuple, int]] = (),
    ):
        if dimension < 1:
            raise ValueError(f"dimension must be at least 1, got {dimension}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[ExponentTuple, int] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != dimension:
                raise DimensionMismatchError(
                    f"exponent tuple {exps} has dimension {len(exps)}, expected {dimension}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"exponents must be nonnegative, got {exps}")
            total = clean.get(exps, 0) + coeff
            if total:
                clean[exps] = total
            else:
                clean.pop(exps, None)
        self.dimension = dimension
        self._coeffs = clean

    def terms(self) -> list[tuple[ExponentTuple, int]]:
        return sorted(self._coeffs.items())

    def coefficient(self, exps: Iterable[int]) -> int:
        return self._coeffs.get(tuple(exps), 0)

    def to_records(self) -> list[dict]:
        return [{"n": list(n), "b": b} for n, b in self.terms()]

    def eval(self, x: Iterable[int]) -> int:
        x = tuple(x)
        if len(x) != self.dimension:
            raise DimensionMismatchError(
                f"point {x} has dimension {len(x)}, expected {self.dimension}"
            )
        total = 0
        for n, b in self._coeffs.items():
            value = b
            for xl, nl in zip(x, n):
                value *= binom(xl, nl)
                if not value:
                    break
            total += value
        return total

    def count(self) -> int | float:
        """Largest |n| over the support; NEG_INFINITY for the zero polynomial."""
        return max((sum(n) for n in self._coeffs), default=NEG_INFINITY)

    def delta_standard(self, m: Iterable[int]) -> Polyfract:
        """Apply the mixed standard difference with multiplicities ``m``.

        Exponent tuples drop by m componentwise; terms that would go
        negative vanish, so m may exceed the support without harm.
        """
        m = tuple(m)
        if len(m) != self.dimension:
            raise DimensionMismatchError(
                f"multiplicity tuple {m} has dimension {len(m)}, expected {self.dimension}"
            )
        if any(ml < 0 for ml in m):
            raise ValueError(f"multiplicities must be nonnegative, got {m}")
        out = {}
        for n, b in self._coeffs.items():
            shifted = tuple(nl - ml for nl, ml in zip(n, m))
            if all(e >= 0 for e in shifted):
                out[shifted] = b
        return Polyfract(self.dimension, out)

    def shift_by(self, a: Iterable[int]) -> Polyfract:
        """The translate x |-> self(x + a), exactly, in the same basis."""
        a = tuple(a)
        if len(a) != self.dimension:
            raise DimensionMismatchError(
                f"shift vector {a} has dimension {len(a)}, expected {self.dimension}"
            )
        if not any(a):
            return self
        out: dict[ExponentTuple, int] = {}
        for n, b in self._coeffs.items():
            for target, weight in _shifted_basis(n, a):
                out[target] = out.get(target, 0) + b * weight
        return Polyfract(self.dimension, out)

    def delta_direction(self, a: Iterable[int]) -> Polyfract:
        """The forward difference along an arbitrary lattice vector ``a``."""
        return self.shift_by(a) - self

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polyfract)
            and self.dimension == other.dimension
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.dimension, frozenset(self._coeffs.items())))

    def __neg__(self) -> Polyfract:
        return Polyfract(self.dimension, {n: -b for n, b in self._coeffs.items()})

    def __add__(self, other: Polyfract) -> Polyfract:
        if not isinstance(other, Polyfract):
            return NotImplemented
        if self.dimension != other.dimension:
            raise DimensionMismatchError(
                f"cannot combine polynomials of dimension {self.dimension} and {other.dimension}"
            )
        out = dict(self._coeffs)
        for n, b in other._coeffs.items():
            total = out.get(n, 0) + b
            if total:
                out[n] = total
            else:
                out.pop(n, None)
        return Polyfract(self.dimension, out)

    def __sub__(self, other: Polyfract) -> Polyfract:
        if not isinstance(other, Polyfract):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: int) -> Polyfract:
        if not isinstance(other, int):
            return NotImplemented
        return Polyfract(self.dimension, {n: b * other for n, b in self._coeffs.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for n, b in self.terms():
            factors = [f"C(x{l + 1},{nl})" for l, nl in enumerate(n) if nl]
            parts.append("*".join([str(b)] + factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polyfract({self.dimension}, {dict(self.terms())})"


class MonomialPolynomial:
    """An ordinary power-basis polynomial with integer coefficients."""

    __slots__ = ("dimension", "_coeffs")

    def __init__(
        self,
        dimension: int,
        coeffs: Mapping[ExponentTuple, int] | Iterable[tuple[ExponentTuple, int]] = (),
    ):
        if dimension < 1:
            raise ValueError(f"dimension must be at least 1, got {dimension}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[ExponentTuple, int] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != dimension:
                raise DimensionMismatchError(
                    f"exponent tuple {exps} has dimension {len(exps)}, expected {dimension}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"exponents must be nonnegative, got {exps}")
            total = clean.get(exps, 0) + coeff
            if total:
                clean[exps] = total
            else:
                clean.pop(exps, None)
        self.dimension = dimension
        self._coeffs = clean

    def terms(self) -> list[tuple[ExponentTuple, int]]:
        return sorted(self._coeffs.items())

    def to_records(self) -> list[dict]:
        return [{"n": list(n), "c": c} for n, c in self.terms()]

    def eval(self, x: Iterable[int]) -> int:
        x = tuple(x)
        if len(x) != self.dimension:
            raise DimensionMismatchError(
                f"point {x} has dimension {len(x)}, expected {self.dimension}"
            )
        total = 0
        for n, c in self._coeffs.items():
            value = c
            for xl, nl in zip(x, n):
                value *= xl**nl
            total += value
        return total

    def total_degree(self) -> int | float:
        return max((sum(n) for n in self._coeffs), default=NEG_INFINITY)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonomialPolynomial)
            and self.dimension == other.dimension
            and self._coeffs == other._coeffs
        )

    def __repr__(self) -> str:
        return f"MonomialPolynomial({self.dimension}, {dict(self.terms())})"


def from_samples(func: IntegerFunction, degree_bound: int | float) -> Polyfract:
    """Reconstruct the unique polyfract of count <= degree_bound matching
    ``func`` pointwise.

    Coefficients are iterated differences at the origin, so only the
    values of ``func`` on the box [0, degree_bound]^N are touched.  The
    caller vouches that ``func`` really is a polynomial function within
    the bound; nothing here can detect a lie outside the sampled box.
    """
    dimension = func.dimension
    if degree_bound < 0:
        return Polyfract(dimension)
    coeffs = {}
    for n in exponent_tuples(dimension, degree_bound):
        b = _difference_at_origin(func, n)
        if b:
            coeffs[n] = b
    return Polyfract(dimension, coeffs)


def _difference_at_origin(func: IntegerFunction, n: ExponentTuple) -> int:
    norm = sum(n)
    total = 0
    for j in itertools.product(*(range(nl + 1) for nl in n)):
        weight = 1
        for nl, jl in zip(n, j):
            weight *= binom(nl, jl)
        total += (-1) ** (norm - sum(j)) * weight * func(j)
    return total


def from_monomial(poly: MonomialPolynomial) -> Polyfract:
    """Convert a power-basis polynomial to its binomial-basis form."""
    return from_samples(IntegerFunction.from_monomial(poly), poly.total_degree())
