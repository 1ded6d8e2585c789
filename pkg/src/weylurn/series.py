"""Truncated generating series in x, y and the step variable.

A LambdaSeries collects the coefficient polynomials B_0..B_N of operator
powers as the exponential series sum B_n t^n / n!.  A TriSeries is the
corresponding three-variable object after multiplying by e^(xy): its
(k, l, n) coefficient is (number of n-step histories l -> k) / (l! n!).
All coefficients are exact rationals; a TriSeries knows the box of
indices on which it is exact, and operations propagate that box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .poly import BiPoly, apply_shifted, as_fraction, bn_sequence

__all__ = [
    "LambdaSeries",
    "TriSeries",
    "b_series",
    "driven_oscillator_closed_form",
    "g_series",
    "pde_residual",
]

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LambdaSeries:
    """Series sum_n terms[n] * t^n / n!, truncated at order len(terms) - 1."""

    terms: tuple[BiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("a series needs at least its constant term")

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def is_zero(self) -> bool:
        return not any(self.terms)


def b_series(h, order: int) -> LambdaSeries:
    """Exponential series of the power coefficient polynomials of h.

    Term n is B_n, so the series evaluated at the operator arguments is
    the normal form of e^(tH) truncated at t^order.
    """
    return LambdaSeries(tuple(bn_sequence(h, order)))


def pde_residual(h, s: LambdaSeries) -> LambdaSeries:
    """Residual d/dt s - H(x, d/dx + y) s, truncated to order s.order - 1.

    Identically zero exactly when s satisfies the defining evolution
    equation of the power series (term-wise: B_{n+1} = H(X, D+y) B_n).
    """
    if s.order < 1:
        raise ValueError("series order must be at least 1 to form a residual")
    return LambdaSeries(
        tuple(s.terms[i + 1] - apply_shifted(h, s.terms[i]) for i in range(s.order))
    )


class TriSeries:
    """Sparse exact series slice in x, y and the step variable t.

    Stored coefficients (i, j, n) -> Fraction are exact on the box
    0 <= i <= dx, 0 <= j <= dy, 0 <= n <= n_max.  Because exponents only
    add, sums and products of exact slices stay exact on the intersected
    box; anything outside is dropped.
    """

    __slots__ = ("dx", "dy", "n_max", "coeffs")

    def __init__(self, dx: int, dy: int, n_max: int, coeffs=None):
        if dx < 0 or dy < 0 or n_max < 0:
            raise ValueError("bounds must be nonnegative")
        self.dx, self.dy, self.n_max = int(dx), int(dy), int(n_max)
        acc: dict[tuple[int, int, int], Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for (i, j, n), value in items:
                if i < 0 or j < 0 or n < 0:
                    raise ValueError(f"negative index in key ({i}, {j}, {n})")
                if i > self.dx or j > self.dy or n > self.n_max:
                    continue  # outside the exact box: truncated away
                key = (int(i), int(j), int(n))
                acc[key] = acc.get(key, _ZERO) + as_fraction(value)
        self.coeffs = {key: c for key, c in acc.items() if c}

    @classmethod
    def _raw(cls, dx, dy, n_max, coeffs) -> TriSeries:
        out = cls.__new__(cls)
        out.dx, out.dy, out.n_max = dx, dy, n_max
        out.coeffs = coeffs
        return out

    @property
    def bounds(self) -> tuple[int, int, int]:
        return (self.dx, self.dy, self.n_max)

    def __getitem__(self, key) -> Fraction:
        i, j, n = key
        return self.coeffs.get((i, j, n), _ZERO)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TriSeries):
            return self.bounds == other.bounds and self.coeffs == other.coeffs
        return NotImplemented

    def __add__(self, other: TriSeries) -> TriSeries:
        dx, dy, n_max = (min(a, b) for a, b in zip(self.bounds, other.bounds))
        out: dict[tuple[int, int, int], Fraction] = {}
        for src in (self.coeffs, other.coeffs):
            for (i, j, n), c in src.items():
                if i <= dx and j <= dy and n <= n_max:
                    key = (i, j, n)
                    s = out.get(key, _ZERO) + c
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return TriSeries._raw(dx, dy, n_max, out)

    def __mul__(self, other) -> TriSeries:
        if isinstance(other, TriSeries):
            dx, dy, n_max = (min(a, b) for a, b in zip(self.bounds, other.bounds))
            out: dict[tuple[int, int, int], Fraction] = {}
            for (i1, j1, n1), c1 in self.coeffs.items():
                if i1 > dx or j1 > dy or n1 > n_max:
                    continue
                for (i2, j2, n2), c2 in other.coeffs.items():
                    i, j, n = i1 + i2, j1 + j2, n1 + n2
                    if i > dx or j > dy or n > n_max:
                        continue
                    key = (i, j, n)
                    s = out.get(key, _ZERO) + c1 * c2
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
            return TriSeries._raw(dx, dy, n_max, out)
        c = as_fraction(other)
        if not c:
            return TriSeries._raw(self.dx, self.dy, self.n_max, {})
        return TriSeries._raw(
            self.dx, self.dy, self.n_max, {key: c * v for key, v in self.coeffs.items()}
        )

    __rmul__ = __mul__

    def restricted(self, dx: int, dy: int, n_max: int) -> TriSeries:
        """The same series on a smaller exact box."""
        dx, dy, n_max = min(dx, self.dx), min(dy, self.dy), min(n_max, self.n_max)
        return TriSeries._raw(
            dx,
            dy,
            n_max,
            {
                (i, j, n): c
                for (i, j, n), c in self.coeffs.items()
                if i <= dx and j <= dy and n <= n_max
            },
        )

    def first_mismatch(self, other: TriSeries):
        """Smallest index (ordered by step, then y, then x power) where the
        two slices differ, as ((i, j, n), self_value, other_value); None if
        they agree.  Both slices must cover the same box."""
        if self.bounds != other.bounds:
            raise ValueError(f"boxes differ: {self.bounds} vs {other.bounds}")
        diffs = [key for key in set(self.coeffs) | set(other.coeffs) if self[key] != other[key]]
        if not diffs:
            return None
        key = min(diffs, key=lambda k: (k[2], k[1], k[0]))
        return key, self[key], other[key]

    def __repr__(self) -> str:
        return f"TriSeries(dx={self.dx}, dy={self.dy}, n_max={self.n_max}, {len(self.coeffs)} coeffs)"


def _exp_xy(dx: int, dy: int, n_max: int) -> TriSeries:
    # e^(xy): the m-th term is x^m y^m / m!
    return TriSeries._raw(
        dx, dy, n_max, {(m, m, 0): Fraction(1, factorial(m)) for m in range(min(dx, dy) + 1)}
    )


def _exp_scalar_lambda(c: Fraction, dx: int, dy: int, n_max: int) -> TriSeries:
    # e^(c t) as a pure series in the step variable
    return TriSeries(
        dx, dy, n_max, {(0, 0, n): c**n / factorial(n) for n in range(n_max + 1)}
    )


def _expm1_lambda(dx: int, dy: int, n_max: int) -> TriSeries:
    # e^t - 1
    return TriSeries._raw(
        dx, dy, n_max, {(0, 0, n): Fraction(1, factorial(n)) for n in range(1, n_max + 1)}
    )


def _exp_without_constant(s: TriSeries) -> TriSeries:
    """exp of a slice with no t-free part: sum_m s^m / m! is finite on the
    box because every power of s raises the minimum t-degree."""
    if any(n == 0 for (_, _, n) in s.coeffs):
        raise ValueError("exponent series must have no step-free term")
    total = TriSeries._raw(s.dx, s.dy, s.n_max, {(0, 0, 0): Fraction(1)})
    power = total
    for m in range(1, s.n_max + 1):
        power = power * s
        total = total + Fraction(1, factorial(m)) * power
    return total


def g_series(h, order: int, dx: int, dy: int) -> TriSeries:
    """History generating series of h: (B-series) * e^(xy) on the box.

    The coefficient of x^k y^l t^n is G[n, l->k] / (l! n!), so every
    history count in the box can be read off exactly.
    """
    coeffs: dict[tuple[int, int, int], Fraction] = {}
    for n, b in enumerate(bn_sequence(h, order)):
        n_fact = factorial(n)
        for (i, j), c in b.coeffs.items():
            if i <= dx and j <= dy:
                coeffs[(i, j, n)] = c / n_fact
    return TriSeries._raw(dx, dy, order, coeffs) * _exp_xy(dx, dy, order)


def driven_oscillator_closed_form(g, order: int, dx: int, dy: int) -> TriSeries:
    """Closed-form history series of the process XD + g*X + g*D.

    Expands e^((x+g)(y+g)(e^t - 1)) * e^(-g^2 t) * e^(xy) exactly on the
    box: the inner e^t - 1 is truncated at t^order first, and the outer
    exponential is a finite sum there because its argument has no t-free
    term.
    """
    g = as_fraction(g)
    quad = TriSeries(
        dx, dy, order, {(1, 1, 0): 1, (1, 0, 0): g, (0, 1, 0): g, (0, 0, 0): g * g}
    )
    grown = _exp_without_constant(quad * _expm1_lambda(dx, dy, order))
    return grown * _exp_scalar_lambda(-g * g, dx, dy, order) * _exp_xy(dx, dy, order)
