"""Exact real algebraic numbers: a square-free integer polynomial plus an
isolating rational interval.  All comparisons are exact."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

import mpmath

from .poly import (
    IntPolynomial,
    count_roots,
    isolate_real_roots,
    poly_from_power_sums,
    poly_gcd,
    power_sums_from_poly,
    sqf_part,
)


@dataclass(frozen=True, eq=False)
class AlgebraicReal:
    """A real root of ``poly`` located in ``[lo, hi]``.

    Either ``lo == hi`` and the number is that rational, or ``poly`` is
    non-zero with opposite signs at ``lo`` and ``hi`` and has exactly one
    root strictly between them.
    """

    poly: IntPolynomial
    lo: Fraction
    hi: Fraction

    @classmethod
    def rational(cls, r: int | Fraction) -> "AlgebraicReal":
        r = Fraction(r)
        return cls(IntPolynomial([r.denominator, -r.numerator]), r, r)

    @classmethod
    def root_in(cls, poly: IntPolynomial, lo: Fraction | int, hi: Fraction | int) -> "AlgebraicReal":
        """The unique root of ``poly`` in ``[lo, hi]``; raises if not unique."""
        f = sqf_part(poly)
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        if lo == hi:
            if f(lo) != 0:
                raise ValueError(f"{lo} is not a root of {poly}")
            return cls.rational(lo)
        at_lo = f(lo) == 0
        n = count_roots(f, lo, hi) + (1 if at_lo else 0)
        if n != 1:
            raise ValueError(f"{poly} has {n} roots in [{lo}, {hi}], expected exactly one")
        if at_lo:
            return cls.rational(lo)
        if f(hi) == 0:
            return cls.rational(hi)
        return cls(f, lo, hi)._rationalize()

    @classmethod
    def real_roots(cls, poly: IntPolynomial) -> list["AlgebraicReal"]:
        f = sqf_part(poly)
        out = []
        for lo, hi in isolate_real_roots(f):
            out.append(cls.rational(lo) if lo == hi else cls(f, lo, hi)._rationalize())
        return out

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def _rationalize(self) -> "AlgebraicReal":
        # rational roots p/q have q | lc; an interval narrower than 1/lc^2 holds at most one such
        if self.is_rational:
            return self
        lc = abs(self.poly.lc)
        x = self.refine(Fraction(1, 4 * lc * lc))
        r = ((x.lo + x.hi) / 2).limit_denominator(lc)
        if x.lo <= r <= x.hi and self.poly(r) == 0:
            return AlgebraicReal.rational(r)
        return x

    def refine(self, width: Fraction | float) -> "AlgebraicReal":
        """Bisect until the interval is narrower than ``width``."""
        width = Fraction(width)
        if self.is_rational:
            return self
        f, lo, hi = self.poly, self.lo, self.hi
        s_lo = f.sign_at(lo)
        while hi - lo >= width:
            mid = (lo + hi) / 2
            s = f.sign_at(mid)
            if s == 0:
                return AlgebraicReal.rational(mid)
            if s == s_lo:
                lo = mid
            else:
                hi = mid
        return AlgebraicReal(f, lo, hi)

    def bisect(self) -> "AlgebraicReal":
        if self.is_rational:
            return self
        return self.refine((self.hi - self.lo) * Fraction(51, 100))

    def approx(self, dps: int = 30) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            if self.is_rational:
                return mpmath.mpf(self.lo.numerator) / self.lo.denominator
            x = self.refine(Fraction(1, 10 ** (dps + 5)))
            mid = (x.lo + x.hi) / 2
            return mpmath.mpf(mid.numerator) / mid.denominator

    def __float__(self) -> float:
        return float(self.approx(20))

    def __neg__(self) -> "AlgebraicReal":
        if self.is_rational:
            return AlgebraicReal.rational(-self.lo)
        return AlgebraicReal(self.poly.compose_neg().primitive(), -self.hi, -self.lo)

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return algebraic_compare(self, other) == 0

    def __lt__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return algebraic_compare(self, o) < 0

    def __le__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return algebraic_compare(self, o) <= 0

    def __gt__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return algebraic_compare(self, o) > 0

    def __ge__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return algebraic_compare(self, o) >= 0

    __hash__ = None  # type: ignore[assignment]

    def power(self, k: int) -> "AlgebraicReal":
        """``self ** k`` for ``k >= 1``, exact."""
        if k < 1:
            raise ValueError("exponent must be positive")
        if self.is_rational:
            return AlgebraicReal.rational(self.lo ** k)
        f = self.poly
        n = f.degree
        sums = power_sums_from_poly(f, n * k)
        g = sqf_part(poly_from_power_sums([sums[(m + 1) * k - 1] for m in range(n)], n))
        x = self
        while True:
            lo, hi = _power_range(x.lo, x.hi, k)
            if lo != hi and g(lo) != 0 and g(hi) != 0 and count_roots(g, lo, hi) == 1:
                return AlgebraicReal(g, lo, hi)._rationalize()
            x = x.bisect()
            if x.is_rational:
                return AlgebraicReal.rational(x.lo ** k)

    def sign(self) -> int:
        x = self
        while not x.is_rational and x.lo < 0 < x.hi:
            x = x.bisect()
        if x.is_rational:
            return (x.lo > 0) - (x.lo < 0)
        return 1 if x.lo >= 0 else -1

    def minimal(self) -> "AlgebraicReal":
        """Same number, defined by its (primitive) minimal polynomial."""
        if self.is_rational:
            return self
        import sympy

        X = sympy.Symbol("x")
        _, factors = sympy.factor_list(sympy.Poly(list(self.poly.coeffs), X))
        for fac, _mult in factors:
            g = IntPolynomial([int(c) for c in fac.all_coeffs()]).primitive()
            if g.sign_at(self.lo) * g.sign_at(self.hi) < 0:
                return AlgebraicReal(g, self.lo, self.hi)
        raise AssertionError("no irreducible factor changes sign on the isolating interval")

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicReal({self.lo})"
        return f"AlgebraicReal(root of {self.poly} in [{self.lo}, {self.hi}])"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.lo)
        q = _quadratic_form(self)
        if q is not None:
            return q
        return f"root of {self.poly} ~ {mpmath.nstr(self.approx(15), 12)}"

    def to_json(self) -> dict:
        return {
            "poly": list(self.poly.coeffs),
            "interval": [str(self.lo), str(self.hi)],
            "approx": mpmath.nstr(self.approx(20), 15),
            "display": str(self),
        }


def _coerce(x: object) -> AlgebraicReal | None:
    if isinstance(x, AlgebraicReal):
        return x
    if isinstance(x, (int, Fraction)):
        return AlgebraicReal.rational(x)
    return None


def _power_range(lo: Fraction, hi: Fraction, k: int) -> tuple[Fraction, Fraction]:
    vals = [lo ** k, hi ** k]
    if lo < 0 < hi and k % 2 == 0:
        vals.append(Fraction(0))
    return min(vals), max(vals)


def _contains_root_of(h: IntPolynomial, x: AlgebraicReal) -> bool:
    """Is ``x`` a root of ``h``, given that ``h`` divides ``x.poly``?"""
    if x.is_rational:
        return h(x.lo) == 0
    return h.sign_at(x.lo) * h.sign_at(x.hi) < 0


def is_root(h: IntPolynomial, x: AlgebraicReal) -> bool:
    """Exact test ``h(x) == 0``."""
    if x.is_rational:
        return h(x.lo) == 0
    g = poly_gcd(h, x.poly)
    if g.degree < 1:
        return False
    return _contains_root_of(g, x)


def algebraic_compare(x: AlgebraicReal, y: AlgebraicReal) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    if x.is_rational and y.is_rational:
        return (x.lo > y.lo) - (x.lo < y.lo)
    if x.is_rational:
        return -algebraic_compare(y, x)
    if y.is_rational:
        r = y.lo
        if x.poly(r) == 0 and x.lo < r < x.hi:
            return 0
        while x.lo <= r <= x.hi:
            x = x.bisect()
            if x.is_rational:
                break
        if x.is_rational:
            return (x.lo > r) - (x.lo < r)
        return 1 if x.lo > r else -1
    g = poly_gcd(x.poly, y.poly)
    shared = g.degree >= 1
    while True:
        if x.hi < y.lo:
            return -1
        if y.hi < x.lo:
            return 1
        if shared and _contains_root_of(g, x) and _contains_root_of(g, y):
            lo, hi = min(x.lo, y.lo), max(x.hi, y.hi)
            n = count_roots(g, lo, hi) + (1 if g(lo) == 0 else 0)
            if n == 1:
                return 0
        x, y = x.bisect(), y.bisect()
        if x.is_rational or y.is_rational:
            return algebraic_compare(x, y)


def largest_real_root(poly: IntPolynomial) -> AlgebraicReal | None:
    roots = AlgebraicReal.real_roots(poly)
    return roots[-1] if roots else None


def is_perron(x: AlgebraicReal) -> bool:
    """Is ``x`` an algebraic integer strictly dominating all its conjugates?

    Decided exactly: with ``g`` the minimal polynomial of ``x`` and ``P``
    the polynomial whose roots are all products ``r_i r_j`` of roots of
    ``g``, ``x`` is Perron iff ``x**2`` is the largest real root of ``P``
    and a simple one.
    """
    if x.sign() <= 0:
        raise ValueError("Perron test needs a positive number")
    m = x.minimal()
    if m.is_rational:
        return m.lo.denominator == 1
    g = m.poly
    if abs(g.lc) != 1:
        return False
    n = g.degree
    ps = power_sums_from_poly(g, n * n)
    P = poly_from_power_sums([p * p for p in ps], n * n)
    x2 = m.power(2)
    top = largest_real_root(P)
    if top is None or algebraic_compare(top, x2) != 0:
        return False
    return not is_root(P.derivative(), x2)


def _squarefree_split(d: int) -> tuple[int, int]:
    """``d = a*a*b`` with ``b`` square-free."""
    a, b = 1, d
    k = 2
    while k * k <= b:
        while b % (k * k) == 0:
            b //= k * k
            a *= k
        k += 1
    return a, b


def _quadratic_form(x: AlgebraicReal) -> str | None:
    if x.poly.degree != 2:
        return None
    a, b, c = x.poly.coeffs
    disc = b * b - 4 * a * c
    if disc <= 0 or isqrt(disc) ** 2 == disc:
        return None
    k, r = _squarefree_split(disc)
    sign = "+" if x > AlgebraicReal.rational(Fraction(-b, 2 * a)) else "-"
    den = 2 * a
    num_b, num_k = -b, k
    g = gcd(gcd(abs(num_b), num_k), abs(den))
    num_b, num_k, den = num_b // g, num_k // g, den // g
    if den < 0:
        num_b, den = -num_b, -den
        sign = "-" if sign == "+" else "+"
    surd = f"√{r}" if num_k == 1 else f"{num_k}√{r}"
    if num_b == 0:
        body = surd if sign == "+" else f"-{surd}"
    else:
        body = f"{num_b}{sign}{surd}"
    return body if den == 1 else f"({body})/{den}"


def from_expr(expr: str) -> AlgebraicReal:
    """Parse an integer, a fraction ``p/q``, ``sqrt(n)`` or ``root:<c0,c1,...>:<lo>:<hi>``.

    Coefficients in the ``root`` form are comma separated, highest degree first.
    """
    expr = expr.strip()
    if expr.startswith("sqrt(") and expr.endswith(")"):
        n = int(expr[5:-1])
        if n < 0:
            raise ValueError("square root of a negative number")
        return sqrt_of(n)
    if expr.startswith("root:"):
        _, coeffs, lo, hi = expr.split(":")
        poly = IntPolynomial([int(c) for c in coeffs.split(",")])
        return AlgebraicReal.root_in(poly, Fraction(lo), Fraction(hi))
    return AlgebraicReal.rational(Fraction(expr))


def golden_ratio() -> AlgebraicReal:
    return AlgebraicReal.root_in(IntPolynomial([1, -1, -1]), Fraction(8, 5), Fraction(17, 10))


def sqrt_of(n: int) -> AlgebraicReal:
    r = isqrt(n)
    if r * r == n:
        return AlgebraicReal.rational(r)
    return AlgebraicReal.root_in(IntPolynomial([1, 0, -n]), r, r + 1)


def max_algebraic(values: Sequence[AlgebraicReal]) -> AlgebraicReal:
    best = values[0]
    for v in values[1:]:
        if algebraic_compare(v, best) > 0:
            best = v
    return best
