"""Dense univariate integer polynomials and exact real root isolation.

Coefficients are stored highest degree first, so ``x**2 - x - 1`` is
``IntPolynomial([1, -1, -1])``.  Division is carried out over the
rationals and the result is scaled back to an integer polynomial by a
*positive* factor, which keeps every sign needed by Sturm sequences.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Number = int | Fraction


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        self.coeffs: tuple[int, ...] = tuple(cs[i:])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([1, -r])
        return p

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls([1, 0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def sign_at(self, x: Number) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def derivative(self) -> "IntPolynomial":
        n = self.degree
        return IntPolynomial([c * (n - i) for i, c in enumerate(self.coeffs[:-1])])

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = (0,) * (n - len(a)) + a
        b = (0,) * (n - len(b)) + b
        return IntPolynomial([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        n = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = n - i
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                xs = "x" if e == 1 else f"x^{e}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        s = 1 if self.lc > 0 else -1
        return IntPolynomial([s * c // g for c in self.coeffs])

    def compose_neg(self) -> "IntPolynomial":
        """Return ``f(-x)``."""
        n = self.degree
        return IntPolynomial([c if (n - i) % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def monic_fractions(self) -> list[Fraction]:
        return [Fraction(c, self.lc) for c in self.coeffs]


def _from_fractions(cs: Sequence[Fraction]) -> IntPolynomial:
    """Scale a rational coefficient list to integers by a positive factor."""
    cs = list(cs)
    while cs and cs[0] == 0:
        cs.pop(0)
    if not cs:
        return IntPolynomial([])
    den = reduce(lcm, (Fraction(c).denominator for c in cs), 1)
    ints = [int(Fraction(c) * den) for c in cs]
    g = reduce(gcd, ints, 0)
    return IntPolynomial([c // g for c in ints])


def _divmod_q(f: IntPolynomial, g: IntPolynomial) -> tuple[list[Fraction], list[Fraction]]:
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in f.coeffs]
    q: list[Fraction] = []
    dg = g.degree
    lc = g.lc
    while len(r) - 1 >= dg and r:
        c = r[0] / lc
        q.append(c)
        for i, gc in enumerate(g.coeffs):
            r[i] -= c * gc
        r.pop(0)
    while r and r[0] == 0:
        r.pop(0)
    return q, r


def prem(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Remainder of ``f`` by ``g`` up to a positive constant factor."""
    return _from_fractions(_divmod_q(f, g)[1])


def exact_quotient(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Quotient ``f / g`` up to a positive constant factor; ``g`` must divide ``f``."""
    q, r = _divmod_q(f, g)
    if r:
        raise ValueError(f"{g} does not divide {f}")
    return _from_fractions(q)


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    a, b = f.primitive(), g.primitive()
    while not b.is_zero():
        a, b = b, prem(a, b).primitive()
    return a.primitive() if not a.is_zero() else a


def sqf_part(f: IntPolynomial) -> IntPolynomial:
    if f.degree < 1:
        return f.primitive()
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return f.primitive()
    return exact_quotient(f, g).primitive()


def sturm_sequence(f: IntPolynomial) -> list[IntPolynomial]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = prem(seq[-2], seq[-1])
        if r.is_zero():
            break
        seq.append(-r)
    return [p for p in seq if not p.is_zero()]


def _variations(seq: Sequence[IntPolynomial], x: Number) -> int:
    signs = [s for s in (p.sign_at(x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(f: IntPolynomial, lo: Number, hi: Number, seq: list[IntPolynomial] | None = None) -> int:
    """Number of distinct real roots of ``f`` in the half-open interval (lo, hi]."""
    if f.degree < 1:
        return 0
    seq = seq if seq is not None else sturm_sequence(f)
    return _variations(seq, lo) - _variations(seq, hi)


def cauchy_bound(f: IntPolynomial) -> Fraction:
    lc = abs(f.lc)
    return 1 + max((Fraction(abs(c), lc) for c in f.coeffs[1:]), default=Fraction(0))


def isolate_real_roots(f: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the real roots of a square-free ``f``, ascending.

    Each interval either is degenerate (an exact rational root) or has
    non-root endpoints of opposite sign with one root strictly inside.
    """
    if f.degree < 1:
        return []
    seq = sturm_sequence(f)
    b = cauchy_bound(f)
    out: list[tuple[Fraction, Fraction]] = []

    def split(lo: Fraction, hi: Fraction, n: int) -> None:
        if n == 0:
            return
        if n == 1:
            out.append(_tighten(f, seq, lo, hi))
            return
        mid = (lo + hi) / 2
        left = count_roots(f, lo, mid, seq)
        split(lo, mid, left)
        split(mid, hi, n - left)

    split(-b, b, count_roots(f, -b, b, seq))
    return out


def _tighten(f: IntPolynomial, seq: list[IntPolynomial], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    # exactly one root in (lo, hi]
    while True:
        if f(hi) == 0:
            return hi, hi
        if f(lo) != 0:
            return lo, hi
        mid = (lo + hi) / 2
        if count_roots(f, lo, mid, seq) == 1:
            hi = mid
        else:
            lo = mid


def power_sums_from_poly(f: IntPolynomial, count: int) -> list[Fraction]:
    """Power sums p_1..p_count of the complex roots of ``f`` (Newton's identities)."""
    c = f.monic_fractions()[1:]
    n = len(c)
    p: list[Fraction] = []
    for m in range(1, count + 1):
        s = Fraction(0)
        for i in range(1, min(m - 1, n) + 1):
            s += c[i - 1] * p[m - i - 1]
        if m <= n:
            s += m * c[m - 1]
        p.append(-s)
    return p


def poly_from_power_sums(p: Sequence[Fraction], n: int) -> IntPolynomial:
    """Monic degree-``n`` polynomial with root power sums ``p[0..n-1]``, scaled to integers."""
    c: list[Fraction] = []
    for m in range(1, n + 1):
        s = p[m - 1]
        for i in range(1, m):
            s += c[i - 1] * p[m - i - 1]
        c.append(-s / m)
    return _from_fractions([Fraction(1)] + c)
