"""Multiplicative independence and witnesses for the density statements.

Real inputs may be an ``int``, a ``Fraction``, a decimal string, an
:class:`AlgebraicReal`, an ``mpmath.mpf`` or a callable ``f(ctx)`` that
evaluates the number in the mpmath context ``ctx`` (``mpmath.mp`` or
``mpmath.iv``), for instance ``lambda ctx: ctx.log(3)``.  Witnesses are
certified with interval arithmetic, doubling the precision from 30 digits
until the enclosure is conclusive.
"""
from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Callable, Iterator, Union

import mpmath
import sympy

from .algebraic import AlgebraicReal, algebraic_compare
from .core import SubstitutionError

RealLike = Union[int, Fraction, str, AlgebraicReal, mpmath.mpf, Callable]

MAX_DPS = 2000


class SearchBudgetExhausted(SubstitutionError):
    """The search ran out of steps; this says nothing about non-existence."""


class CertificationError(SubstitutionError):
    pass


class DependentInputs(SubstitutionError):
    pass


@contextlib.contextmanager
def _iv_dps(dps: int):
    iv = mpmath.iv
    old = iv.prec
    iv.dps = dps
    try:
        yield iv
    finally:
        iv.prec = old


class Real:
    """A real number evaluable both as an mpf and as a rigorous interval."""

    def __init__(self, x: RealLike):
        if isinstance(x, Real):
            self._f = x._f
            self.exact = x.exact
            self.label = x.label
            return
        self.exact: Fraction | None = None
        self.label = str(x)
        if isinstance(x, bool):
            raise TypeError("booleans are not real inputs")
        if isinstance(x, (int, Fraction)):
            self.exact = Fraction(x)
            self._f = self._rational
        elif isinstance(x, str):
            self.exact = Fraction(x)
            self._f = self._rational
        elif isinstance(x, AlgebraicReal):
            self._alg = x
            if x.is_rational:
                self.exact = x.lo
                self._f = self._rational
            else:
                self._f = self._algebraic
        elif isinstance(x, mpmath.mpf):
            self._mpf = x
            self._f = lambda ctx: ctx.mpf(self._mpf)
        elif callable(x):
            self._f = x
            self.label = getattr(x, "__name__", "callable")
        else:
            raise TypeError(f"cannot use {type(x).__name__} as a real input")

    def _rational(self, ctx):
        q = self.exact
        return ctx.mpf(q.numerator) / q.denominator

    def _algebraic(self, ctx):
        digits = ctx.dps + 10
        x = self._alg.refine(Fraction(1, 10 ** digits))
        # keep the tightest enclosure so later calls resume from it
        self._alg = x
        if ctx is mpmath.iv:
            lo = ctx.mpf(x.lo.numerator) / x.lo.denominator
            hi = ctx.mpf(x.hi.numerator) / x.hi.denominator
            return ctx.mpf([lo.a, hi.b])
        mid = (x.lo + x.hi) / 2
        return ctx.mpf(mid.numerator) / mid.denominator

    def mp(self, dps: int) -> mpmath.mpf:
        with mpmath.workdps(dps):
            return +self._f(mpmath.mp)

    def iv(self, dps: int):
        with _iv_dps(dps) as iv:
            return self._f(iv)


def _log_of(x: Real) -> Real:
    if x.exact is not None and x.exact <= 0:
        raise ValueError("logarithm of a non-positive number")
    out = Real(lambda ctx: ctx.log(x._f(ctx)))
    out.label = f"log({x.label})"
    return out


@dataclass(frozen=True)
class IndependenceVerdict:
    """``Dependent`` (with ``a^k == b^l``), ``IndependentProven`` or ``NoWitnessUpTo``."""

    status: str
    k: int | None = None
    l: int | None = None
    bound: int | None = None

    @property
    def dependent(self) -> bool:
        return self.status == "Dependent"

    def __str__(self) -> str:
        if self.status == "Dependent":
            return f"Dependent({self.k}, {self.l})"
        if self.status == "NoWitnessUpTo":
            return f"NoWitnessUpTo({self.bound})"
        return self.status

    def to_json(self) -> dict:
        return {"status": self.status, "k": self.k, "l": self.l, "bound": self.bound}


def _primitive_power(n: int) -> tuple[int, int]:
    pp = sympy.perfect_power(n)
    if not pp:
        return n, 1
    base, exp = pp
    # sympy returns the largest exponent, so the base is not itself a perfect power
    return int(base), int(exp)


def mult_independent_integers(p: int, q: int) -> IndependenceVerdict:
    """Exact test: ``p^k == q^l`` for some positive ``k, l`` iff both are powers of one base."""
    if p < 2 or q < 2:
        raise ValueError("need integers >= 2")
    b1, e1 = _primitive_power(p)
    b2, e2 = _primitive_power(q)
    if b1 != b2:
        return IndependenceVerdict("IndependentProven")
    g = gcd(e1, e2)
    return IndependenceVerdict("Dependent", e2 // g, e1 // g)


def mult_independent_bounded(a, b, bound: int) -> IndependenceVerdict:
    """Look for ``a^k == b^l`` with ``1 <= k, l <= bound``, compared exactly.

    A miss is reported as ``NoWitnessUpTo(bound)``, which proves nothing.
    """
    a = a if isinstance(a, AlgebraicReal) else AlgebraicReal.rational(Fraction(a))
    b = b if isinstance(b, AlgebraicReal) else AlgebraicReal.rational(Fraction(b))
    one = AlgebraicReal.rational(1)
    if algebraic_compare(a, one) <= 0 or algebraic_compare(b, one) <= 0:
        raise ValueError("need a, b > 1")
    if a.is_rational and b.is_rational and a.lo.denominator == 1 and b.lo.denominator == 1:
        exact = mult_independent_integers(int(a.lo), int(b.lo))
        if exact.dependent and max(exact.k, exact.l) <= bound:
            return exact
        if not exact.dependent:
            return IndependenceVerdict("NoWitnessUpTo", bound=bound)
    dps = 30 + 2 * len(str(bound))
    with mpmath.workdps(dps):
        ratio = mpmath.log(a.approx(dps)) / mpmath.log(b.approx(dps))
    for k in range(1, bound + 1):
        l = int(mpmath.nint(k * ratio))
        if not 1 <= l <= bound:
            continue
        with mpmath.workdps(dps):
            if abs(k * ratio - l) > mpmath.mpf(10) ** (-dps // 2):
                continue
        if algebraic_compare(a.power(k), b.power(l)) == 0:
            return IndependenceVerdict("Dependent", k, l)
    return IndependenceVerdict("NoWitnessUpTo", bound=bound)


# one-sided rational approximations

def _cf_terms(x: Fraction) -> Iterator[int]:
    while True:
        a = floor(x)
        yield a
        x -= a
        if x == 0:
            return
        x = 1 / x


def _blocks(x: Fraction, side: int, qmax: int):
    """Families ``(n0 + j dn, m0 + j dm)``, ``1 <= j <= jmax``, of best one-sided approximations.

    ``side = +1`` gives ``m/n < x`` (so ``n x - m > 0``), ``side = -1`` the
    other side.  Within a family and from one family to the next ``n``
    increases and ``|n x - m|`` decreases.
    """
    p2, q2, p1, q1 = 0, 1, 1, 0
    for k, a in enumerate(_cf_terms(x)):
        if (k % 2 == 0) == (side > 0) and a > 0:
            yield q2, p2, q1, p1, a
        p2, q2, p1, q1 = p1, q1, a * p1 + p2, a * q1 + q2
        if q1 > qmax:
            return


def _fraction_of(x: mpmath.mpf) -> Fraction:
    m, e = mpmath.mpf(x).man_exp
    return Fraction(int(m)) * (Fraction(2) ** int(e))


def _small_steps(alpha: Real, beta: Real, side: int, eps, dps: int, min_n: int = 1) -> Iterator[tuple[int, int]]:
    """Pairs with ``0 < side (n alpha - m beta) < eps`` in increasing ``n``.

    Each family contributes its first admissible member and, when different,
    its last one (the convergent), which has the largest ``m``.
    """
    with mpmath.workdps(dps):
        a, b = alpha.mp(dps), beta.mp(dps)
        r = a / b
        bound = eps / b
        qmax = 10 ** max(dps // 2 - 2, 4)
        for n0, m0, dn, dm, jmax in _blocks(_fraction_of(r), side, qmax):
            d0 = abs(n0 * r - m0)
            ds = abs(dn * r - dm)
            if ds == 0:
                return
            j = 1
            if d0 >= bound:
                j = max(j, int(mpmath.floor((d0 - bound) / ds)) + 1)
            if min_n > n0:
                if dn == 0:
                    continue
                j = max(j, -(-(min_n - n0) // dn))
            if j > jmax:
                continue
            for jj in dict.fromkeys((j, jmax)):
                n, m = n0 + jj * dn, m0 + jj * dm
                # an exact convergent of a rational ratio is no step at all
                if n >= 1 and m >= 1 and 0 < side * (n * r - m) < bound:
                    yield n, m


def _certify(expr, lo, hi, dps0: int = 30):
    """Smallest-precision interval enclosure of ``expr(ctx)`` inside the open ``(lo, hi)``.

    Returns ``(interval, dps)`` or ``None`` once the enclosure is decisively
    outside or precision reaches ``MAX_DPS``.
    """
    dps = dps0
    while dps <= MAX_DPS:
        with _iv_dps(dps) as iv:
            v = expr(iv)
            if lo < v.a and v.b < hi:
                return v, dps
            if v.b <= lo or v.a >= hi:
                return None
        dps *= 2
    return None


def lemmetech_search(alpha: RealLike, beta: RealLike, eps, N: int = 1,
                     budget: int = 10 ** 6) -> tuple[int, int]:
    """``m >= n >= N`` with ``0 < n alpha - m beta < eps``.

    Candidates are the one-sided continued-fraction approximations of
    ``alpha / beta`` from below; the first one meeting both constraints is
    returned after an interval-arithmetic check at 30 digits or more.
    ``alpha / beta`` must be irrational (caller-asserted).
    """
    a, b = Real(alpha), Real(beta)
    eps_r = Real(eps)
    if N < 1:
        raise ValueError("N must be positive")
    with mpmath.workdps(50):
        if not a.mp(50) > b.mp(50) > 0:
            raise ValueError("need alpha > beta > 0")
    dps = 30
    steps = 0
    while dps <= MAX_DPS:
        for n, m in _small_steps(a, b, +1, eps_r.mp(dps), dps + 10, N):
            steps += 1
            if steps > budget:
                raise SearchBudgetExhausted(f"no pair found within {budget} candidates")
            if n < N or m < n:
                continue
            ok = _certify(lambda ctx: n * a._f(ctx) - m * b._f(ctx), 0, eps_r.iv(dps).a, dps)
            if ok is not None:
                return n, m
        dps *= 2
    raise SearchBudgetExhausted("precision limit reached; is alpha/beta rational?")


def certify_lemmetech(alpha: RealLike, beta: RealLike, n: int, m: int, eps, dps: int = 30):
    """Interval enclosure of ``n alpha - m beta`` at ``dps`` digits, and whether it lies in ``(0, eps)``."""
    a, b, e = Real(alpha), Real(beta), Real(eps)
    with _iv_dps(dps) as iv:
        v = n * a._f(iv) - m * b._f(iv)
        eb = e._f(iv)
        return v, bool(0 < v.a and v.b < eb.a)


@dataclass(frozen=True)
class DensityWitness:
    n: int
    m: int
    achieved: mpmath.mpf
    target: mpmath.mpf
    epsilon: mpmath.mpf
    error: mpmath.mpf
    certified_dps: int
    kind: str = "log"
    exact_value: Fraction | None = None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "achieved": mpmath.nstr(self.achieved, 20),
            "target": mpmath.nstr(self.target, 20),
            "epsilon": mpmath.nstr(self.epsilon, 10),
            "error": mpmath.nstr(self.error, 10),
            "certified_dps": self.certified_dps,
        }
        if self.exact_value is not None:
            out["exact"] = f"{self.exact_value.numerator}/{self.exact_value.denominator}"
        return out


class _LogProblem:
    """``g(n, m) = n alpha + d log n - m beta - e log m - target``."""

    def __init__(self, alpha: Real, beta: Real, d: int, e: int, target: Real):
        self.alpha, self.beta, self.d, self.e, self.target = alpha, beta, d, e, target

    def g(self, ctx, n: int, m: int):
        v = n * self.alpha._f(ctx) - m * self.beta._f(ctx) - self.target._f(ctx)
        if self.d:
            v += self.d * ctx.log(n)
        if self.e:
            v -= self.e * ctx.log(m)
        return v

    def g_mp(self, n: int, m: int, dps: int) -> mpmath.mpf:
        with mpmath.workdps(dps):
            return +self.g(mpmath.mp, n, m)

    def grid(self, size: int = 64) -> list[tuple[int, int]]:
        """Pairs with ``n, m <= size``, best first (double precision screen)."""
        a = float(self.alpha.mp(20))
        b = float(self.beta.mp(20))
        t = float(self.target.mp(20))
        scored = []
        for n in range(1, size + 1):
            base = n * a + self.d * math.log(n) - t
            for m in range(1, size + 1):
                scored.append((abs(base - m * b - self.e * math.log(m)), n, m))
        scored.sort()
        return [(n, m) for _, n, m in scored[:8]]

    def walk(self, eps, budget: int) -> tuple[int, int] | None:
        """The step walk for one accuracy level; deterministic in ``eps``."""
        d, e = self.d, self.e
        eps = mpmath.mpf(eps)
        if d == e:
            k0 = 1
        else:
            k0 = int(mpmath.floor(1 / (mpmath.exp(eps / (2 * abs(d - e))) - 1))) + 1
        steps = 0
        dps = 30 + int(max(0, -mpmath.log10(eps)))
        for side in (+1, -1):
            for n, m in _small_steps(self.alpha, self.beta, side, eps / 2, dps + 20):
                steps += 1
                if steps > budget:
                    return None
                work = dps + 2 * len(str(k0 * m)) + 10

                def F(k: int):
                    return self.g_mp(k * n, k * m, work)

                f0 = F(k0)
                if side * f0 > 0:
                    # already past the target: usable only when it is close enough
                    if abs(f0) < eps:
                        return k0 * n, k0 * m
                    continue
                lo, hi = k0, 2 * k0
                while side * F(hi) <= 0:
                    lo, hi = hi, 2 * hi
                    steps += 1
                    if steps > budget:
                        return None
                while hi - lo > 1:
                    mid = (lo + hi) // 2
                    if side * F(mid) <= 0:
                        lo = mid
                    else:
                        hi = mid
                    steps += 1
                k = lo if abs(F(lo)) <= abs(F(hi)) else hi
                return k * n, k * m
        return None


def _ladder(eps) -> list[mpmath.mpf]:
    """Dyadic accuracies ``1, 1/2, ...`` down to the first one <= eps."""
    eps = mpmath.mpf(eps)
    steps = max(0, int(ceil(-float(mpmath.log(eps, 2)) - 1e-12)))
    return [mpmath.mpf(2) ** -j for j in range(steps + 1)]


def _best(problem: _LogProblem, candidates, score, eps) -> tuple[int, int, mpmath.mpf]:
    best = None
    for n, m in dict.fromkeys(candidates):
        dps = 30 + len(str(n)) + len(str(m)) + int(max(0, -mpmath.log10(eps)))
        s = score(problem.g_mp(n, m, 2 * dps))
        key = (s, n, m)
        if best is None or key < best:
            best = key
    return best


def _search(problem: _LogProblem, eps, score, budget: int):
    candidates = problem.grid()
    for rung in _ladder(eps):
        found = problem.walk(rung, budget)
        if found is not None:
            candidates.append(found)
    s, n, m = _best(problem, candidates, score, eps)
    if not s < eps:
        raise SearchBudgetExhausted(f"no witness with error below {mpmath.nstr(eps, 5)} within budget {budget} "
                                    "(are the inputs rationally independent?)")
    return n, m


def denselog_search(alpha: RealLike, beta: RealLike, d: int, e: int, target: RealLike, eps,
                    budget: int = 10 ** 6) -> DensityWitness:
    """``n, m >= 1`` with ``|n alpha + d log n - m beta - e log m - target| < eps``.

    ``alpha`` and ``beta`` must be positive and rationally independent
    (caller-asserted).  The result is the best pair among a 64 x 64 grid
    and one step walk per dyadic accuracy level down to ``eps``, so a
    smaller ``eps`` never gives a worse pair.
    """
    if d < 0 or e < 0:
        raise ValueError("d and e must be non-negative")
    a, b, t = Real(alpha), Real(beta), Real(target)
    eps_v = Real(eps).mp(30)
    if not eps_v > 0:
        raise ValueError("eps must be positive")
    problem = _LogProblem(a, b, d, e, t)
    n, m = _search(problem, eps_v, abs, budget)
    cert = _certify(lambda ctx: abs(problem.g(ctx, n, m)), -1, Real(eps).iv(30).a, 30)
    if cert is None:
        raise CertificationError(f"witness ({n}, {m}) failed interval re-verification")
    v, dps = cert
    with mpmath.workdps(2 * dps):
        g = problem.g_mp(n, m, 2 * dps)
        achieved = g + t.mp(2 * dps)
        return DensityWitness(n, m, achieved, t.mp(2 * dps), eps_v, abs(g), dps, "log")


def _exponents(x: Fraction) -> dict[int, int]:
    out = dict(sympy.factorint(x.numerator))
    for q, k in sympy.factorint(x.denominator).items():
        out[q] = -k
    return out


def _rational_dependence(x: Fraction, y: Fraction) -> tuple[int, int] | None:
    """Least ``k, l >= 1`` with ``x^k == y^l`` for rationals ``x, y > 1``, or None."""
    ex, ey = _exponents(x), _exponents(y)
    if set(ex) != set(ey):
        return None
    q = next(iter(ex))
    # x^k = y^l forces k * ex = l * ey prime by prime
    g = gcd(ex[q], ey[q])
    k, l = ey[q] // g, ex[q] // g
    if k < 0:
        k, l = -k, -l
    if l <= 0 or any(k * ex[r] != l * ey[r] for r in ex):
        return None
    return k, l


def _integer_guard(alpha: Real, beta: Real) -> None:
    x, y = alpha.exact, beta.exact
    if x is None or y is None or x <= 1 or y <= 1:
        return
    if x.denominator == 1 and y.denominator == 1:
        verdict = mult_independent_integers(int(x), int(y))
        if verdict.dependent:
            raise DependentInputs(f"{x} and {y} are multiplicatively dependent: {verdict}")
        return
    kl = _rational_dependence(x, y)
    if kl is not None:
        raise DependentInputs(f"{x} and {y} are multiplicatively dependent: Dependent{kl}")


def densite_search(alpha: RealLike, beta: RealLike, d: int, e: int, target: RealLike, eps_rel,
                   budget: int = 10 ** 6) -> DensityWitness:
    """``n, m`` with ``n^d alpha^n / (m^e beta^m)`` within relative ``eps_rel`` of ``target``.

    Runs the logarithmic search and ranks candidates by relative error.
    Rational inputs are checked for multiplicative dependence first.
    """
    a, b, t = Real(alpha), Real(beta), Real(target)
    _integer_guard(a, b)
    with mpmath.workdps(40):
        if not (a.mp(40) > 1 and b.mp(40) > 1 and t.mp(40) > 0):
            raise ValueError("need alpha, beta > 1 and target > 0")
    eps_v = Real(eps_rel).mp(30)
    problem = _LogProblem(_log_of(a), _log_of(b), d, e, _log_of(t))
    eps_log = mpmath.log(1 + eps_v)

    def rel(g):
        return abs(mpmath.expm1(g))

    # the log-space search guarantees |g| < log(1 + eps), hence relative error < eps
    n, m = _search(problem, eps_log, rel, budget)
    cert = _certify(lambda ctx: abs(ctx.expm1(problem.g(ctx, n, m))), -1, Real(eps_rel).iv(30).a, 30)
    if cert is None:
        raise CertificationError(f"witness ({n}, {m}) failed interval re-verification")
    _, dps = cert
    exact = None
    if a.exact is not None and b.exact is not None and max(n, m) <= 100_000:
        exact = Fraction(n) ** d * a.exact ** n / (Fraction(m) ** e * b.exact ** m)
    with mpmath.workdps(2 * dps):
        g = problem.g_mp(n, m, 2 * dps)
        tv = t.mp(2 * dps)
        achieved = tv * mpmath.exp(g)
        return DensityWitness(n, m, achieved, tv, eps_v, rel(g), dps, "ratio", exact)


__all__ = [
    "Real",
    "IndependenceVerdict",
    "DensityWitness",
    "SearchBudgetExhausted",
    "CertificationError",
    "DependentInputs",
    "mult_independent_integers",
    "mult_independent_bounded",
    "lemmetech_search",
    "certify_lemmetech",
    "denselog_search",
    "densite_search",
]
