"""Spectral data of substitutions, computed exactly.

Matrices are numpy object arrays of Python ints, indexed in alphabet
order with ``M[i, j]`` = number of occurrences of letter ``i`` in the
image of letter ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Sequence

import mpmath
import numpy as np

from .algebraic import AlgebraicReal, algebraic_compare, largest_real_root
from .core import Morphism, NotASubstitution, Substitution, SubstitutionError, as_word
from .graph import Condensation, successors
from .poly import IntPolynomial


class ConvergenceError(SubstitutionError):
    """A numeric estimate could not reach the requested tolerance within budget."""


def abelianization(m: Morphism) -> np.ndarray:
    M = np.zeros((len(m.target), len(m.source)), dtype=object)
    M[:] = 0
    for j, img in enumerate(m.images):
        for t in img:
            M[m.target.index(t), j] += 1
    return M


def matrix_power(M: np.ndarray, k: int) -> np.ndarray:
    n = M.shape[0]
    result = np.identity(n, dtype=object)
    result[:] = [[int(i == j) for j in range(n)] for i in range(n)]
    base = M.copy()
    while k:
        if k & 1:
            result = result.dot(base)
        base = base.dot(base)
        k >>= 1
    return result


def char_poly(M: np.ndarray) -> IntPolynomial:
    """``det(xI - M)`` by the Faddeev-LeVerrier recursion (all divisions exact)."""
    n = M.shape[0]
    if n == 0:
        return IntPolynomial([1])
    M = np.asarray(M, dtype=object)
    coeffs = [1]
    N = np.zeros((n, n), dtype=object)
    N[:] = 0
    eye = np.zeros((n, n), dtype=object)
    eye[:] = [[int(i == j) for j in range(n)] for i in range(n)]
    c = 1
    for k in range(1, n + 1):
        N = M.dot(N) + c * eye
        MN = M.dot(N)
        tr = sum(MN[i, i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs.append(c)
    return IntPolynomial(coeffs)


def _block(M: np.ndarray, idx: Sequence[int]) -> np.ndarray:
    return M[np.ix_(list(idx), list(idx))]


def spectral_radius(M: np.ndarray) -> AlgebraicReal:
    """Dominant eigenvalue of a non-negative integer matrix.

    By Perron-Frobenius this is the largest spectral radius among the
    irreducible diagonal blocks, each being the largest real root of the
    block's characteristic polynomial.
    """
    cond = Condensation(successors(M))
    radii = [_component_radius(M, cond, c) for c in range(len(cond.components))]
    best = AlgebraicReal.rational(0)
    for r in radii:
        if algebraic_compare(r, best) > 0:
            best = r
    return best


def _component_radius(M: np.ndarray, cond: Condensation, c: int) -> AlgebraicReal:
    if cond.is_trivial(c):
        return AlgebraicReal.rational(0)
    root = largest_real_root(char_poly(_block(M, cond.components[c])))
    if root is None:
        return AlgebraicReal.rational(0)
    return root.minimal()


def is_primitive(M: np.ndarray) -> bool:
    cond = Condensation(successors(M))
    return len(cond.components) == 1 and cond.period(0) == 1


@dataclass(frozen=True)
class GrowthType:
    d: int
    theta: AlgebraicReal

    def __lt__(self, other: "GrowthType") -> bool:
        return growth_order(self, other) < 0

    def __gt__(self, other: "GrowthType") -> bool:
        return growth_order(self, other) > 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrowthType):
            return NotImplemented
        return growth_order(self, other) == 0

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        return f"({self.d}, {self.theta})"


def growth_order(g1: GrowthType, g2: GrowthType) -> int:
    c = algebraic_compare(g1.theta, g2.theta)
    if c:
        return c
    return (g1.d > g2.d) - (g1.d < g2.d)


@dataclass(frozen=True)
class ConstantEstimate:
    value: mpmath.mpf
    error: mpmath.mpf
    converged: bool
    n_used: int

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class GrowthReport:
    alphabet: tuple[str, ...]
    types: dict[str, GrowthType]
    D: int
    Theta: AlgebraicReal
    A_max: tuple[str, ...]
    c_estimates: dict[str, ConstantEstimate]
    sampling_step: int

    def to_json(self, digits: int = 15) -> dict:
        return {
            "letters": [
                {"letter": a, "d": self.types[a].d, "theta": self.types[a].theta.to_json()}
                for a in self.alphabet
            ],
            "Theta": self.Theta.to_json(),
            "D": self.D,
            "A_max": list(self.A_max),
            "c_estimates": {
                a: {
                    "value": mpmath.nstr(e.value, digits),
                    "error": mpmath.nstr(e.error, 3),
                    "converged": e.converged,
                }
                for a, e in self.c_estimates.items()
            },
        }


@dataclass
class _Classes:
    cond: Condensation
    radius: list[AlgebraicReal]
    theta: list[AlgebraicReal]
    chain: list[int]


def _growth_classes(M: np.ndarray) -> _Classes:
    cond = Condensation(successors(M))
    radius = [_component_radius(M, cond, c) for c in range(len(cond.components))]
    nc = len(cond.components)
    theta: list[AlgebraicReal] = [AlgebraicReal.rational(0)] * nc
    chain = [0] * nc
    # tarjan emits sinks first, so successors are always done before their sources
    for c in range(nc):
        th = radius[c]
        for e in cond.dag[c]:
            if algebraic_compare(theta[e], th) > 0:
                th = theta[e]
        best = 0
        for e in cond.dag[c]:
            if algebraic_compare(theta[e], th) == 0:
                best = max(best, chain[e])
        theta[c] = th
        chain[c] = best + (1 if algebraic_compare(radius[c], th) == 0 else 0)
    return _Classes(cond, radius, theta, chain)


def growth_pairs(m: Morphism) -> dict[str, GrowthType]:
    """Per-letter growth type (d, theta) without any numeric estimation."""
    M = abelianization(m)
    cl = _growth_classes(M)
    out = {}
    for i, a in enumerate(m.source):
        c = cl.cond.comp_of[i]
        th = cl.theta[c]
        d = cl.chain[c] - 1 if th.sign() > 0 else 0
        out[a] = GrowthType(d, th)
    return out


def check_valid(m: Morphism) -> None:
    """Raise :class:`NotASubstitution` unless every letter grows without bound."""
    if m.source.letters != m.target.letters:
        raise NotASubstitution("source and target alphabets differ")
    one = AlgebraicReal.rational(1)
    for a, g in growth_pairs(m).items():
        c = algebraic_compare(g.theta, one)
        if c < 0:
            reason = "is eventually erased" if g.theta.sign() == 0 else "does not grow"
            raise NotASubstitution(f"letter {a!r} {reason}: growth type ({g.d}, {g.theta})")
        if c == 0 and g.d == 0:
            raise NotASubstitution(f"letter {a!r} has bounded iterates: growth type (0, 1)")


def sampling_period(M: np.ndarray) -> int:
    """lcm of the periods of the non-trivial classes; iterates are sampled at its multiples."""
    cond = Condensation(successors(M))
    p = 1
    for c in range(len(cond.components)):
        per = cond.period(c)
        if per:
            p = lcm(p, per)
    return p


def length_vectors(M: np.ndarray, n_max: int, step: int = 1) -> list[list[int]]:
    """Row vectors of ``|s^n(a)|`` over letters ``a`` for ``n = 0, step, 2*step, ...``."""
    n = M.shape[0]
    A = matrix_power(M, step)
    rows = [[1] * n]
    v = np.array([1] * n, dtype=object)
    for _ in range(n_max // step):
        v = v.dot(A)
        rows.append([int(x) for x in v])
    return rows


def word_lengths(m: Morphism, n: int) -> dict[str, int]:
    """``|s^n(a)|`` for every letter, by exact matrix powering."""
    v = np.array([1] * len(m.source), dtype=object).dot(matrix_power(abelianization(m), n))
    return {a: int(x) for a, x in zip(m.source, v)}


def leading_constant(values: Sequence[int], d: int, theta: mpmath.mpf, step: int,
                     tol: float, offset: int = 0) -> ConstantEstimate:
    """Estimate ``lim L_k / ((step*k)^d theta^(step*k))`` from ``values[k] = L_k``.

    ``L_k / theta^(step*k)`` is a degree-``d`` polynomial in ``k`` up to an
    exponentially small term, so its ``d``-th finite difference divided by
    ``d! step^d`` converges geometrically to the limit.
    """
    scale = factorial(d) * step ** d
    ests = []
    for k in range(d, len(values)):
        diff = mpmath.mpf(0)
        for j in range(d + 1):
            sign = -1 if j % 2 else 1
            idx = k - j
            diff += sign * mpmath.binomial(d, j) * values[idx] / theta ** (step * idx + offset)
        ests.append(diff / scale)
        if len(ests) >= 3:
            err = max(abs(ests[-1] - ests[-2]), abs(ests[-2] - ests[-3]))
            if err < tol / 4:
                return ConstantEstimate(ests[-1], 2 * err, True, step * k)
    if len(ests) >= 2:
        err = abs(ests[-1] - ests[-2])
    else:
        err = mpmath.inf
    return ConstantEstimate(ests[-1] if ests else mpmath.mpf(0), err, False, step * (len(values) - 1))


def growth_types(s: Substitution, tol: float = 1e-10, max_n: int = 1500,
                 letters: Sequence[str] | None = None) -> GrowthReport:
    """Growth types, the substitution's growth type (D, Theta), A_max and c(a).

    ``c(a)`` is estimated for ``letters`` (default: all) by sampling
    ``|s^n(a)|`` at multiples of the lcm of the class periods.
    """
    check_valid(s)
    M = abelianization(s)
    types = growth_pairs(s)
    Theta = types[s.alphabet.letters[0]].theta
    for g in types.values():
        if algebraic_compare(g.theta, Theta) > 0:
            Theta = g.theta
    D = max(g.d for g in types.values() if algebraic_compare(g.theta, Theta) == 0)
    A_max = tuple(a for a in s.alphabet
                  if types[a].d == D and algebraic_compare(types[a].theta, Theta) == 0)
    step = sampling_period(M)
    wanted = list(s.alphabet) if letters is None else list(letters)
    estimates: dict[str, ConstantEstimate] = {}
    if wanted:
        dps = 40 + int(-mpmath.log10(tol)) if tol < 1 else 40
        with mpmath.workdps(dps):
            rows = length_vectors(M, max_n, step)
            thetas: dict[str, mpmath.mpf] = {}
            for a in wanted:
                g = types[a]
                key = str(g.theta.poly) + str(g.theta.lo)
                if key not in thetas:
                    thetas[key] = g.theta.approx(dps + 10)
                j = s.alphabet.index(a)
                col = [r[j] for r in rows]
                estimates[a] = leading_constant(col, g.d, thetas[key], step, tol)
    return GrowthReport(tuple(s.alphabet), types, D, Theta, A_max, estimates, step)


def lambda_sigma(s: Substitution, w: str | Sequence[str], tol: float = 1e-8,
                 max_n: int = 3000) -> mpmath.mpf:
    """``lim |s^n(w)| / (n^D Theta^n)``: the sum of c(a) over letters of ``w`` in A_max."""
    w = as_word(w)
    for t in w:
        s.alphabet.index(t)
    pre = growth_types(s, letters=[])
    counts: dict[str, int] = {}
    for t in w:
        if t in pre.A_max:
            counts[t] = counts.get(t, 0) + 1
    if not counts:
        return mpmath.mpf(0)
    total = sum(counts.values())
    rep = growth_types(s, tol=tol / total, max_n=max_n, letters=list(counts))
    value = mpmath.mpf(0)
    for a, k in counts.items():
        e = rep.c_estimates[a]
        if not e.converged or e.error * total > tol:
            raise ConvergenceError(f"c({a}) did not reach tolerance {tol} within n <= {max_n}")
        value += k * e.value
    return value
