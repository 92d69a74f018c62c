"""Questions about one fixed point: where words occur, how they return, whether it is periodic."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import mpmath
import numpy as np

from .core import (
    EventuallyPeriodicWord,
    InvalidSeed,
    Substitution,
    SubstitutionError,
    Word,
    apply,
    as_word,
    as_word_over,
    ep_equal,
    ep_image,
    fixed_point_prefix,
    fixed_point_seeds,
    iterate,
    least_period,
    word_str,
)
from .decomp import letters_infinitely_often
from .spectral import (
    ConstantEstimate,
    abelianization,
    growth_types,
    lambda_sigma,
    leading_constant,
    matrix_power,
    sampling_period,
)

__all__ = [
    "ReturnWordSet",
    "StarlikeDecomposition",
    "PeriodicityCertificate",
    "occurrences",
    "return_words",
    "max_gap",
    "starlike_decomposition",
    "certify_ultimate_periodicity",
    "least_period",
]


def occurrences(prefix: Sequence[str], u: str | Sequence[str]) -> list[int]:
    """Positions ``i`` with ``prefix[i:i+|u|] == u``, ascending."""
    prefix, u = as_word(prefix), as_word(u)
    if not u:
        raise ValueError("u must be non-empty")
    k = len(u)
    # quick scan on the first letter, then compare slices
    first = u[0]
    return [i for i in range(len(prefix) - k + 1) if prefix[i] == first and prefix[i:i + k] == u]


@dataclass(frozen=True)
class ReturnWordSet:
    u: Word
    returns: tuple[Word, ...]
    horizon: int
    complete: bool
    first_occurrence: int

    def to_json(self) -> dict:
        return {
            "u": word_str(self.u),
            "returns": [word_str(w) for w in self.returns],
            "horizon": self.horizon,
            "complete": self.complete,
        }


def _x(s: Substitution, seed: str, n: int) -> Word:
    if seed not in fixed_point_seeds(s):
        raise InvalidSeed(f"{seed!r} is not a fixed-point seed (its image must start with it and have length >= 2)")
    return fixed_point_prefix(s, seed, n)


def return_words(s: Substitution, seed: str, u: str | Sequence[str], horizon: int = 10_000) -> ReturnWordSet:
    """Distinct words ``x[i:j]`` between consecutive occurrences of ``u``.

    ``complete`` is a heuristic: every return word seen was first found well
    before the end of the prefix.  It is not a proof that none are missing.
    """
    u = as_word_over(u, s.alphabet)
    x = _x(s, seed, horizon)
    occ = occurrences(x, u)
    if len(occ) < 2:
        raise SubstitutionError(f"{word_str(u)!r} occurs fewer than twice in the first {horizon} letters")
    found: dict[Word, int] = {}
    gap = 0
    for i, j in zip(occ, occ[1:]):
        gap = max(gap, j - i)
        w = x[i:j]
        if w not in found:
            found[w] = j + len(u)
    cutoff = horizon - (gap + len(u))
    complete = all(end <= cutoff for end in found.values())
    returns = tuple(sorted(found, key=lambda w: (len(w), w)))
    return ReturnWordSet(u, returns, horizon, complete, occ[0])


def max_gap(s: Substitution, seed: str, target: str | Sequence[str], horizon: int = 10_000) -> int:
    """Largest distance between consecutive occurrences seen in the first ``horizon`` letters.

    The leading offset (position of the first occurrence) counts as a gap.
    This is an observation on a finite prefix, not a bound.
    """
    target = as_word_over(target, s.alphabet)
    occ = occurrences(_x(s, seed, horizon), target)
    if not occ:
        raise SubstitutionError(f"{word_str(target)!r} does not occur in the first {horizon} letters")
    if len(occ) == 1:
        raise SubstitutionError(
            f"{word_str(target)!r} occurs once in the first {horizon} letters: no gap to measure (possibly unbounded)")
    return max([occ[0]] + [j - i for i, j in zip(occ, occ[1:])])


@dataclass(frozen=True)
class StarlikeDecomposition:
    """Prefixes ``s^(pn)(u) s^(p(n-1))(v) ... s^p(v) v w a`` of the fixed point."""

    p: int
    u: Word
    v: Word
    w: Word
    a: str
    chain: tuple[str, ...]
    verified_up_to: int
    gamma_estimate: ConstantEstimate

    def word(self, s: Substitution, n: int) -> Word:
        return _starlike_word(s, self.p, self.u, self.v, self.w, self.a, n)

    def to_json(self) -> dict:
        g = self.gamma_estimate
        return {
            "p": self.p,
            "u": word_str(self.u),
            "v": word_str(self.v),
            "w": word_str(self.w),
            "a": self.a,
            "chain": list(self.chain),
            "verified_up_to": self.verified_up_to,
            "gamma": {"value": mpmath.nstr(g.value, 12), "error": mpmath.nstr(g.error, 3), "converged": g.converged},
        }


def _power_apply(s: Substitution, w: Word, k: int) -> Word:
    for _ in range(k):
        w = apply(s, w)
    return w


def _starlike_word(s: Substitution, p: int, u: Word, v: Word, w: Word, a: str, n: int) -> Word:
    out = list(_power_apply(s, u, p * n))
    for k in range(n - 1, -1, -1):
        out.extend(_power_apply(s, v, p * k))
    return tuple(out) + w + (a,)


def starlike_decomposition(s: Substitution, seed: str, a: str, check_n: int = 5,
                           max_len: int = 2_000_000, tol: float = 1e-8) -> StarlikeDecomposition:
    """Follow the constructive proof with a deterministic choice of chain letters.

    Each step prefers a letter already in the chain, then the first one in
    alphabet order.  When ``u'`` would be empty it is extended to the
    prefix ending just before the second occurrence of the repeated letter.
    """
    inf = letters_infinitely_often(s, seed)
    if a not in inf:
        raise SubstitutionError(f"{a!r} does not occur infinitely often in the fixed point of {seed!r}")
    letters = s.alphabet.letters
    chain = [a]
    pos = {a: 0}
    while True:
        prev = chain[-1]
        options = [b for b in letters if b in inf and prev in s[b]]
        # closing the chain as early as possible keeps p small
        nxt = next((b for b in options if b in pos), options[0])
        if nxt in pos:
            i, j = pos[nxt], len(chain)
            break
        pos[nxt] = len(chain)
        chain.append(nxt)
    b = nxt
    p = j - i
    si = iterate(s, b, i)
    u1 = si[:si.index(a)]
    sp = iterate(s, b, p)
    v1 = sp[:sp.index(b)]
    v = _power_apply(s, v1, i)
    w = u1
    # prefix of x before an occurrence of b; skip the first one when it sits at 0
    x = fixed_point_prefix(s, seed, 64)
    n = 64
    needed = 1 if x[0] != b else 2
    while sum(1 for t in x if t == b) < needed:
        n *= 2
        x = fixed_point_prefix(s, seed, n)
    seen = 0
    cut = 0
    for k, t in enumerate(x):
        if t == b:
            seen += 1
            if seen == needed:
                cut = k
                break
    u_prime = x[:cut]
    u = _power_apply(s, u_prime, i)
    verified = -1
    for k in range(check_n + 1):
        word = _starlike_word(s, p, u, v, w, a, k)
        if len(word) > max_len:
            break
        if fixed_point_prefix(s, seed, len(word)) != word:
            raise SubstitutionError(f"starlike prefix check failed at n={k}")
        verified = k
    gamma = _gamma(s, u, v, w, p, tol)
    return StarlikeDecomposition(p, u, v, w, a, tuple(chain + [b]), verified, gamma)


def _lengths(vec_row: list[int], w: Word, index) -> int:
    return sum(vec_row[index(t)] for t in w)


def _gamma(s: Substitution, u: Word, v: Word, w: Word, p: int, tol: float,
           max_terms: int = 400) -> ConstantEstimate:
    """Estimate the limit of the starlike prefix length over ``(pn)^D Theta^(pn)``."""
    rep = growth_types(s, letters=[])
    M = abelianization(s)
    q = sampling_period(M)
    r = q // gcd(p, q)
    step = p * r
    index = s.alphabet.index
    A = matrix_power(M, p)
    ones = [1] * len(s.alphabet)
    row = ones
    # L_n = |s^(pn)(u)| + sum_{k<n} |s^(pk)(v)| + |w| + 1
    values = []
    acc_v = 0
    for n in range(max_terms * r + 1):
        if n % r == 0:
            values.append(_lengths(row, u, index) + acc_v + len(w) + 1)
        acc_v += _lengths(row, v, index)
        row = [int(x) for x in np.array(row, dtype=object).dot(A)]
    D = rep.D
    dps = 40 + int(-mpmath.log10(tol))
    with mpmath.workdps(dps):
        theta = rep.Theta.approx(dps + 10)
        return leading_constant(values, D, theta, step, tol)


def gamma_prediction(s: Substitution, dec: StarlikeDecomposition, tol: float = 1e-8) -> mpmath.mpf:
    """``lambda(u) + lambda(v) / (Theta^p - 1)``, the value the estimate should approach."""
    rep = growth_types(s, letters=[])
    lu = lambda_sigma(s, dec.u, tol=tol) if dec.u else mpmath.mpf(0)
    lv = lambda_sigma(s, dec.v, tol=tol) if dec.v else mpmath.mpf(0)
    theta = rep.Theta.approx(30)
    return lu + lv / (theta ** dec.p - 1)


@dataclass(frozen=True)
class PeriodicityCertificate:
    kind: str
    witness: EventuallyPeriodicWord | None
    verified: bool
    horizon: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "u": None if self.witness is None else word_str(self.witness.preperiod),
            "v": None if self.witness is None else word_str(self.witness.period),
            "verified": self.verified,
        }


def certify_ultimate_periodicity(s: Substitution, seed: str, max_pre: int = 16, max_per: int = 16,
                                 horizon: int = 10_000) -> PeriodicityCertificate:
    """Search ``x = u v^omega`` with ``|u| <= max_pre``, ``|v| <= max_per``.

    A candidate is accepted only if it matches the first ``horizon`` letters
    and is itself fixed by ``s``; since it starts with ``seed``, that makes
    it the fixed point.  ``none-found`` says nothing about non-periodicity.
    """
    if max_pre < 0 or max_per < 1:
        raise ValueError("need max_pre >= 0 and max_per >= 1")
    horizon = max(horizon, max_pre + 2 * max_per)
    x = _x(s, seed, horizon)
    for lv in range(1, max_per + 1):
        for lu in range(0, max_pre + 1):
            if lu + lv > len(x):
                break
            cand = EventuallyPeriodicWord(x[:lu], x[lu:lu + lv])
            if cand.prefix(horizon) != x:
                continue
            if not apply(s, cand.period):
                continue
            if ep_equal(ep_image(s, cand), cand):
                kind = "periodic" if cand.is_periodic else "ultimately-periodic"
                return PeriodicityCertificate(kind, cand, True, horizon)
    return PeriodicityCertificate("none-found", None, False, horizon)
