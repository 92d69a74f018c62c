"""Splitting a substitution into primitive components, and the goodness test built on it."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .algebraic import AlgebraicReal, algebraic_compare
from .core import Alphabet, InvalidSeed, Substitution, SubstitutionError, fixed_point_seeds
from .graph import Condensation, boolean_power, successors
from .spectral import abelianization, matrix_power, spectral_radius


class ErasingError(SubstitutionError):
    pass


class PreconditionError(SubstitutionError):
    pass


@dataclass(frozen=True)
class ComponentDecomposition:
    """Ordered partition A_1..A_l making ``M**p`` lower block-triangular.

    Parts ``0..q-1`` are the non-principal ones; the remaining parts are
    the principal (sink) components.  ``order`` lists letter indices in
    part order, so ``permuted()`` is ``M**p`` with rows and columns
    rearranged to the block-triangular form.
    """

    alphabet: tuple[str, ...]
    p: int
    q: int
    parts: tuple[tuple[str, ...], ...]
    kinds: tuple[str, ...]
    matrix: np.ndarray = field(repr=False)
    order: tuple[int, ...] = field(repr=False)

    @property
    def l(self) -> int:
        return len(self.parts)

    @property
    def principal(self) -> tuple[int, ...]:
        return tuple(range(self.q, self.l))

    def part_indices(self, i: int) -> list[int]:
        return [self.alphabet.index(a) for a in self.parts[i]]

    def block(self, i: int, j: int | None = None) -> np.ndarray:
        """Diagonal block M_i, or with ``j`` the block of rows A_j / columns A_i."""
        rows = self.part_indices(i if j is None else j)
        cols = self.part_indices(i)
        return self.matrix[np.ix_(rows, cols)]

    def permuted(self) -> np.ndarray:
        o = list(self.order)
        return self.matrix[np.ix_(o, o)]

    def to_json(self, exponent_condition_c: int | None = None) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "l": self.l,
            "parts": [list(part) for part in self.parts],
            "principal": list(self.principal),
            "blocks": list(self.kinds),
            "exponent_condition_c": exponent_condition_c,
        }


def _check_non_erasing(M: np.ndarray, alphabet: Alphabet) -> None:
    for j, a in enumerate(alphabet):
        if not any(M[i, j] for i in range(M.shape[0])):
            raise ErasingError(f"image of {a!r} is empty (zero column); decomposition needs a non-erasing morphism")


def _ordered_parts(cond: Condensation) -> tuple[list[int], list[int]]:
    topo = cond.topological_order()
    inner = [c for c in topo if not cond.is_sink(c)]
    sinks = sorted((c for c in range(len(cond.components)) if cond.is_sink(c)),
                   key=lambda c: cond.components[c][0])
    return inner, sinks


def decompose(s: Substitution) -> ComponentDecomposition:
    M = abelianization(s)
    _check_non_erasing(M, s.alphabet)
    cond = Condensation(successors(M))
    p = 1
    for c in range(len(cond.components)):
        if cond.period(c):
            p = lcm(p, cond.period(c))
    Mp = matrix_power(M, p)
    condp = Condensation(successors(Mp))
    inner, sinks = _ordered_parts(condp)
    letters = s.alphabet.letters
    parts, kinds, order = [], [], []
    for c in inner + sinks:
        comp = condp.components[c]
        parts.append(tuple(letters[i] for i in comp))
        kinds.append("zero" if condp.is_trivial(c) else "primitive")
        order.extend(comp)
    return ComponentDecomposition(letters, p, len(inner), tuple(parts), tuple(kinds), Mp, tuple(order))


def _first_in(s: Substitution, a: str, k: int, part: set[str], memo: dict) -> str | None:
    """First letter of ``s^k(a)`` lying in ``part``, without building the word."""
    key = (a, k)
    if key in memo:
        return memo[key]
    if k == 0:
        out = a if a in part else None
    else:
        out = None
        for t in s[a]:
            out = _first_in(s, t, k - 1, part, memo)
            if out is not None:
                break
    memo[key] = out
    return out


def condition_c_holds(s: Substitution, k: int) -> bool:
    """Does ``s**k`` satisfy Condition (C)?  Decided from patterns, no word is built."""
    M = abelianization(s)
    B = boolean_power(np.asarray(M > 0, dtype=bool), k)
    cond = Condensation([[i for i in range(B.shape[0]) if B[i, j]] for j in range(B.shape[0])])
    letters = s.alphabet.letters
    for c, comp in enumerate(cond.components):
        if cond.is_trivial(c):
            continue
        # C1: no periodic class left
        if cond.period(c) != 1:
            return False
        # C2: non-zero diagonal blocks are positive
        if not B[np.ix_(comp, comp)].all():
            return False
        # C3: some letter of the part starts its projected image; for [1] blocks this is automatic
        part = {letters[i] for i in comp}
        memo: dict = {}
        if not any(_first_in(s, letters[i], k, part, memo) == letters[i] for i in comp):
            return False
    return True


def condition_c_exponent(s: Substitution, max_k: int = 512) -> int:
    """Least ``k`` such that ``s**k`` satisfies Condition (C)."""
    _check_non_erasing(abelianization(s), s.alphabet)
    for k in range(1, max_k + 1):
        if condition_c_holds(s, k):
            return k
    raise SubstitutionError(f"no power up to {max_k} satisfies Condition (C)")


@dataclass(frozen=True)
class SubSubstitution:
    index: int
    substitution: Substitution
    kind: str
    eigenvalue: AlgebraicReal

    @property
    def is_main(self) -> bool:
        return self.kind == "main"


def _project(word, part: set[str]):
    return tuple(t for t in word if t in part)


def sub_substitutions(s: Substitution) -> list[SubSubstitution]:
    """Main and non-main sub-substitutions of ``s``.

    ``s`` must already be in block form without passing to a power (p = 1);
    raise it to ``decompose(s).p`` or ``condition_c_exponent(s)`` first.
    """
    dec = decompose(s)
    if dec.p != 1:
        raise PreconditionError(f"matrix needs power p={dec.p} to reach block form; pass s.power({dec.p})")
    out = []
    for i, part in enumerate(dec.parts):
        if dec.kinds[i] == "zero":
            continue
        block = dec.block(i)
        if block.shape == (1, 1) and block[0, 0] == 1:
            continue
        pset = set(part)
        images = [_project(s[a], pset) for a in part]
        sub = Substitution(Alphabet(part), images, validate=False)
        kind = "main" if i >= dec.q else "non-main"
        out.append(SubSubstitution(i, sub, kind, spectral_radius(block)))
    return out


@dataclass(frozen=True)
class GoodnessVerdict:
    good: bool
    witness: SubSubstitution | None
    Theta: AlgebraicReal
    power: int
    subs: tuple[SubSubstitution, ...]

    @property
    def main(self) -> tuple[SubSubstitution, ...]:
        return tuple(x for x in self.subs if x.is_main)

    def to_json(self) -> dict:
        return {
            "good": self.good,
            "power": self.power,
            "Theta": self.Theta.to_json(),
            "witness": None if self.witness is None else {
                "part": list(self.witness.substitution.alphabet),
                "eigenvalue": self.witness.eigenvalue.to_json(),
            },
            "sub_substitutions": [
                {"part": list(x.substitution.alphabet), "kind": x.kind, "eigenvalue": x.eigenvalue.to_json()}
                for x in self.subs
            ],
        }


def is_good(s: Substitution) -> GoodnessVerdict:
    """Good iff some main sub-substitution has the dominant eigenvalue of ``s``.

    Eigenvalues are those of ``s**p`` where ``p`` is the decomposition power.
    """
    p = decompose(s).p
    t = s if p == 1 else s.power(p)
    Theta = spectral_radius(abelianization(t))
    subs = sub_substitutions(t)
    witness = next((x for x in subs if x.is_main and algebraic_compare(x.eigenvalue, Theta) == 0), None)
    return GoodnessVerdict(witness is not None, witness, Theta, p, tuple(subs))


def letters_infinitely_often(s: Substitution, seed: str) -> set[str]:
    """Letters occurring infinitely often in the fixed point seeded by ``seed``."""
    if seed not in fixed_point_seeds(s):
        raise InvalidSeed(f"{seed!r} is not a fixed-point seed")
    table = s.as_dict()
    current = frozenset(s[seed][1:])
    seen: dict[frozenset, int] = {}
    history: list[frozenset] = []
    while current not in seen:
        seen[current] = len(history)
        history.append(current)
        current = frozenset(t for a in current for t in table[a])
    cycle = history[seen[current]:]
    return set().union(*cycle)
