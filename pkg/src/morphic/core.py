"""Words over token alphabets, and the morphisms acting on them.

Letters are arbitrary whitespace-free string tokens, so ``"(a,1)"`` or
``"(cA)"`` are fine letters.  A word is a tuple of tokens.

Text format, one rule per line::

    # Fibonacci
    a -> a b
    b -> a

``#`` starts a comment line and an empty image is written ``a -> .``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Mapping, Sequence

Word = tuple[str, ...]


class SubstitutionError(ValueError):
    """Base class for domain errors raised by this package."""


class ParseError(SubstitutionError):
    pass


class NotASubstitution(SubstitutionError):
    """A morphism some letter of which does not grow under iteration."""


class InvalidSeed(SubstitutionError):
    pass


def as_word(w: str | Iterable[str]) -> Word:
    """Coerce to a word.

    A string containing whitespace is split on it; any other string is read
    one character per letter.  Sequences of tokens are taken as they are.
    """
    if isinstance(w, str):
        return tuple(w.split()) if any(c.isspace() for c in w) else tuple(w)
    return tuple(w)


def as_word_over(w: str | Iterable[str], alphabet: "Alphabet") -> Word:
    """Like :func:`as_word`, but a string naming a letter of ``alphabet`` is that one letter."""
    if isinstance(w, str) and w in alphabet:
        return (w,)
    return as_word(w)


def word_str(w: Sequence[str]) -> str:
    """Render a word; single-character alphabets are joined without spaces."""
    if all(len(t) == 1 for t in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise SubstitutionError("alphabet must be non-empty")
        if len(set(letters)) != len(letters):
            raise SubstitutionError(f"duplicate letters in alphabet {letters}")
        for t in letters:
            if not t or any(c.isspace() for c in t):
                raise SubstitutionError(f"invalid letter token {t!r}")
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(letters)})

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter: object) -> bool:
        return letter in self._index

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise SubstitutionError(f"letter {letter!r} not in alphabet") from None


@dataclass(frozen=True)
class Morphism:
    source: Alphabet
    target: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        images = tuple(tuple(w) for w in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(self.source):
            raise SubstitutionError("every source letter needs exactly one image")
        for a, img in zip(self.source, images):
            for t in img:
                if t not in self.target:
                    raise SubstitutionError(f"image of {a!r} uses {t!r}, not in target alphabet")

    @classmethod
    def from_dict(cls, rules: Mapping[str, str | Iterable[str]], target: Iterable[str] | None = None) -> "Morphism":
        source = Alphabet(tuple(rules))
        images = tuple(as_word(w) for w in rules.values())
        if target is None:
            seen: dict[str, None] = {}
            for img in images:
                seen.update(dict.fromkeys(img))
            target = tuple(seen)
        return cls(source, Alphabet(tuple(target)), images)

    def __getitem__(self, letter: str) -> Word:
        return self.images[self.source.index(letter)]

    def as_dict(self) -> dict[str, Word]:
        return dict(zip(self.source.letters, self.images))

    @property
    def is_letter_to_letter(self) -> bool:
        return all(len(w) == 1 for w in self.images)

    def __call__(self, w: str | Iterable[str]) -> Word:
        return apply(self, w)


def apply(m: Morphism, w: str | Iterable[str]) -> Word:
    table = m.as_dict()
    out: list[str] = []
    for t in as_word(w):
        try:
            out.extend(table[t])
        except KeyError:
            raise SubstitutionError(f"letter {t!r} not in source alphabet") from None
    return tuple(out)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """The morphism ``f o g`` (apply ``g`` first)."""
    if g.target.letters != f.source.letters and not all(t in f.source for t in g.target):
        raise SubstitutionError("cannot compose: target of g not inside source of f")
    return Morphism(g.source, f.target, tuple(apply(f, img) for img in g.images))


class Substitution(Morphism):
    """An endomorphism every letter of which has unbounded iterates.

    Construction checks validity through the growth types of the letters;
    pass ``validate=False`` only for internally built objects already
    known to be valid.
    """

    def __init__(self, alphabet: Alphabet, images: Sequence[Sequence[str]], validate: bool = True):
        super().__init__(alphabet, alphabet, tuple(tuple(w) for w in images))
        object.__setattr__(self, "_prefix_cache", {})
        object.__setattr__(self, "_lock", threading.Lock())
        if validate:
            from .spectral import check_valid

            check_valid(self)

    # dataclass-generated __eq__/__hash__ on Morphism cover source/target/images
    __hash__ = Morphism.__hash__

    @classmethod
    def from_dict(cls, rules: Mapping[str, str | Iterable[str]], validate: bool = True) -> "Substitution":
        alphabet = Alphabet(tuple(rules))
        return cls(alphabet, [as_word(w) for w in rules.values()], validate=validate)

    @property
    def alphabet(self) -> Alphabet:
        return self.source

    def __repr__(self) -> str:
        rules = ", ".join(f"{a}->{word_str(w) or '.'}" for a, w in zip(self.alphabet, self.images))
        return f"Substitution({rules})"

    def power(self, k: int) -> "Substitution":
        if k < 1:
            raise ValueError("power must be positive")
        return Substitution(self.alphabet, [iterate(self, a, k) for a in self.alphabet], validate=False)

    def rename(self, mapping: Mapping[str, str]) -> "Substitution":
        new = Alphabet(tuple(mapping.get(a, a) for a in self.alphabet))
        images = [tuple(mapping.get(t, t) for t in w) for w in self.images]
        return Substitution(new, images, validate=False)


def parse_substitution(text: str) -> Substitution:
    rules: dict[str, Word] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise ParseError(f"line {lineno}: expected '<token> -> <tokens>'")
        lhs, rhs = line.split("->", 1)
        lhs_tokens = lhs.split()
        if len(lhs_tokens) != 1:
            raise ParseError(f"line {lineno}: left side must be a single token")
        (a,) = lhs_tokens
        if a in rules:
            raise ParseError(f"line {lineno}: duplicate rule for {a!r}")
        rhs_tokens = rhs.split()
        if rhs_tokens == ["."]:
            rhs_tokens = []
        elif not rhs_tokens:
            raise ParseError(f"line {lineno}: empty right side must be written '.'")
        rules[a] = tuple(rhs_tokens)
    if not rules:
        raise ParseError("no rules found")
    for a, img in rules.items():
        for t in img:
            if t not in rules:
                raise ParseError(f"token {t!r} in image of {a!r} has no rule")
    return Substitution(Alphabet(tuple(rules)), list(rules.values()))


def format_substitution(s: Morphism) -> str:
    lines = []
    for a, img in zip(s.source, s.images):
        lines.append(f"{a} -> {' '.join(img) if img else '.'}")
    return "\n".join(lines) + "\n"


def iterate(s: Morphism, a: str, n: int) -> Word:
    if n < 0:
        raise ValueError("n must be non-negative")
    w: Word = (a,)
    s.source.index(a)
    for _ in range(n):
        w = apply(s, w)
    return w


def fixed_point_seeds(s: Substitution) -> list[str]:
    return [a for a, img in zip(s.alphabet, s.images) if len(img) >= 2 and img[0] == a]


def fixed_point_prefix(s: Substitution, seed: str, n: int) -> Word:
    """First ``n`` letters of the fixed point ``lim s^k(seed)``."""
    if seed not in fixed_point_seeds(s):
        raise InvalidSeed(f"{seed!r} does not start its own image with a non-empty tail")
    cache: dict = s._prefix_cache  # type: ignore[attr-defined]
    with s._lock:  # type: ignore[attr-defined]
        w = cache.get(seed, (seed,))
        while len(w) < n:
            w = apply(s, w)
        cache[seed] = w
    return w[:n]


def letters_reachable(s: Morphism, start: Iterable[str]) -> set[str]:
    table = s.as_dict()
    seen = set(start)
    todo = list(seen)
    while todo:
        a = todo.pop()
        for t in table[a]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def is_proper_fixed_point(s: Substitution, seed: str) -> bool:
    if seed not in fixed_point_seeds(s):
        raise InvalidSeed(f"{seed!r} is not a fixed-point seed")
    return letters_reachable(s, [seed]) == set(s.alphabet)


def least_period(v: Sequence[str]) -> int:
    """Least ``d`` with ``v[i] == v[i + d]`` for all valid ``i`` (shift period)."""
    v = tuple(v)
    if not v:
        raise ValueError("empty word has no period")
    # prefix function
    n = len(v)
    pi = [0] * n
    for i in range(1, n):
        k = pi[i - 1]
        while k and v[i] != v[k]:
            k = pi[k - 1]
        if v[i] == v[k]:
            k += 1
        pi[i] = k
    return n - pi[-1]


def primitive_root(v: Sequence[str]) -> Word:
    v = tuple(v)
    d = least_period(v)
    return v[:d] if len(v) % d == 0 else v


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """The infinite word ``preperiod . period^omega``, kept in canonical form."""

    preperiod: Word
    period: Word

    def __post_init__(self):
        u, v = tuple(self.preperiod), tuple(self.period)
        if not v:
            raise SubstitutionError("period must be non-empty")
        v = primitive_root(v)
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = (v[-1],) + v[:-1]
        object.__setattr__(self, "preperiod", u)
        object.__setattr__(self, "period", v)

    @classmethod
    def of(cls, u: str | Iterable[str], v: str | Iterable[str]) -> "EventuallyPeriodicWord":
        return cls(as_word(u), as_word(v))

    def prefix(self, n: int) -> Word:
        u, v = self.preperiod, self.period
        if n <= len(u):
            return u[:n]
        k = n - len(u)
        reps = -(-k // len(v))
        return (u + v * reps)[:n]

    def __getitem__(self, i: int) -> str:
        u, v = self.preperiod, self.period
        return u[i] if i < len(u) else v[(i - len(u)) % len(v)]

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod


def ep_equal(x: EventuallyPeriodicWord, y: EventuallyPeriodicWord) -> bool:
    """Letterwise equality of two eventually periodic words, decided on a finite prefix."""
    bound = (max(len(x.preperiod), len(y.preperiod)) + lcm(len(x.period), len(y.period))
             + max(len(x.period), len(y.period)))
    return x.prefix(bound) == y.prefix(bound)


def ep_image(m: Morphism, x: EventuallyPeriodicWord) -> EventuallyPeriodicWord:
    """Image ``m(u) . m(v)^omega``; ``m(v)`` must be non-empty."""
    return EventuallyPeriodicWord(apply(m, x.preperiod), apply(m, x.period))
