"""Substitutions built so that a coding of their fixed point is a prescribed sequence.

Three builders live here:

* ``build_periodic_system``: from a primitive ``sigma`` on B and a period
  word of length p, a substitution ``tau`` on B x {1..p}, the morphism
  ``psi(b) = (b,1)...(b,p)`` with ``tau o psi = psi o sigma``, and a
  letter-to-letter ``phi`` sending the fixed point of ``tau`` to the
  periodic word.
* ``build_zeta_system``: prepends a preperiod ``u`` by passing to the
  (|u|+1)-blocks of ``u z``.
* ``build_block_system``: the n-block substitution ``sigma_n`` of a fixed
  point, with first-letter projection ``rho``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    Alphabet,
    InvalidSeed,
    Morphism,
    Substitution,
    SubstitutionError,
    Word,
    apply,
    as_word,
    as_word_over,
    compose,
    fixed_point_prefix,
    fixed_point_seeds,
    iterate,
)
from .spectral import abelianization, is_primitive


def pair_token(b: str, i: int) -> str:
    return f"({b},{i})"


def block_token(tokens: Sequence[str]) -> str:
    """Name of the letter standing for the block ``tokens``."""
    sep = "" if all(len(t) == 1 for t in tokens) else "|"
    return "(" + sep.join(tokens) + ")"


def _close_blocks(first: Word, image_blocks) -> list[Word]:
    """Blocks reachable from ``first`` under ``image_blocks``, in discovery order."""
    order = [first]
    seen = {first}
    k = 0
    while k < len(order):
        for blk in image_blocks(order[k]):
            if blk not in seen:
                seen.add(blk)
                order.append(blk)
        k += 1
        if len(order) > 100_000:
            raise SubstitutionError("block alphabet did not close within 100000 blocks")
    return order


@dataclass(frozen=True)
class IntertwinedSystem:
    base: Substitution
    built: Substitution
    psi: Morphism
    phi: Morphism
    p: int
    period: Word
    seed: str

    @property
    def tau(self) -> Substitution:
        return self.built

    @property
    def built_seed(self) -> str:
        return pair_token(self.seed, 1)

    def intertwines(self) -> bool:
        return compose(self.built, self.psi).images == compose(self.psi, self.base).images

    def matrices_intertwine(self) -> bool:
        Mt, Mp, Ms = abelianization(self.built), abelianization(self.psi), abelianization(self.base)
        return bool((Mt.dot(Mp) == Mp.dot(Ms)).all())

    def coded_prefix(self, n: int) -> Word:
        """First ``n`` letters of ``phi(z)`` for the fixed point ``z`` of ``tau``."""
        return apply(self.phi, fixed_point_prefix(self.built, self.built_seed, n))

    def to_json(self) -> dict:
        return {
            "kind": "periodic",
            "p": self.p,
            "period": list(self.period),
            "base": _rules(self.base),
            "seed": self.built_seed,
            "psi": _rules(self.psi),
            "phi": {a: img[0] for a, img in self.phi.as_dict().items()},
        }


def _rules(m: Morphism) -> dict[str, list[str]]:
    return {a: list(img) for a, img in m.as_dict().items()}


def build_periodic_system(period: str | Sequence[str], sigma: Substitution,
                          seed: str | None = None) -> IntertwinedSystem:
    """Realise ``period^omega`` as a letter-to-letter image of a fixed point of ``tau``.

    ``phi((b, i))`` is the i-th letter of ``period``.  With ``period`` equal
    to ``1 2 ... p`` this is the plain index map.
    """
    period = as_word(period)
    if not period:
        raise SubstitutionError("period must be non-empty")
    if not is_primitive(abelianization(sigma)):
        raise SubstitutionError("sigma must be primitive")
    seeds = fixed_point_seeds(sigma)
    if seed is None:
        if not seeds:
            raise InvalidSeed("sigma has no fixed-point seed; pass a power of sigma (see condition_c_exponent)")
        seed = seeds[0]
    elif seed not in seeds:
        raise InvalidSeed(f"{seed!r} is not a fixed-point seed of sigma")
    p = len(period)
    B = sigma.alphabet.letters
    D = Alphabet(tuple(pair_token(b, i) for b in B for i in range(1, p + 1)))
    psi = Morphism(sigma.alphabet, D, tuple(tuple(pair_token(b, i) for i in range(1, p + 1)) for b in B))
    images = []
    for b in B:
        big = apply(psi, sigma[b])
        n = len(sigma[b])
        for i in range(1, p + 1):
            images.append(big[(i - 1) * n:i * n])
    tau = Substitution(D, images, validate=False)
    out_letters = tuple(dict.fromkeys(period))
    phi = Morphism(D, Alphabet(out_letters), tuple((period[i - 1],) for b in B for i in range(1, p + 1)))
    return IntertwinedSystem(sigma, tau, psi, phi, p, period, seed)


@dataclass(frozen=True)
class ZetaSystem:
    u: Word
    v_system: IntertwinedSystem
    prefix_letters: tuple[str, ...]
    tau_ext: Morphism
    blocks: dict[str, Word]
    zeta: Substitution
    rho: Morphism
    phi: Morphism

    @property
    def G(self) -> tuple[str, ...]:
        return self.zeta.alphabet.letters

    @property
    def seed(self) -> str:
        return self.G[0]

    def t_prefix(self, n: int) -> Word:
        """First ``n`` letters of ``t = a_1...a_|u| z``."""
        k = len(self.u)
        z = fixed_point_prefix(self.v_system.built, self.v_system.built_seed, max(n - k, 0))
        return (self.prefix_letters + z)[:n]

    def coded_prefix(self, n: int) -> Word:
        """First ``n`` letters of ``phi(t_bar)``, which should read ``u v^omega``."""
        return apply(self.phi, fixed_point_prefix(self.zeta, self.seed, n))

    def to_json(self) -> dict:
        return {
            "kind": "ultimately-periodic",
            "u": list(self.u),
            "period": list(self.v_system.period),
            "prefix_letters": list(self.prefix_letters),
            "tau_ext": _rules(self.tau_ext),
            "blocks": {g: list(b) for g, b in self.blocks.items()},
            "seed": self.seed,
            "rho": {g: img[0] for g, img in self.rho.as_dict().items()},
            "phi": {g: img[0] for g, img in self.phi.as_dict().items()},
        }


def _windows(word: Word, width: int, count: int) -> list[Word]:
    return [word[k:k + width] for k in range(count)]


def _zeta_image(tau: Morphism, block: Word, k: int) -> list[Word]:
    head, a = block[:k], block[k]
    s = apply(tau, head)[-k:]
    ta = tau[a]
    glued = s + ta
    if len(ta) <= k:
        # every window still starts inside s
        return [glued[j:j + k + 1] for j in range(len(ta))]
    # windows starting in s, then windows lying inside tau(a)
    first = [glued[j:j + k + 1] for j in range(k)]
    rest = [ta[j:j + k + 1] for j in range(len(ta) - k)]
    return first + rest


def build_zeta_system(u: str | Sequence[str], v_system: IntertwinedSystem) -> ZetaSystem:
    u = as_word(u)
    if not u:
        raise SubstitutionError("u must be non-empty; use build_periodic_system for periodic words")
    tau = v_system.built
    D = tau.alphabet.letters
    k = len(u)
    if len(set(u)) == k and not set(u) & set(D):
        prefix_letters = u
    else:
        prefix_letters = tuple(f"tok_{i}" for i in range(1, k + 1))
        if set(prefix_letters) & set(D):
            raise SubstitutionError("cannot choose fresh prefix letters")
    F = Alphabet(prefix_letters + D)
    tau_ext = Morphism(F, F, tuple((a,) for a in prefix_letters) + tau.images)
    z = fixed_point_prefix(tau, v_system.built_seed, k + 1)
    first = (prefix_letters + z)[:k + 1]
    order = _close_blocks(first, lambda blk: _zeta_image(tau_ext, blk, k))
    names = [block_token(b) for b in order]
    if len(set(names)) != len(names):
        raise SubstitutionError("block names collide; rename the letters first")
    name_of = dict(zip(order, names))
    images = [tuple(name_of[b] for b in _zeta_image(tau_ext, blk, k)) for blk in order]
    zeta = Substitution(Alphabet(tuple(names)), images, validate=False)
    rho = Morphism(zeta.alphabet, F, tuple((blk[0],) for blk in order))
    letter_out = dict(zip(prefix_letters, u))
    letter_out.update({d: v_system.phi[d][0] for d in D})
    targets = tuple(dict.fromkeys(letter_out[blk[0]] for blk in order))
    phi = Morphism(zeta.alphabet, Alphabet(targets), tuple((letter_out[blk[0]],) for blk in order))
    return ZetaSystem(u, v_system, prefix_letters, tau_ext, dict(zip(names, order)), zeta, rho, phi)


@dataclass(frozen=True)
class BlockSystem:
    base: Substitution
    seed: str
    n: int
    blocks: dict[str, Word]
    sigma_n: Substitution
    rho: Morphism

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.sigma_n.alphabet.letters

    @property
    def seed_block(self) -> str:
        return self.alphabet[0]

    def intertwines(self) -> bool:
        return compose(self.rho, self.sigma_n).images == compose(self.base, self.rho).images

    def block_prefix(self, k: int) -> Word:
        """First ``k`` letters of ``y^(n)``, the fixed point of ``sigma_n``."""
        return fixed_point_prefix(self.sigma_n, self.seed_block, k)

    def to_json(self) -> dict:
        return {
            "kind": "blocks",
            "base": _rules(self.base),
            "n": self.n,
            "seed": self.seed_block,
            "blocks": {g: list(b) for g, b in self.blocks.items()},
            "rho": {g: img[0] for g, img in self.rho.as_dict().items()},
        }


def _block_image(s: Substitution, blk: Word) -> list[Word]:
    return _windows(apply(s, blk), len(blk), len(s[blk[0]]))


def build_block_system(s: Substitution, seed: str, n: int) -> BlockSystem:
    if n < 1:
        raise ValueError("n must be at least 1")
    if seed not in fixed_point_seeds(s):
        raise InvalidSeed(f"{seed!r} is not a fixed-point seed")
    if any(not img for img in s.images):
        raise SubstitutionError("block substitution needs every image to be non-empty")
    first = fixed_point_prefix(s, seed, n)
    order = _close_blocks(first, lambda blk: _block_image(s, blk))
    names = [block_token(b) for b in order]
    if len(set(names)) != len(names):
        raise SubstitutionError("block names collide; rename the letters first")
    name_of = dict(zip(order, names))
    images = [tuple(name_of[b] for b in _block_image(s, blk)) for blk in order]
    sigma_n = Substitution(Alphabet(tuple(names)), images, validate=False)
    rho = Morphism(sigma_n.alphabet, s.alphabet, tuple((blk[0],) for blk in order))
    return BlockSystem(s, seed, n, dict(zip(names, order)), sigma_n, rho)


def indicator_morphism(bs: BlockSystem, u: str | Sequence[str]) -> Morphism:
    """``f(block) = 1`` iff the block spells ``u``; ``f(y^(n))`` marks occurrences of ``u``."""
    u = as_word_over(u, bs.base.alphabet)
    if len(u) != bs.n:
        raise SubstitutionError(f"|u| = {len(u)} but blocks have length {bs.n}")
    bits = Alphabet(("0", "1"))
    return Morphism(bs.sigma_n.alphabet, bits, tuple(("1" if bs.blocks[g] == u else "0",) for g in bs.alphabet))


def rename_blocks(system_blocks: Mapping[str, Word], letters: Mapping[str, str]) -> dict[str, str]:
    """Map block names to the names obtained after renaming their component letters."""
    return {g: block_token([letters.get(t, t) for t in blk]) for g, blk in system_blocks.items()}


def length_identity(z: ZetaSystem, n: int) -> bool:
    """``|zeta^n(g)| == |tau^n(last letter of g)|`` for every block ``g``."""
    tau = z.v_system.built
    for g, blk in z.blocks.items():
        if len(iterate(z.zeta, g, n)) != len(iterate(tau, blk[-1], n)):
            return False
    return True


def verify_sidecar(built: Substitution, sidecar: Mapping, horizon: int = 1000) -> bool:
    """Re-check a written system from its substitution and JSON sidecar alone."""
    kind = sidecar["kind"]
    if kind == "periodic":
        base = Substitution.from_dict(sidecar["base"])
        psi = Morphism.from_dict(sidecar["psi"], target=built.alphabet.letters)
        if compose(built, psi).images != compose(psi, base).images:
            return False
        phi = sidecar["phi"]
        z = fixed_point_prefix(built, sidecar["seed"], horizon)
        period = sidecar["period"]
        return [phi[t] for t in z] == [period[i % len(period)] for i in range(horizon)]
    if kind == "ultimately-periodic":
        u, period = sidecar["u"], sidecar["period"]
        tau = Morphism.from_dict(sidecar["tau_ext"])
        blocks = sidecar["blocks"]
        y = fixed_point_prefix(built, sidecar["seed"], horizon)
        # the block sequence must be the sliding windows of t = rho(y), which tau fixes
        t = [sidecar["rho"][g] for g in y]
        if any(tuple(blocks[g]) != tuple(t[i:i + len(u) + 1]) for i, g in enumerate(y[:horizon - len(u)])):
            return False
        if tuple(apply(tau, t[:horizon // 4]))[:horizon // 4] != tuple(t[:horizon // 4]):
            return False
        want = list(u) + [period[i % len(period)] for i in range(horizon)]
        return [sidecar["phi"][g] for g in y] == want[:horizon]
    if kind == "blocks":
        base = Substitution.from_dict(sidecar["base"])
        rho = {g: img for g, img in sidecar["rho"].items()}
        for g, img in built.as_dict().items():
            if [rho[h] for h in img] != list(base[rho[g]]):
                return False
        y = fixed_point_prefix(built, sidecar["seed"], horizon)
        x = fixed_point_prefix(base, sidecar["rho"][sidecar["seed"]], horizon + sidecar["n"] - 1)
        n = sidecar["n"]
        return all(list(sidecar["blocks"][g]) == list(x[i:i + n]) for i, g in enumerate(y))
    raise SubstitutionError(f"unknown system kind {kind!r}")


__all__ = [
    "verify_sidecar",
    "IntertwinedSystem",
    "ZetaSystem",
    "BlockSystem",
    "build_periodic_system",
    "build_zeta_system",
    "build_block_system",
    "indicator_morphism",
    "rename_blocks",
    "length_identity",
    "block_token",
    "pair_token",
]
