"""Substitutions shared by the test modules."""
import random

from morphic.core import Substitution
from morphic.construct import build_periodic_system
from morphic.spectral import abelianization, is_primitive

NAMED = {
    "fibonacci": {"a": "ab", "b": "a"},
    "thue_morse": {"a": "ab", "b": "ba"},
    "tau": {"a": "aaab", "b": "bc", "c": "b"},
    "aa0": {"a": "aa0", "0": "01", "1": "0"},
    "aac": {"a": "aac", "c": "cc"},
    "abb": {"a": "abb", "b": "bb"},
    "abab": {"a": "ab", "b": "ab"},
    "period_doubling": {"a": "ab", "b": "aa"},
    "tribonacci": {"a": "ab", "b": "ac", "c": "a"},
    "rudin_shapiro": {"a": "ab", "b": "ac", "c": "db", "d": "dc"},
    "baum_sweet": {"A": "AB", "B": "CB", "C": "BD", "D": "DD"},
    "paperfolding": {"a": "ab", "b": "cb", "c": "ad", "d": "cd"},
    "pisot_cubic": {"a": "aab", "b": "c", "c": "a"},
    "smallest_pisot": {"a": "b", "b": "c", "c": "ab"},
    "triangular": {"a": "abc", "b": "bc", "c": "cc"},
    "two_speeds": {"a": "aabx", "b": "bbb", "x": "xy", "y": "x"},
    "polynomial_chain": {"a": "aab", "b": "bbc", "c": "cc"},
    "eight_letters": {"a": "ab", "b": "cd", "c": "ef", "d": "gh", "e": "ha", "f": "gb", "g": "fc", "h": "ed"},
}


def sub(name: str) -> Substitution:
    return Substitution.from_dict(NAMED[name])


def random_primitive(seed: int, max_letters: int = 5) -> Substitution:
    """A primitive substitution on a..., whose first letter starts its own image."""
    rng = random.Random(seed)
    while True:
        k = rng.randint(2, max_letters)
        letters = "abcdefgh"[:k]
        rules = {}
        for i, a in enumerate(letters):
            n = rng.randint(1, 4)
            img = [rng.choice(letters) for _ in range(n)]
            if i == 0:
                img = [a] + img
            rules[a] = "".join(img)
        try:
            s = Substitution.from_dict(rules)
        except ValueError:
            continue
        if is_primitive(abelianization(s)):
            return s


def constructed_periodic() -> Substitution:
    return build_periodic_system("12", sub("fibonacci")).built


RANDOM_SEEDS = [3, 11, 17, 29, 41, 53, 67]
