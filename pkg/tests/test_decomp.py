import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import NAMED, RANDOM_SEEDS, random_primitive, sub
from oracles import block_pattern_ok, condition_c_literal, positive_within
from morphic.algebraic import AlgebraicReal, algebraic_compare, golden_ratio
from morphic.core import Substitution
from morphic.decomp import (
    ErasingError,
    PreconditionError,
    condition_c_exponent,
    decompose,
    is_good,
    letters_infinitely_often,
    sub_substitutions,
)
from morphic.spectral import abelianization, spectral_radius

CORPUS = sorted(NAMED)


def test_aa0_decomposition():
    d = decompose(sub("aa0"))
    assert d.parts == (("a",), ("0", "1")) and d.q == 1 and d.l == 2 and d.p == 1
    assert d.principal == (1,)


def test_tau_decomposition():
    d = decompose(sub("tau"))
    assert d.parts == (("a",), ("b", "c")) and d.q == 1 and d.p == 1
    assert d.kinds == ("primitive", "primitive")


def test_fibonacci_is_one_part():
    d = decompose(sub("fibonacci"))
    assert d.l == 1 and d.q == 0 and d.p == 1


def test_periodic_class_needs_power():
    d = decompose(Substitution.from_dict({"a": "aab", "b": "cc", "c": "bbb"}))
    assert d.p == 2
    assert d.parts == (("a",), ("b",), ("c",))


def test_erasing_rejected():
    s = Substitution.from_dict({"a": "aab", "b": ""}, validate=False)
    with pytest.raises(ErasingError):
        decompose(s)


@pytest.mark.parametrize("name, k", [
    ("fibonacci", 2), ("thue_morse", 1), ("aa0", 2), ("tau", 2), ("abab", 1), ("period_doubling", 2),
])
def test_condition_c_exponents(name, k):
    assert condition_c_exponent(sub(name)) == k


def test_swap_first_letters():
    assert condition_c_exponent(Substitution.from_dict({"a": "ba", "b": "ab"})) == 2


@pytest.mark.parametrize("name", CORPUS)
def test_exponent_is_least_and_literal(name):
    s = sub(name)
    k = condition_c_exponent(s)
    assert condition_c_literal(s, k)
    assert not any(condition_c_literal(s, j) for j in range(1, k))


@pytest.mark.parametrize("name", CORPUS)
def test_block_pattern_and_wielandt(name):
    d = decompose(sub(name))
    assert d.q <= d.l - 1
    assert block_pattern_ok(d)
    for i, kind in enumerate(d.kinds):
        B = d.block(i)
        if kind == "primitive":
            n = B.shape[0]
            assert positive_within(B, (n - 1) ** 2 + 1) is not None
        else:
            assert not B.any()


@pytest.mark.parametrize("name", CORPUS)
def test_principal_parts_are_closed(name):
    s = sub(name)
    d = decompose(s)
    t = s.power(d.p)
    for i in d.principal:
        part = set(d.parts[i])
        assert all(set(t[a]) <= part for a in part)


@pytest.mark.parametrize("name", CORPUS)
def test_theta_is_max_block_eigenvalue(name):
    s = sub(name)
    d = decompose(s)
    Theta = spectral_radius(d.matrix)
    best = max((spectral_radius(d.block(i)) for i in range(d.l)),
               key=lambda x: x.approx(30))
    assert algebraic_compare(Theta, best) == 0


def test_sub_substitutions_of_aa0():
    subs = sub_substitutions(sub("aa0"))
    main = [x for x in subs if x.is_main]
    other = [x for x in subs if not x.is_main]
    assert [x.substitution.as_dict() for x in main] == [{"0": ("0", "1"), "1": ("0",)}]
    assert main[0].eigenvalue == golden_ratio()
    assert [x.substitution.as_dict() for x in other] == [{"a": ("a", "a")}]
    assert other[0].eigenvalue == AlgebraicReal.rational(2)


def test_sub_substitutions_of_tau():
    subs = sub_substitutions(sub("tau"))
    by_kind = {x.kind: x for x in subs}
    assert by_kind["main"].substitution.as_dict() == {"b": ("b", "c"), "c": ("b",)}
    assert by_kind["non-main"].substitution.as_dict() == {"a": ("a", "a", "a")}
    assert by_kind["non-main"].eigenvalue == AlgebraicReal.rational(3)


def test_unit_blocks_are_skipped():
    subs = sub_substitutions(sub("aac"))
    assert [x.substitution.alphabet.letters for x in subs] == [("a",), ("c",)]
    s = Substitution.from_dict({"a": "ab", "b": "bc", "c": "cc"})
    assert [x.substitution.alphabet.letters for x in sub_substitutions(s)] == [("c",)]


def test_sub_substitutions_needs_block_form():
    with pytest.raises(PreconditionError):
        sub_substitutions(Substitution.from_dict({"a": "aab", "b": "cc", "c": "bbb"}))


def test_main_matrix_equals_block():
    s = sub("two_speeds")
    d = decompose(s)
    for x in sub_substitutions(s):
        assert (abelianization(x.substitution) == d.block(x.index)).all()


def test_goodness_examples():
    v = is_good(sub("aa0"))
    assert not v.good and v.witness is None
    assert v.Theta == AlgebraicReal.rational(2)
    assert [x.eigenvalue for x in v.main] == [golden_ratio()]
    assert not is_good(sub("tau")).good
    for name in ["fibonacci", "thue_morse", "abab", "period_doubling", "rudin_shapiro"]:
        v = is_good(sub(name))
        assert v.good and algebraic_compare(v.witness.eigenvalue, v.Theta) == 0


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
def test_primitive_is_good(seed):
    assert is_good(random_primitive(seed)).good


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4), st.data())
def test_constant_length_is_good(k, length, data):
    letters = "abcd"[:k]
    rules = {a: "".join(data.draw(st.lists(st.sampled_from(letters), min_size=length, max_size=length)))
             for a in letters}
    try:
        s = Substitution.from_dict(rules)
    except ValueError:
        return
    assert is_good(s).good


def test_letters_infinitely_often():
    assert letters_infinitely_often(sub("tau"), "a") == {"a", "b", "c"}
    assert letters_infinitely_often(sub("abb"), "a") == {"b"}
    assert letters_infinitely_often(sub("fibonacci"), "a") == {"a", "b"}
    assert letters_infinitely_often(sub("aac"), "a") == {"a", "c"}


@pytest.mark.parametrize("name", ["tau", "abb", "aac", "two_speeds", "triangular", "fibonacci"])
def test_infinitely_often_against_prefix(name):
    from morphic.core import fixed_point_prefix, fixed_point_seeds

    s = sub(name)
    seed = fixed_point_seeds(s)[0]
    x = fixed_point_prefix(s, seed, 20000)
    tail = set(x[10000:])
    assert letters_infinitely_often(s, seed) == tail
