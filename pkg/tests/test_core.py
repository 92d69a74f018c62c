import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from morphic.core import (
    EventuallyPeriodicWord,
    InvalidSeed,
    Morphism,
    NotASubstitution,
    ParseError,
    Substitution,
    apply,
    as_word,
    compose,
    ep_equal,
    ep_image,
    fixed_point_prefix,
    fixed_point_seeds,
    format_substitution,
    is_proper_fixed_point,
    iterate,
    least_period,
    parse_substitution,
    primitive_root,
)

tokens = st.sampled_from(["a", "b", "c", "(a,1)", "x0"])
words = st.lists(tokens, max_size=8).map(tuple)


@st.composite
def morphisms(draw):
    letters = draw(st.lists(tokens, min_size=1, max_size=5, unique=True))
    images = [tuple(draw(st.lists(st.sampled_from(letters), max_size=4))) for _ in letters]
    return Morphism.from_dict(dict(zip(letters, images)), target=letters)


def test_word_coercion():
    assert as_word("abc") == ("a", "b", "c")
    assert as_word("(a,1) b") == ("(a,1)", "b")
    assert as_word(["ab", "c"]) == ("ab", "c")


def test_parse_with_comments_and_multichar_tokens():
    s = parse_substitution("# demo\n(a,1) -> (a,1) b\n\nb -> (a,1)\n")
    assert s.alphabet.letters == ("(a,1)", "b")
    assert s["(a,1)"] == ("(a,1)", "b")


@pytest.mark.parametrize("text", ["a -> a b\na -> b\nb -> a", "a b -> a", "a = ab", "a -> a b c\nb -> a"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_substitution(text)


def test_bounded_letter_rejected():
    with pytest.raises(NotASubstitution):
        Substitution.from_dict({"a": "a"})
    with pytest.raises(NotASubstitution):
        Substitution.from_dict({"a": "ab", "b": "b"})


@settings(max_examples=100, deadline=None)
@given(morphisms())
def test_format_parse_round_trip(m):
    try:
        s = Substitution(m.source, m.images)
    except NotASubstitution:
        assume(False)
    assert parse_substitution(format_substitution(s)) == s


@settings(max_examples=100, deadline=None)
@given(morphisms(), words, words)
def test_apply_is_a_morphism(m, u, v):
    u = tuple(t for t in u if t in m.source)
    v = tuple(t for t in v if t in m.source)
    assert apply(m, u + v) == apply(m, u) + apply(m, v)


@settings(max_examples=60, deadline=None)
@given(morphisms(), st.data())
def test_compose_order(f, data):
    letters = list(f.source)
    g = Morphism.from_dict({a: data.draw(st.lists(st.sampled_from(letters), max_size=3)) for a in letters},
                           target=letters)
    fg = compose(f, g)
    for a in g.source:
        assert fg[a] == apply(f, apply(g, (a,)))


def test_power_matches_iterate():
    s = Substitution.from_dict({"a": "ab", "b": "a"})
    s5 = s.power(5)
    for a in s.alphabet:
        assert s5[a] == iterate(s, a, 5)
    assert len(iterate(s, "a", 10)) == 144


def test_fixed_point_prefix():
    s = Substitution.from_dict({"a": "ab", "b": "a"})
    assert fixed_point_seeds(s) == ["a"]
    assert "".join(fixed_point_prefix(s, "a", 13)) == "abaababaabaab"
    assert is_proper_fixed_point(s, "a")
    with pytest.raises(InvalidSeed):
        fixed_point_prefix(s, "b", 5)
    aac = Substitution.from_dict({"a": "aac", "c": "cc"})
    assert is_proper_fixed_point(aac, "a")
    assert not is_proper_fixed_point(Substitution.from_dict({"a": "ab", "b": "bb", "c": "cb"}), "a")


def _brute_period(v):
    return next(d for d in range(1, len(v) + 1) if all(v[i] == v[i + d] for i in range(len(v) - d)))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from("ab"), min_size=1, max_size=30).map(tuple))
def test_least_period_brute_force(v):
    assert least_period(v) == _brute_period(v)
    r = primitive_root(v)
    assert r * (len(v) // len(r)) == v


@settings(max_examples=150, deadline=None)
@given(words, words.filter(bool), words, words.filter(bool))
def test_ep_equal_against_long_prefix(u1, v1, u2, v2):
    x = EventuallyPeriodicWord(u1, v1)
    y = EventuallyPeriodicWord(u2, v2)
    assert ep_equal(x, y) == (x.prefix(500) == y.prefix(500))


@settings(max_examples=100, deadline=None)
@given(words, words.filter(bool))
def test_canonical_form_is_stable(u, v):
    x = EventuallyPeriodicWord(u, v)
    assert ep_equal(x, EventuallyPeriodicWord(u + v, v + v))
    assert x.prefix(60) == (u + v * 60)[:60]
    assert len(x.period) == len(primitive_root(x.period))


def test_ep_image():
    m = Morphism.from_dict({"a": "abb", "b": "bb"})
    x = EventuallyPeriodicWord.of("a", "b")
    assert ep_equal(ep_image(m, x), x)
    assert ep_image(m, x).prefix(5) == tuple("abbbb")
