from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import NAMED, RANDOM_SEEDS, random_primitive, sub
from morphic.algebraic import AlgebraicReal, golden_ratio
from morphic.core import Morphism, NotASubstitution, Substitution, iterate
from morphic.spectral import (
    ConvergenceError,
    GrowthType,
    abelianization,
    char_poly,
    growth_pairs,
    growth_types,
    is_primitive,
    lambda_sigma,
    matrix_power,
    sampling_period,
    spectral_radius,
    word_lengths,
)

small_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=n, max_size=n))


def test_abelianization_columns_are_images():
    M = abelianization(sub("tau"))
    assert M.tolist() == [[3, 0, 0], [1, 1, 1], [0, 1, 0]]


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_char_poly_matches_sympy(rows):
    expected = sympy.Matrix(rows).charpoly().all_coeffs()
    assert list(char_poly(np.array(rows)).coeffs) == [int(c) for c in expected]


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_spectral_radius_matches_numpy(rows):
    M = np.array(rows)
    expected = max(abs(np.linalg.eigvals(M.astype(float)))) if M.size else 0.0
    assert abs(float(spectral_radius(M)) - expected) < 1e-6 * max(1.0, expected)


@settings(max_examples=30, deadline=None)
@given(small_matrices, st.integers(0, 7))
def test_matrix_power_exact(rows, k):
    M = sympy.Matrix(rows)
    assert matrix_power(np.array(rows), k).tolist() == (M ** k).tolist()


def test_radius_is_exact():
    assert spectral_radius(abelianization(sub("fibonacci"))) == golden_ratio()
    assert spectral_radius(abelianization(sub("tau"))) == AlgebraicReal.rational(3)
    assert str(spectral_radius(abelianization(sub("aa0")))) == "2"


def test_primitivity():
    assert is_primitive(abelianization(sub("fibonacci")))
    assert is_primitive(abelianization(sub("eight_letters")))
    assert not is_primitive(abelianization(sub("tau")))
    assert not is_primitive(np.array([[0, 1], [1, 0]]))


def test_growth_pairs_of_tau():
    g = growth_pairs(sub("tau"))
    assert g["a"] == GrowthType(0, AlgebraicReal.rational(3))
    assert g["b"] == GrowthType(0, golden_ratio())
    assert g["c"] == GrowthType(0, golden_ratio())
    assert g["a"] > g["b"]


def test_polynomial_growth_orders():
    g = growth_pairs(sub("polynomial_chain"))
    assert [g[a].d for a in "abc"] == [2, 1, 0]
    assert all(g[a].theta == AlgebraicReal.rational(2) for a in "abc")
    assert g["a"] > g["b"] > g["c"]
    # only c has a loop of weight 2, the others just feed into it
    tri = growth_pairs(sub("triangular"))
    assert [tri[a].d for a in "abc"] == [0, 0, 0]


def test_growth_report_of_tau():
    rep = growth_types(sub("tau"))
    assert rep.D == 0 and rep.Theta == AlgebraicReal.rational(3)
    assert rep.A_max == ("a",)
    assert abs(rep.c_estimates["a"].value - mpmath.mpf("1.8")) < 1e-9


def test_invalid_substitution_messages():
    with pytest.raises(NotASubstitution, match="bounded"):
        Substitution.from_dict({"a": "ab", "b": "b"})
    with pytest.raises(NotASubstitution, match="erased"):
        Substitution.from_dict({"a": "aab", "b": ""})


def _pf_constants(M):
    """c(a) for a primitive matrix from exact Perron eigenvectors."""
    S = sympy.Matrix(M.tolist())
    theta = max(S.eigenvals(), key=lambda e: sympy.re(sympy.N(e)))
    r = (S - theta * sympy.eye(S.rows)).nullspace()[0]
    left = (S.T - theta * sympy.eye(S.rows)).nullspace()[0]
    ones = sympy.ones(1, S.rows)
    norm = (left.T * r)[0]
    return [sympy.N((ones * r)[0] * left[j] / norm, 30) for j in range(S.rows)]


@pytest.mark.parametrize("name", ["fibonacci", "thue_morse", "tribonacci", "pisot_cubic", "smallest_pisot"])
def test_constants_against_eigenvectors(name):
    s = sub(name)
    rep = growth_types(s)
    exact = _pf_constants(abelianization(s))
    for a, c in zip(s.alphabet, exact):
        assert abs(rep.c_estimates[a].value - mpmath.mpf(str(c))) < 1e-9


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
def test_constants_of_random_primitive(seed):
    s = random_primitive(seed)
    rep = growth_types(s)
    M = abelianization(s).astype(float)
    w, V = np.linalg.eig(M)
    k = int(np.argmax(w.real))
    r = np.real(V[:, k])
    wl, U = np.linalg.eig(M.T)
    left = np.real(U[:, int(np.argmax(wl.real))])
    for j, a in enumerate(s.alphabet):
        expected = r.sum() * left[j] / left.dot(r)
        assert abs(float(rep.c_estimates[a].value) - expected) < 1e-7 * max(1, abs(expected))


def _jordan_leading(s, letter, d, theta):
    """Coefficient of n^d theta^n in the closed form of |s^n(letter)|."""
    n = sympy.Symbol("n", integer=True, nonnegative=True)
    S = sympy.Matrix(abelianization(s).tolist())
    P, J = S.jordan_form()
    Jn = sympy.zeros(*J.shape)
    # J^n entry-wise for upper-triangular Jordan blocks
    i = 0
    while i < J.rows:
        lam = J[i, i]
        size = 1
        while i + size < J.rows and J[i + size - 1, i + size] == 1 and J[i + size, i + size] == lam:
            size += 1
        for a in range(size):
            for b in range(a, size):
                Jn[i + a, i + b] = sympy.binomial(n, b - a) * lam ** (n - (b - a))
        i += size
    col = (sympy.ones(1, S.rows) * P * Jn * P.inv())[:, s.alphabet.index(letter)][0]
    expr = sympy.expand(sympy.simplify(col / theta ** n))
    return sympy.Poly(sympy.expand_func(expr), n).coeff_monomial(n ** d) if d else sympy.limit(expr, n, sympy.oo)


@pytest.mark.parametrize("name", ["polynomial_chain", "triangular", "aac"])
def test_constants_with_polynomial_factor(name):
    s = sub(name)
    rep = growth_types(s)
    for a in s.alphabet:
        g = rep.types[a]
        expected = _jordan_leading(s, a, g.d, sympy.Integer(int(g.theta.lo)))
        assert abs(rep.c_estimates[a].value - mpmath.mpf(str(sympy.N(expected, 30)))) < 1e-8


def test_constants_sampled_on_period():
    # b and c swap, so |s^n(a)| / 2^n only converges along even n
    s = Substitution.from_dict({"a": "aab", "b": "cc", "c": "bbb"})
    assert sampling_period(abelianization(s)) == 2
    rep = growth_types(s)
    assert rep.sampling_step == 2
    for a in s.alphabet:
        assert rep.c_estimates[a].converged
    n = 400
    lens = word_lengths(s, n)
    theta = rep.types["a"].theta.approx(60)
    with mpmath.workdps(60):
        assert abs(lens["a"] / theta ** n - rep.c_estimates["a"].value) < 1e-6


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(NAMED)), st.integers(1, 12))
def test_word_lengths_match_iteration(name, n):
    s = sub(name)
    lens = word_lengths(s, n)
    for a in s.alphabet:
        assert lens[a] == len(iterate(s, a, n))


def test_lambda_sigma_is_additive():
    s = sub("tau")
    assert abs(lambda_sigma(s, "aab") - 2 * mpmath.mpf("1.8")) < 1e-8
    assert lambda_sigma(s, "bc") == 0
    with pytest.raises(ConvergenceError):
        lambda_sigma(s, "a", tol=1e-8, max_n=2)
