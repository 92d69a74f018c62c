from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from morphic.poly import (
    IntPolynomial,
    count_roots,
    isolate_real_roots,
    poly_from_power_sums,
    poly_gcd,
    power_sums_from_poly,
    sqf_part,
)

coeff_lists = st.lists(st.integers(-20, 20), min_size=2, max_size=7).filter(lambda c: c[0] != 0)


def _real_roots_numpy(coeffs):
    roots = np.roots(coeffs)
    return sorted(r.real for r in roots if abs(r.imag) < 1e-9)


def test_string_form():
    assert str(IntPolynomial([1, -1, -1])) == "x^2 - x - 1"
    assert IntPolynomial([0, 0, 3]).coeffs == (3,)


def test_evaluation_and_derivative():
    f = IntPolynomial([2, 0, -3, 1])
    assert f(2) == 11
    assert f(Fraction(1, 2)) == Fraction(-1, 4)
    assert f.derivative().coeffs == (6, 0, -3)


def test_gcd_and_squarefree():
    f = IntPolynomial.from_roots([1, 1, 2])
    g = IntPolynomial.from_roots([1, 3])
    assert poly_gcd(f, g).primitive() == IntPolynomial([1, -1])
    assert sqf_part(f).primitive() == IntPolynomial.from_roots([1, 2])


def test_isolation_on_known_roots():
    f = IntPolynomial.from_roots([-3, 0, 2, 5])
    boxes = isolate_real_roots(f)
    assert len(boxes) == 4
    for (lo, hi), r in zip(boxes, [-3, 0, 2, 5]):
        assert lo <= r <= hi


@settings(max_examples=80, deadline=None)
@given(coeff_lists)
def test_root_count_matches_numpy(coeffs):
    f = IntPolynomial(coeffs)
    sym = sympy.Poly(coeffs, sympy.Symbol("x"))
    distinct = len(sympy.real_roots(sym, multiple=False)) if f.degree > 0 else 0
    assert len(isolate_real_roots(sqf_part(f))) == distinct


@settings(max_examples=60, deadline=None)
@given(coeff_lists)
def test_isolating_intervals_are_disjoint_and_exact(coeffs):
    f = sqf_part(IntPolynomial(coeffs))
    boxes = isolate_real_roots(f)
    for lo, hi in boxes:
        if lo == hi:
            assert f(lo) == 0
        else:
            assert count_roots(f, lo, hi) == 1
    for (a, b), (c, d) in zip(boxes, boxes[1:]):
        assert b <= c
        assert f(b) != 0 or b < c


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_power_sums_round_trip(roots):
    f = IntPolynomial.from_roots(roots)
    ps = power_sums_from_poly(f, len(roots))
    for k, p in enumerate(ps, 1):
        assert p == sum(Fraction(r) ** k for r in roots)
    assert poly_from_power_sums(ps, len(roots)) == f
