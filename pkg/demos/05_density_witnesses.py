"""
Reaching any ratio with n^d alpha^n / (m^e beta^m)
==================================================

For multiplicatively independent alpha and beta these ratios are dense in
the positive reals.  The searches below return explicit (n, m) and check
them with interval arithmetic.
"""
from fractions import Fraction

import mpmath

from morphic.algebraic import golden_ratio, sqrt_of
from morphic.density import certify_lemmetech, densite_search, denselog_search, lemmetech_search

# 2^n / 3^m close to 1, with the exact rational value
for eps in (Fraction(1, 20), Fraction(1, 100), Fraction(1, 1000)):
    w = densite_search(2, 3, 0, 0, 1, eps)
    print(f"eps {float(eps):<6} n = {w.n:<6} m = {w.m:<6} 2^n/3^m = {mpmath.nstr(w.achieved, 12)}")

# polynomial factors and an algebraic base
w = densite_search(golden_ratio(), 2, 1, 2, 7, Fraction(1, 100))
print(f"n phi^n / (m^2 2^m) ~ 7: n = {w.n}, m = {w.m}, value {mpmath.nstr(w.achieved, 10)}")

# a small positive step n sqrt2 - m, certified at 30 digits
n, m = lemmetech_search(sqrt_of(2), 1, Fraction(1, 1000))
box, ok = certify_lemmetech(sqrt_of(2), 1, n, m, Fraction(1, 1000))
print(f"{n} sqrt2 - {m} in {box}  certified: {ok}")

# additive form with logarithms
w = denselog_search(lambda c: c.log(3), lambda c: c.log(2), 0, 1, Fraction(1, 2), Fraction(1, 100))
print(f"n log3 - m log2 - log m ~ 1/2: n = {w.n}, m = {w.m}, error {mpmath.nstr(w.error, 5)}")
