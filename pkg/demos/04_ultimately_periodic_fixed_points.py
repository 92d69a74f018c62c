"""
Certifying ultimately periodic fixed points
===========================================

A fixed point that looks like u v^omega on a long prefix is confirmed by
checking that s(u) s(v)^omega equals u v^omega exactly.  The same word
a b^omega is fixed by substitutions with eigenvalues 2 and 3, which is
only possible because it is ultimately periodic.
"""
from morphic import Substitution, word_str
from morphic.density import mult_independent_integers
from morphic.seqlab import certify_ultimate_periodicity
from morphic.spectral import abelianization, spectral_radius

cases = {
    "a -> abb": {"a": "abb", "b": "bb"},
    "a -> abbb": {"a": "abbb", "b": "bbb"},
    "a -> ab, b -> ab": {"a": "ab", "b": "ab"},
    "Fibonacci": {"a": "ab", "b": "a"},
}
for label, rules in cases.items():
    s = Substitution.from_dict(rules)
    c = certify_ultimate_periodicity(s, "a", 8, 8)
    theta = spectral_radius(abelianization(s))
    if c.witness is None:
        print(f"{label:18s} Theta = {theta}: none found (no claim either way)")
    else:
        print(f"{label:18s} Theta = {theta}: {c.kind}, u = {word_str(c.witness.preperiod) or '(empty)'}, "
              f"v = {word_str(c.witness.period)}")

print("2 and 3:", mult_independent_integers(2, 3))
print("4 and 8:", mult_independent_integers(4, 8))
