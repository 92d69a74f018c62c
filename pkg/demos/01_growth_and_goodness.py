"""
Growth of iterates and good substitutions
=========================================

Each letter of a substitution grows like c(a) n^d theta^n.  Here we look
at a three-letter example where the letter ``a`` outgrows the Fibonacci
pair (b, c), and at a substitution that is not "good": its dominant
eigenvalue lives in a part of the alphabet that is not closed.
"""
from morphic import Substitution, growth_types, iterate, word_lengths
from morphic.decomp import decompose, is_good

tau = Substitution.from_dict({"a": "aaab", "b": "bc", "c": "b"})

# exact growth types and numeric constants
rep = growth_types(tau)
print("Theta =", rep.Theta, " D =", rep.D, " A_max =", rep.A_max)
for a in tau.alphabet:
    print(f"  {a}: {rep.types[a]}  c = {float(rep.c_estimates[a]):.10f}")

# the constants really predict the lengths
n = 30
lens = word_lengths(tau, n)
print("|tau^30(a)| =", lens["a"], " vs c(a) 3^30 =", float(rep.c_estimates["a"]) * 3.0 ** n)
print("first letters of tau^3(a):", "".join(iterate(tau, "a", 3))[:40])

# decomposition into primitive parts: {a} feeds the sink {b, c}
dec = decompose(tau)
print("parts:", dec.parts, " principal:", [dec.parts[i] for i in dec.principal])

# goodness compares Theta with the eigenvalues of the sink parts
for rules in ({"a": "aaab", "b": "bc", "c": "b"}, {"a": "aa0", "0": "01", "1": "0"}, {"a": "ab", "b": "ba"}):
    s = Substitution.from_dict(rules)
    v = is_good(s)
    main = ", ".join(str(x.eigenvalue) for x in v.main)
    print(f"{s}: Theta = {v.Theta}, main eigenvalues {main} -> {'good' if v.good else 'not good'}")
