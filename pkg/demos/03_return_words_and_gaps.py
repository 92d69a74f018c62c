"""
Return words, gaps and block codings
====================================

Return words to ``u`` are the pieces between consecutive occurrences of
``u``.  In a primitive fixed point there are finitely many, and every
letter comes back within a bounded gap.  The 2-block substitution turns
"where does ab occur" into a letter-to-letter coding.
"""
from morphic import Substitution, fixed_point_prefix, word_str
from morphic.construct import build_block_system, indicator_morphism
from morphic.core import apply
from morphic.seqlab import max_gap, occurrences, return_words, starlike_decomposition

fib = Substitution.from_dict({"a": "ab", "b": "a"})
x = fixed_point_prefix(fib, "a", 40)
print("x =", word_str(x))

for u in ("a", "ab", "aba"):
    rw = return_words(fib, "a", u, 10_000)
    print(f"return words to {u}:", [word_str(w) for w in rw.returns], "complete" if rw.complete else "")

for horizon in (10_000, 100_000):
    print(f"max gaps up to {horizon}:", {b: max_gap(fib, "a", b, horizon) for b in "ab"})

# a non-primitive example: a keeps coming back, but further and further apart
tau = Substitution.from_dict({"a": "aaab", "b": "bc", "c": "b"})
print("tau, gaps of a:", [max_gap(tau, "a", "a", h) for h in (10 ** 3, 10 ** 4, 10 ** 5)])

bs = build_block_system(fib, "a", 2)
for g, img in bs.sigma_n.as_dict().items():
    print(f"  {g} -> {word_str(img)}")
bits = "".join(apply(indicator_morphism(bs, "ab"), bs.block_prefix(30)))
print("indicator of ab:", bits)
print("occurrences:    ", occurrences(x, "ab")[:10])

# prefixes of the shape s^n(u) s^(n-1)(v) ... v w b
dec = starlike_decomposition(fib, "a", "b")
print("starlike: u =", word_str(dec.u), " v =", word_str(dec.v) or "(empty)", " w =", word_str(dec.w) or "(empty)",
      " gamma ~", float(dec.gamma_estimate))
