"""
Periodic words as codings of a Fibonacci-like fixed point
=========================================================

The periodic word (12)^omega has dominant eigenvalue (1+√5)/2 attached to
it: doubling the Fibonacci alphabet gives a substitution whose fixed
point codes letter by letter to 1212...  Adding a preperiod ``c`` is done
by passing to 2-blocks.
"""
from morphic import Substitution, word_str
from morphic.construct import build_periodic_system, build_zeta_system, length_identity, rename_blocks
from morphic.spectral import abelianization, spectral_radius

fib = Substitution.from_dict({"a": "ab", "b": "a"})
system = build_periodic_system("12", fib)
for a, img in system.built.as_dict().items():
    print(f"  {a} -> {word_str(img)}")
print("intertwines:", system.intertwines(), system.matrices_intertwine())
print("same eigenvalue:", spectral_radius(abelianization(system.built)))
print("coded:", "".join(system.coded_prefix(24)))

# now c(12)^omega, with the doubled letters renamed A..D for readability
zeta = build_zeta_system("c", system)
names = rename_blocks(zeta.blocks, {"(a,1)": "A", "(a,2)": "B", "(b,1)": "C", "(b,2)": "D"})
renamed = zeta.zeta.rename(names)
for g in zeta.G:
    print(f"  {names[g]} -> {word_str(renamed[names[g]])}   phi = {zeta.phi[g][0]}")
print("coded:", "".join(zeta.coded_prefix(24)))
print("length identity for n <= 10:", all(length_identity(zeta, n) for n in range(11)))
