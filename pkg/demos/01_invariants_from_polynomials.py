"""From two polynomials to stability obstructions.

A one-parameter subgroup acting on an n-dimensional polarized variety is
summarized by two polynomials in the tensor power k: the Hilbert
polynomial chi(k) (dimensions of section spaces) and the weight
polynomial w(k) (total weights on their determinants).  The normalized
Chow weight w(k)/chi(k) - (b0/a0) k packages the obstructions F_1..F_n to
asymptotic Chow semistability.  Everything below is exact rational
arithmetic; nothing is ever rounded.

Run:  python3 demos/01_invariants_from_polynomials.py
"""
from fractions import Fraction

from chowstab import HilbertData, WeightData, report, shift_linearization

# The simplest nontrivial example: a curve-like family with chi(k) = k + 1
# and weight w(k) = k^2.
h = HilbertData(n=1, a=(1, 1))
w = WeightData(n=1, b=(1, 0, 0))

rep = report(h, w)
print("chi(k) = k + 1,  w(k) = k^2")
print("Chow weight as a function of k:", rep.chow.pretty())
print("higher Futaki invariants:", [str(f) for f in rep.futaki])
print("b_top (vanishes for smooth families):", rep.b_top)
print()

# Changing the linearization shifts w by c*k*chi(k); the invariants and the
# Chow function cannot see the difference.
for c in (Fraction(1), Fraction(-7, 3)):
    shifted = shift_linearization(w, h, c)
    rep2 = report(h, shifted)
    print(f"shift by c = {c}: b = {tuple(str(x) for x in shifted.b)}, "
          f"F = {[str(f) for f in rep2.futaki]}, chow unchanged: {rep2.chow == rep.chow}")
print()

# A two-dimensional family where only the leading weight survives.
h2 = HilbertData(n=2, a=(Fraction(1, 2), Fraction(3, 2), 1))
w2 = WeightData(n=2, b=(1, 0, 0, 0))
rep2 = report(h2, w2)
print("chi(k) = (k+1)(k+2)/2,  w(k) = k^3")
print("F_1, F_2 =", [str(f) for f in rep2.futaki])
print("expansion identity verified inside report(): chow =",
      rep2.chow.pretty())
