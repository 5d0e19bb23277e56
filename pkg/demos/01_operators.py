"""
Operators on the Kodaira-Thurston nilmanifold
=============================================

Walks through d, L*, Delta and the odd bracket on the smallest
non-toral model, then compares Delta with the star expression.
"""

from fractions import Fraction

from symplectic_dgbv import Form, bracket, build_kodaira_thurston, d, delta, lstar, star
from symplectic_dgbv.properties import delta_star_ratio

kt = build_kodaira_thurston()
e = lambda *idx: Form.basis(kt, *idx)

# the only nonzero structure equation is d e^4 = e^1 ^ e^2
print("d e^4       =", d(e(4)))
print("d(e^3 e^4)  =", d(e(3, 4)))

# L* sums over ordered pairs, so L*(omega) = 2m
print("L*(omega)   =", lstar(kt.omega_form()))

# Delta = [L*, d] lowers degree by one
print("Delta(e^3 e^4) =", delta(e(3, 4)))

# the bracket measures how far Delta is from a derivation
print("[e^3 . e^4] =", bracket(e(3), e(4)))

# Delta against (-1)^(k+1) *d*: a single constant relates the two
print("Delta / ((-1)^(k+1) *d*) =", delta_star_ratio(kt))

# star is an involution
assert all(star(star(f)) == f for f in kt.all_basis_forms())
print("** = id on all", len(kt.all_basis_forms()), "basis forms")

# Delta^2 = 0 and Delta d = -d Delta
f = e(1, 3).scale(Fraction(1, 2)) + e(3, 4) + e(2, 3, 4)
print("Delta^2 f   =", delta(delta(f)))
print("(Delta d + d Delta) f =", delta(d(f)) + d(delta(f)))
