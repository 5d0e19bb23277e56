"""
A Maurer-Cartan solution with genuine corrections
=================================================

On the solvable model in models/e2xR.json the bracket of harmonic
forms is nonzero, so Gamma picks up Delta-exact corrections at order
two and beyond. The potential still comes out cubic here.
"""

from pathlib import Path

from symplectic_dgbv import build_from_file, cohomology_d, mc_solve, potential

model = build_from_file(Path(__file__).resolve().parent.parent / "models" / "e2xR.json")
coh = cohomology_d(model)
print("betti:", coh.betti, " parities:", coh.parities)

sol = mc_solve(model, coh, 4)
for n in range(2, 5):
    print(f"Gamma_{n} =", sol.components[n])
print("residual d Gamma + 1/2 [Gamma . Gamma] =", sol.residual)

pot = potential(model, sol)
print("Phi =", pot.phi)
