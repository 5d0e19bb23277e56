"""
Cohomology, hard Lefschetz and the Mathieu conditions
=====================================================

Tori satisfy everything. Kodaira-Thurston fails all three Mathieu
conditions at once, which is what their equivalence predicts.
"""

from symplectic_dgbv import (build_kodaira_thurston, build_sol_times_circle, build_torus,
                             cohomology_d, cohomology_delta, hard_lefschetz_check,
                             mathieu_check)

for model in (build_torus(2), build_sol_times_circle(), build_kodaira_thurston()):
    coh = cohomology_d(model)
    lef = hard_lefschetz_check(model, coh)
    mt = mathieu_check(model, coh, lef)
    print(f"\n{model.name}")
    print("  betti numbers       ", coh.betti)
    print("  Delta-cohomology    ", cohomology_delta(model).dims)
    print("  omega^k ranks       ", lef.ranks, "pass" if lef.ok else f"fail at k={lef.failed_at[0]}")
    print("  Mathieu (i,ii,iii)  ", mt.verdicts)
    if mt.classes_without_harmonic:
        print("  classes with no harmonic representative:",
              [str(coh.representatives[i]) for i in mt.classes_without_harmonic])
