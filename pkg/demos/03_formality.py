"""
The ddDelta lemma and the formality zig-zag
===========================================

Where hard Lefschetz holds, Ker d cap Im Delta = Im d cap Ker Delta
= Im d Delta in every degree, and the two maps
(Ker Delta, d) <- (Omega, d) and (Ker Delta, d) -> (H_Delta, 0)
are quasi-isomorphisms. On Kodaira-Thurston the lemma fails and the
witness refuses to run.
"""

from symplectic_dgbv import (PreconditionError, build_from_file, build_kodaira_thurston,
                             dd_delta_check, formality_witness)
from pathlib import Path

models = Path(__file__).resolve().parent.parent / "models"

for model in (build_from_file(models / "e2xR.json"), build_kodaira_thurston()):
    dd = dd_delta_check(model)
    print(f"\n{model.name}: ddDelta {'holds' if dd.ok else 'fails'}")
    for row in dd.dims:
        print("  ", row)
    try:
        fw = formality_witness(model, dd)
    except PreconditionError as exc:
        print("  formality witness refused:", exc)
        continue
    print("  inclusion quasi-iso:", fw.inclusion_iso, " projection quasi-iso:", fw.projection_iso)
