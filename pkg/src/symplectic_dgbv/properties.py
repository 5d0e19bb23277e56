"""Seeded randomized property suites and exhaustive operator identities."""

from __future__ import annotations

import random
from fractions import Fraction

from .exterior import Form, bracket, d, delta, integral, star, wedge
from .model import Model


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


def random_form(model: Model, rng: random.Random, parity: int | None = None,
                density: float = 0.3, bound: int = 3) -> Form:
    """Small-coefficient random form, optionally of fixed parity."""
    terms = {}
    for k in range(model.dim + 1):
        if parity is not None and k % 2 != parity:
            continue
        for mask in model.basis(k):
            if rng.random() < density:
                terms[mask] = Fraction(rng.randint(-bound, bound))
    return Form(model, terms)


def bracket_axioms(model: Model, rng: random.Random, samples: int = 200) -> dict[str, int]:
    """Failure counts for axioms a)-d) over random homogeneous triples."""
    fails = {"a": 0, "b": 0, "c": 0, "d_delta": 0, "d_d": 0}
    for _ in range(samples):
        pf, pg, ph = (rng.randint(0, 1) for _ in range(3))
        f = random_form(model, rng, pf)
        g = random_form(model, rng, pg)
        h = random_form(model, rng, ph)
        s = _sign((pf + 1) * (pg + 1))
        if bracket(f, g) != bracket(g, f).scale(-s):
            fails["a"] += 1
        if bracket(f, bracket(g, h)) != bracket(bracket(f, g), h) + bracket(g, bracket(f, h)).scale(s):
            fails["b"] += 1
        if bracket(f, g * h) != bracket(f, g) * h + (g * bracket(f, h)).scale(_sign(pg * (pf + 1))):
            fails["c"] += 1
        t = _sign(pf + 1)
        if delta(bracket(f, g)) != bracket(delta(f), g) + bracket(f, delta(g)).scale(t):
            fails["d_delta"] += 1
        if d(bracket(f, g)) != bracket(d(f), g) + bracket(f, d(g)).scale(t):
            fails["d_d"] += 1
    return fails


def adjointness(model: Model, rng: random.Random, samples: int = 200) -> dict[str, int]:
    """Failure counts for int(d a ^ b) = -(-1)^a int(a ^ d b) and int(Delta a ^ b) = (-1)^a int(a ^ Delta b)."""
    fails = {"d": 0, "delta": 0, "int_d": 0}
    for _ in range(samples):
        pa = rng.randint(0, 1)
        a = random_form(model, rng, pa)
        b = random_form(model, rng)
        s = _sign(pa)
        if integral(wedge(d(a), b)) + s * integral(wedge(a, d(b))) != 0:
            fails["d"] += 1
        if integral(wedge(delta(a), b)) - s * integral(wedge(a, delta(b))) != 0:
            fails["delta"] += 1
        if integral(d(a)) != 0:
            fails["int_d"] += 1
    return fails


def delta_star_ratio(model: Model) -> Fraction | None:
    """The constant c with Delta = c (-1)^{k+1} * d * on every basis form, if one exists.

    None when no single constant works; Fraction(1) on models where both
    sides vanish identically.
    """
    ratio = None
    for f in model.all_basis_forms():
        k = f.degree
        lhs = delta(f)
        rhs = star(d(star(f))).scale(_sign(k + 1))
        if not lhs and not rhs:
            continue
        if not lhs or not rhs or set(lhs.terms) != set(rhs.terms):
            return None
        for mask in lhs.terms:
            c = lhs.terms[mask] / rhs.terms[mask]
            if ratio is None:
                ratio = c
            elif c != ratio:
                return None
    return ratio if ratio is not None else Fraction(1)


def operator_identities(model: Model) -> dict[str, bool]:
    """Exhaustive checks over the full basis of Omega."""
    forms = model.all_basis_forms()
    out = {
        "Delta^2=0": all(not delta(delta(f)) for f in forms),
        "Delta d + d Delta=0": all(not (delta(d(f)) + d(delta(f))) for f in forms),
        "star^2=id": all(star(star(f)) == f for f in forms),
        "b^*a=*b^a": all(wedge(b, star(a)) == wedge(star(b), a)
                         for a in forms for b in forms if a.degree == b.degree),
        "Delta=(-1)^(k+1)*d*": all(
            delta(f) == star(d(star(f))).scale(_sign(f.degree + 1)) for f in forms),
    }
    return out


def run_suites(model: Model, seed: int, samples: int = 200) -> dict:
    rng = random.Random(seed)
    ratio = delta_star_ratio(model)
    return {
        "seed": seed,
        "samples": samples,
        "operator_identities": operator_identities(model),
        "delta_over_star_d_star": None if ratio is None else str(ratio),
        "bracket_axiom_failures": bracket_axioms(model, rng, samples),
        "adjointness_failures": adjointness(model, rng, samples),
    }
