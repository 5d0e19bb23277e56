from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

import oracles
from conftest import builtin_models, nontrivial_models, randomized_models
from symplectic_dgbv import exterior
from symplectic_dgbv.cohomology import (PreconditionError, cohomology_d, cohomology_delta,
                                        dd_delta_check, formality_witness, harmonic_representative,
                                        hard_lefschetz_check, mathieu_check, spaces)
from symplectic_dgbv.exterior import Form, integral
from symplectic_dgbv.linalg import det
from symplectic_dgbv.model import build_kodaira_thurston, build_torus, direct_product


def oracle_betti(model):
    """Betti numbers from sympy ranks of oracle-built d matrices."""
    n = model.dim
    bases = [list(combinations(range(1, n + 1), k)) for k in range(n + 1)]
    ranks = []
    for k in range(n):
        rows = {b: i for i, b in enumerate(bases[k + 1])}
        mat = [[Fraction(0)] * len(bases[k]) for _ in bases[k + 1]]
        for j, b in enumerate(bases[k]):
            for key, c in oracles.d({b: Fraction(1)}, model.diff).items():
                mat[rows[key]][j] = c
        ranks.append(oracles.rational_rank(mat))
    ranks.append(0)
    return [len(bases[k]) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_torus_betti_are_binomial(m):
    assert cohomology_d(build_torus(m)).betti == [comb(2 * m, k) for k in range(2 * m + 1)]


@pytest.mark.parametrize("model", builtin_models() + nontrivial_models() + randomized_models(),
                         ids=lambda m: m.name)
def test_betti_match_oracle(model):
    assert cohomology_d(model).betti == oracle_betti(model)


def test_kodaira_thurston_b1(kt):
    assert cohomology_d(kt).betti[1] == 3


@pytest.mark.parametrize("model", builtin_models() + nontrivial_models(), ids=lambda m: m.name)
def test_representatives_are_closed_and_independent(model):
    coh = cohomology_d(model)
    assert coh.representatives[0] == Form.one(model)
    sp = spaces(model)
    for k in range(model.dim + 1):
        idx = coh.indices_in_degree(k)
        vecs = [coh.representatives[i].vector(k) for i in idx]
        for c in (coh.representatives[i] for i in idx):
            assert exterior.d(c).is_zero()
        combined = len(type(sp.im_d(k))(sp.im_d(k).basis + vecs, sp.dim(k)))
        assert combined == sp.im_d(k).dim + len(idx)


def test_representatives_deterministic(kt):
    a = cohomology_d(kt).to_json()
    b = cohomology_d(build_kodaira_thurston()).to_json()
    assert a == b


def test_canonical_cohomology(t2):
    assert cohomology_delta(t2).dims == cohomology_d(t2).betti


@pytest.mark.parametrize("model", builtin_models() + nontrivial_models(), ids=lambda m: m.name)
def test_canonical_equals_de_rham(model):
    # recorded for Kodaira-Thurston as well
    assert cohomology_delta(model).dims == cohomology_d(model).betti


# ---- hard Lefschetz

@pytest.mark.parametrize("m", [1, 2, 3])
def test_tori_satisfy_hard_lefschetz(m):
    rep = hard_lefschetz_check(build_torus(m))
    assert rep.ok
    betti = cohomology_d(build_torus(m)).betti
    assert rep.ranks[0] == betti[m]


def test_kodaira_thurston_fails_at_k1(kt):
    rep = hard_lefschetz_check(kt)
    assert not rep.ok
    assert rep.failed_at == [1]
    assert rep.ranks[1] < 3


@pytest.mark.parametrize("model", builtin_models() + nontrivial_models() + randomized_models(),
                         ids=lambda m: m.name)
def test_lefschetz_consequences(model):
    coh = cohomology_d(model)
    rep = hard_lefschetz_check(model, coh)
    if rep.ok:
        m = model.m
        assert all(coh.betti[m - k] == coh.betti[m + k] for k in range(m + 1))
        assert coh.all_harmonic
        for c in coh.representatives:
            assert exterior.d(c).is_zero() and exterior.delta(c).is_zero()
        reps = coh.representatives
        assert det([[integral(a * b) for b in reps] for a in reps]) != 0


# ---- Mathieu

def test_mathieu_on_torus_and_kt(t1, kt):
    assert mathieu_check(t1).verdicts == (True, True, True)
    assert mathieu_check(build_torus(2)).verdicts == (True, True, True)
    assert mathieu_check(kt).verdicts == (False, False, False)


@pytest.mark.parametrize("model", builtin_models() + nontrivial_models() + randomized_models()
                         + [direct_product(build_kodaira_thurston(), build_torus(1))],
                         ids=lambda m: m.name)
def test_mathieu_verdicts_agree(model):
    assert mathieu_check(model).consistent


def test_harmonic_representative_solver(kt):
    coh = cohomology_d(kt)
    missing = mathieu_check(kt, coh).classes_without_harmonic
    assert missing
    for i, c in enumerate(coh.representatives):
        h = harmonic_representative(kt, c)
        if i in missing:
            assert h is None
        else:
            assert exterior.delta(h).is_zero()
            assert exterior.d(h - c).is_zero()


# ---- ddDelta and formality

@pytest.mark.parametrize("m", [1, 2, 3])
def test_dd_delta_on_tori_all_zero(m):
    rep = dd_delta_check(build_torus(m))
    assert rep.ok
    assert all(v == 0 for row in rep.dims for k, v in row.items() if k != "degree")


@pytest.mark.parametrize("model", nontrivial_models() + randomized_models(), ids=lambda m: m.name)
def test_dd_delta_holds_under_hard_lefschetz(model):
    if hard_lefschetz_check(model).ok:
        assert dd_delta_check(model).ok


def test_dd_delta_fails_on_kt(kt):
    rep = dd_delta_check(kt)
    assert not rep.ok
    assert rep.equal == [True, False, False, False, True]


def test_dd_delta_nontrivial_example():
    rep = dd_delta_check(nontrivial_models()[0])
    assert rep.ok
    assert rep.dims[2]["im_d_delta"] == 2


@pytest.mark.parametrize("model", [build_torus(1), build_torus(2)] + nontrivial_models(),
                         ids=lambda m: m.name)
def test_formality_witnesses(model):
    rep = formality_witness(model)
    assert rep.ok
    assert rep.kernel_cohomology == cohomology_d(model).betti


def test_formality_refuses_on_kt(kt):
    with pytest.raises(PreconditionError, match="ddDelta"):
        formality_witness(kt)
