import random
from fractions import Fraction
from itertools import combinations

import pytest

import oracles
from conftest import builtin_models, nontrivial_models
from symplectic_dgbv import superpoly
from symplectic_dgbv.exterior import (Form, ModelMismatch, SeriesForm, bracket, contraction, d,
                                      delta, integral, lstar, pairing, star, subset_of,
                                      volume_form, wedge)
from symplectic_dgbv.model import build_kodaira_thurston, build_torus
from symplectic_dgbv.properties import random_form

ALL = builtin_models() + nontrivial_models()


def e(model, *idx):
    return Form.basis(model, *idx)


# ---- wedge

def test_wedge_basics(t1):
    assert e(t1, 1) * e(t1, 2) == e(t1, 1, 2)
    assert e(t1, 2) * e(t1, 1) == -e(t1, 1, 2)
    f = e(t1, 1).scale(3) + e(t1, 1, 2)
    assert Form.one(t1) * f == f


def test_series_wedge_koszul_sign(t1):
    par = (0, 1, 1, 0)
    x1e1 = SeriesForm.from_form(e(t1, 1), par, 3, superpoly.variable(1, 4))
    x2e2 = SeriesForm.from_form(e(t1, 2), par, 3, superpoly.variable(2, 4))
    expected = SeriesForm.from_form(-e(t1, 1, 2), par, 3, (0, 1, 1, 0))
    assert x1e1 * x2e2 == expected


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.name)
def test_wedge_matches_sorting_oracle(model):
    rng = random.Random(1)
    for _ in range(20):
        f, g = random_form(model, rng), random_form(model, rng)
        assert oracles.engine_to_oracle(f * g) == oracles.wedge(
            oracles.engine_to_oracle(f), oracles.engine_to_oracle(g))


def test_mismatched_models_rejected(t1, t2):
    with pytest.raises(ModelMismatch):
        e(t1, 1) * e(t2, 1)


# ---- d, L*, Delta

def test_d_examples(t1, kt):
    assert d(e(t1, 1)).is_zero()
    assert d(e(kt, 3, 4)) == -e(kt, 1, 2, 3)
    assert d(d(e(kt, 3, 4))).is_zero()


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.name)
def test_d_delta_lstar_match_oracle(model):
    rng = random.Random(2)
    diff = model.diff
    winv = model.omega_inv
    for _ in range(15):
        f = random_form(model, rng)
        of = oracles.engine_to_oracle(f)
        assert oracles.engine_to_oracle(d(f)) == oracles.d(of, diff)
        assert oracles.engine_to_oracle(lstar(f)) == oracles.lstar(of, winv)
        assert oracles.engine_to_oracle(delta(f)) == oracles.delta(of, diff, winv)


def test_lstar_examples(t1):
    assert lstar(Form.one(t1)).is_zero()
    assert lstar(e(t1, 1)).is_zero()
    # both ordered pairs (1,2) and (2,1) contribute
    assert lstar(e(t1, 1, 2)) == Form.one(t1).scale(2)


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.name)
def test_lstar_of_omega_is_2m(model):
    assert lstar(model.omega_form()) == Form.one(model).scale(2 * model.m)


def test_delta_examples(kt, t2):
    assert delta(e(kt, 3, 4)) == e(kt, 2).scale(2)
    for f in t2.all_basis_forms():
        assert delta(f).is_zero()
    for f in kt.all_basis_forms():
        assert delta(delta(f)).is_zero()


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.name)
def test_operator_degrees(model):
    for f in model.all_basis_forms():
        k = f.degree
        assert d(f).degrees() <= {k + 1}
        assert lstar(f).degrees() <= {k - 2}
        assert delta(f).degrees() <= {k - 1}
        assert star(f).degrees() == {model.dim - k}


def test_contraction_convention(kt):
    # iota_a(e^{i1..ik}) = sum_j (-1)^{j-1} delta_a^{ij} (i_j removed)
    assert contraction(3, e(kt, 1, 3, 4)) == -e(kt, 1, 4)
    assert contraction(1, e(kt, 1, 3, 4)) == e(kt, 3, 4)
    assert contraction(2, e(kt, 1, 3, 4)).is_zero()


# ---- pairing, star, integral

def test_pairing_examples(t1, t2):
    assert pairing(e(t1, 1), e(t1, 2)) == -1
    assert pairing(Form.one(t1), Form.one(t1)) == 1
    winv = t2.omega_inv
    block = [[winv[0][0], winv[0][1]], [winv[1][0], winv[1][1]]]
    assert pairing(e(t2, 1, 2), e(t2, 1, 2)) == oracles.leibniz_det(block)
    assert pairing(e(t1, 1), e(t1, 1, 2)) == 0


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.name)
def test_pairing_matches_leibniz_oracle(model):
    winv = model.omega_inv
    for k in range(model.dim + 1):
        for a, b in combinations(model.basis(k), 2):
            ia, ib = subset_of(a), subset_of(b)
            m = [[winv[i - 1][j - 1] for j in ib] for i in ia]
            assert pairing(Form(model, {a: 1}), Form(model, {b: 1})) == oracles.leibniz_det(m)


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.name)
def test_star_defining_condition(model):
    vol = volume_form(model)
    for k in range(model.dim + 1):
        for a in model.basis(k):
            alpha = Form(model, {a: 1})
            sa = star(alpha)
            for b in model.basis(k):
                beta = Form(model, {b: 1})
                assert beta * sa == vol.scale(pairing(beta, alpha))


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.name)
def test_star_involution_and_symmetry(model):
    forms = model.all_basis_forms()
    for a in forms:
        assert star(star(a)) == a
        for b in forms:
            if a.degree == b.degree:
                assert b * star(a) == star(b) * a


def test_star_of_one_is_volume(t2, kt):
    for model in (t2, kt):
        assert star(Form.one(model)) == volume_form(model)


@pytest.mark.parametrize("model", [build_torus(1), build_torus(2)], ids=lambda m: m.name)
def test_delta_star_identity_on_tori(model):
    for f in model.all_basis_forms():
        k = f.degree
        assert delta(f) == star(d(star(f))).scale((-1) ** (k + 1))


@pytest.mark.parametrize("model", [build_kodaira_thurston()] + nontrivial_models(),
                         ids=lambda m: m.name)
def test_delta_is_minus_two_times_brylinski_expression(model):
    # with L* summed over ordered pairs, Delta = -2 (-1)^{k+1} * d *
    for f in model.all_basis_forms():
        k = f.degree
        assert delta(f) == star(d(star(f))).scale(-2 * (-1) ** (k + 1))


def test_integral(t1, kt):
    assert integral(e(t1, 1, 2)) == 1
    assert integral(e(t1, 2, 1)) == -1
    assert integral(e(kt, 1, 2)) == 0


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.name)
def test_integral_adjointness(model):
    rng = random.Random(3)
    for _ in range(40):
        pa = rng.randint(0, 1)
        a = random_form(model, rng, pa)
        b = random_form(model, rng)
        s = (-1) ** pa
        assert integral(d(a) * b) + s * integral(a * d(b)) == 0
        assert integral(delta(a) * b) - s * integral(a * delta(b)) == 0
        assert integral(d(a)) == 0


# ---- bracket

def test_bracket_examples(t2, kt):
    g = e(kt, 1, 3) + e(kt, 2).scale(5)
    assert bracket(Form.one(kt), g).is_zero()
    rng = random.Random(4)
    for _ in range(10):
        f = random_form(t2, rng, rng.randint(0, 1))
        assert bracket(f, random_form(t2, rng)).is_zero()
    assert bracket(e(kt, 3), e(kt, 4)) == e(kt, 2).scale(-2)


@pytest.mark.parametrize("model", [build_kodaira_thurston()] + nontrivial_models(),
                         ids=lambda m: m.name)
def test_bracket_parity(model):
    rng = random.Random(5)
    for _ in range(30):
        pf, pg = rng.randint(0, 1), rng.randint(0, 1)
        b = bracket(random_form(model, rng, pf), random_form(model, rng, pg))
        if b:
            assert b.parity == (pf + pg + 1) % 2


def test_bracket_rejects_mixed_parity(kt):
    with pytest.raises(ValueError):
        bracket(Form.one(kt) + e(kt, 1), e(kt, 2))


# ---- series-forms

def _random_series(model, rng, par, order, parity=None):
    r = len(par)
    terms = {}
    for n in range(order + 1):
        for mono in superpoly.monomials_of_degree(r, n, par):
            if rng.random() < 0.3:
                f = random_form(model, rng, density=0.2)
                for mask, c in f.terms.items():
                    key = (mono, mask)
                    p = (superpoly.parity(mono, par) + mask.bit_count()) & 1
                    if parity is None or p == parity:
                        terms[key] = c
    return SeriesForm(model, par, order, terms)


def test_specialization_commutes_with_operations():
    model = nontrivial_models()[1]
    par = (0, 1, 1, 0, 0)
    rng = random.Random(6)
    for _ in range(10):
        f = _random_series(model, rng, par, 2, parity=rng.randint(0, 1))
        g = _random_series(model, rng, par, 2)
        assert (f * g).at_zero() == f.at_zero() * g.at_zero()
        assert d(f).at_zero() == d(f.at_zero())
        assert delta(f).at_zero() == delta(f.at_zero())
        assert lstar(f).at_zero() == lstar(f.at_zero())
        assert bracket(f, g).at_zero() == bracket(f.at_zero(), g.at_zero())
        assert integral(f).at_zero() == integral(f.at_zero())


def test_series_bracket_axioms():
    model = nontrivial_models()[2]
    par = (0, 1, 0)
    rng = random.Random(8)
    for _ in range(15):
        pf, pg, ph = (rng.randint(0, 1) for _ in range(3))
        f = _random_series(model, rng, par, 2, pf)
        g = _random_series(model, rng, par, 2, pg)
        h = _random_series(model, rng, par, 2, ph)
        s = (-1) ** ((pf + 1) * (pg + 1))
        assert bracket(f, g) == bracket(g, f).scale(-s)
        assert bracket(f, bracket(g, h)) == bracket(bracket(f, g), h) + bracket(g, bracket(f, h)).scale(s)
        assert bracket(f, g * h) == bracket(f, g) * h + (g * bracket(f, h)).scale((-1) ** (pg * (pf + 1)))
        assert d(f * g) == d(f) * g + (f * d(g)).scale((-1) ** pf)


def test_truncation_is_flagged(t1):
    par = (0, 0)
    x0 = SeriesForm.from_form(Form.one(t1), par, 2, (1, 0))
    sq = x0 * x0
    assert not sq.truncated
    cube = sq * x0
    assert cube.is_zero() and cube.truncated


def test_left_derivative_on_series(t1):
    par = (0, 1, 1, 0)
    f = SeriesForm(t1, par, 3, {((0, 1, 1, 0), 0): Fraction(1)})
    assert f.derivative(1) == SeriesForm(t1, par, 3, {((0, 0, 1, 0), 0): Fraction(1)})
    assert f.derivative(2) == SeriesForm(t1, par, 3, {((0, 1, 0, 0), 0): Fraction(-1)})
