"""JSON encodings for forms, series-forms and polynomials.

Terms are written as ``["p/q", [subset...], {"i": exponent}]`` in
canonical order (x-monomial, then degree, then lexicographic subset),
so equal objects always serialize to identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .exterior import Form, SeriesForm, mask_of, subset_of
from .model import Model, fraction_str, parse_fraction
from .superpoly import Monomial, SuperPoly


def monomial_to_json(mono: Monomial) -> dict[str, int]:
    return {str(i): e for i, e in enumerate(mono) if e}


def monomial_from_json(data: dict, r: int) -> Monomial:
    mono = [0] * r
    for i, e in data.items():
        mono[int(i)] = int(e)
    return tuple(mono)


def form_to_json(f: Form | SeriesForm) -> list:
    if isinstance(f, Form):
        keys = sorted(f.terms, key=f.model.sort_key)
        return [[fraction_str(f.terms[mask]), list(subset_of(mask)), {}] for mask in keys]
    keys = sorted(f.terms, key=lambda k: (k[0], f.model.sort_key(k[1])))
    return [[fraction_str(f.terms[k]), list(subset_of(k[1])), monomial_to_json(k[0])] for k in keys]


def form_from_json(data: list, model: Model) -> Form:
    terms: dict[int, Fraction] = {}
    for coeff, subset, mono in data:
        if mono:
            raise ValueError("term carries formal variables; use series_from_json")
        mask = mask_of(subset)
        terms[mask] = terms.get(mask, 0) + parse_fraction(coeff)
    return Form(model, terms)


def series_from_json(data: list, model: Model, parities, order: int) -> SeriesForm:
    terms: dict = {}
    for coeff, subset, mono in data:
        key = (monomial_from_json(mono, len(parities)), mask_of(subset))
        terms[key] = terms.get(key, 0) + parse_fraction(coeff)
    return SeriesForm(model, parities, order, terms)


def poly_to_json(p: SuperPoly) -> list:
    return [[monomial_to_json(m), fraction_str(c)] for m, c in sorted(p.terms.items())]
