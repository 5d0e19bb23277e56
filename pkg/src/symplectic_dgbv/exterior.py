"""Forms, series-forms and the operators d, L*, Delta, star, integral, bracket.

A basis form e^{i1}^...^e^{ik} (i1 < ... < ik, generators numbered from 1)
is stored as the bitmask with bit i-1 set for every index. All signs come
from the parity of the permutation that sorts a concatenation of indices.

``SeriesForm`` is an element of K (x) Omega with K the supercommutative
power series ring in x^0..x^{r-1}, truncated at a fixed x-degree. A term
is written x^mono * e^S, formal variables to the left. Operators of odd
parity pick up the Koszul sign (-1)^{|mono|} when acting on such a term.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Iterable, Mapping, Sequence, Union

from . import superpoly
from .superpoly import Monomial, SuperPoly

if TYPE_CHECKING:
    from .model import Model


class ModelMismatch(ValueError):
    pass


# ---------------------------------------------------------------- bitmasks

def mask_of(subset: Iterable[int]) -> int:
    mask = 0
    for i in subset:
        mask |= 1 << (i - 1)
    return mask


def subset_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def wedge_sign(a: int, b: int) -> int:
    """Sign of e^A ^ e^B relative to e^{A u B}; 0 if A and B overlap."""
    if a & b:
        return 0
    inversions = 0
    bb = b
    while bb:
        low = bb & -bb
        # elements of A above this element of B
        inversions += (a & ~((low << 1) - 1)).bit_count()
        bb ^= low
    return -1 if inversions & 1 else 1


def contract_mask(a: int, mask: int) -> tuple[int, int]:
    """iota_a on a basis form: (sign, mask) with sign 0 when e^a is absent."""
    bit = 1 << (a - 1)
    if not mask & bit:
        return 0, 0
    before = (mask & (bit - 1)).bit_count()
    return (-1 if before & 1 else 1), mask ^ bit


def _accumulate(out: dict, key, value) -> None:
    v = out.get(key, 0) + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


# -------------------------------------------------------------------- Form

class Form:
    """Element of the exterior algebra on the model's generators."""

    __slots__ = ("model", "terms")

    def __init__(self, model: "Model", terms: Mapping[int, Fraction] | None = None):
        self.model = model
        self.terms: dict[int, Fraction] = {
            mask: Fraction(c) for mask, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def zero(cls, model: "Model") -> "Form":
        return cls(model)

    @classmethod
    def one(cls, model: "Model") -> "Form":
        return cls(model, {0: Fraction(1)})

    @classmethod
    def basis(cls, model: "Model", *indices: int) -> "Form":
        """The form e^{i1} ^ ... ^ e^{ik} in the given (not necessarily sorted) order."""
        f = cls.one(model)
        for i in indices:
            if not 1 <= i <= 2 * model.m:
                raise IndexError(f"generator e^{i} out of range")
            f = f * cls(model, {1 << (i - 1): Fraction(1)})
        return f

    @classmethod
    def from_vector(cls, model: "Model", k: int, vec: Sequence[Fraction]) -> "Form":
        return cls(model, dict(zip(model.basis(k), vec)))

    def vector(self, k: int) -> list[Fraction]:
        return [self.terms.get(mask, Fraction(0)) for mask in self.model.basis(k)]

    # ---- grading
    def degrees(self) -> set[int]:
        return {mask.bit_count() for mask in self.terms}

    def homogeneous(self, k: int) -> "Form":
        return Form(self.model, {m: c for m, c in self.terms.items() if m.bit_count() == k})

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("form is not homogeneous")
        return ds.pop() if ds else 0

    @property
    def parity(self) -> int:
        ps = {d & 1 for d in self.degrees()}
        if len(ps) > 1:
            raise ValueError("form has mixed parity")
        return ps.pop() if ps else 0

    def parity_parts(self) -> dict[int, "Form"]:
        parts = {0: {}, 1: {}}
        for mask, c in self.terms.items():
            parts[mask.bit_count() & 1][mask] = c
        return {p: Form(self.model, t) for p, t in parts.items() if t}

    # ---- vector space structure
    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.model is not self.model and other.model != self.model:
            raise ModelMismatch("forms belong to different models")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Form) and other.model == self.model and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return Form(self.model, out)

    def __neg__(self) -> "Form":
        return Form(self.model, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        return Form(self.model, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return wedge(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms, key=self.model.sort_key):
            name = "^".join(f"e{i}" for i in subset_of(mask)) or "1"
            parts.append(f"({self.terms[mask]})*{name}")
        return " + ".join(parts)


# -------------------------------------------------------------- SeriesForm

class SeriesForm:
    """Element of K (x) Omega truncated at total x-degree ``order``.

    Terms above the truncation order are discarded on construction; the
    ``truncated`` flag records that this happened somewhere upstream.
    """

    __slots__ = ("model", "parities", "order", "terms", "truncated")

    def __init__(self, model: "Model", parities: Sequence[int], order: int,
                 terms: Mapping[tuple[Monomial, int], Fraction] | None = None,
                 truncated: bool = False):
        self.model = model
        self.parities = tuple(parities)
        self.order = order
        self.truncated = truncated
        self.terms: dict[tuple[Monomial, int], Fraction] = {}
        for key, c in (terms or {}).items():
            if c == 0:
                continue
            if superpoly.degree(key[0]) > order:
                self.truncated = True
                continue
            self.terms[key] = Fraction(c)

    @property
    def nvars(self) -> int:
        return len(self.parities)

    @classmethod
    def zero(cls, model: "Model", parities: Sequence[int], order: int) -> "SeriesForm":
        return cls(model, parities, order)

    @classmethod
    def from_form(cls, form: Form, parities: Sequence[int], order: int,
                  mono: Monomial | None = None) -> "SeriesForm":
        mono = mono if mono is not None else superpoly.unit(len(parities))
        return cls(form.model, parities, order, {(mono, m): c for m, c in form.terms.items()})

    @classmethod
    def from_poly(cls, model: "Model", poly: SuperPoly, order: int) -> "SeriesForm":
        return cls(model, poly.parities, order, {(m, 0): c for m, c in poly.terms.items()})

    def _like(self, terms, order: int | None = None, truncated: bool = False) -> "SeriesForm":
        return SeriesForm(self.model, self.parities, self.order if order is None else order,
                          terms, self.truncated or truncated)

    # ---- structure
    def monomials(self) -> list[Monomial]:
        return sorted({mono for mono, _ in self.terms})

    def coefficient(self, mono: Monomial) -> Form:
        return Form(self.model, {mask: c for (mo, mask), c in self.terms.items() if mo == mono})

    def homogeneous(self, n: int) -> "SeriesForm":
        """Component of total x-degree n."""
        return self._like({k: c for k, c in self.terms.items() if superpoly.degree(k[0]) == n})

    def truncate(self, order: int) -> "SeriesForm":
        return SeriesForm(self.model, self.parities, order,
                          {k: c for k, c in self.terms.items() if superpoly.degree(k[0]) <= order},
                          self.truncated)

    def with_order(self, order: int) -> "SeriesForm":
        return SeriesForm(self.model, self.parities, order, self.terms, self.truncated)

    def at_zero(self) -> Form:
        """Specialization x = 0."""
        return self.coefficient(superpoly.unit(self.nvars))

    def term_parity(self, key: tuple[Monomial, int]) -> int:
        mono, mask = key
        return (superpoly.parity(mono, self.parities) + mask.bit_count()) & 1

    @property
    def parity(self) -> int:
        ps = {self.term_parity(k) for k in self.terms}
        if len(ps) > 1:
            raise ValueError("series-form has mixed parity")
        return ps.pop() if ps else 0

    def is_even(self) -> bool:
        return all(self.term_parity(k) == 0 for k in self.terms)

    def max_x_degree(self) -> int:
        return max((superpoly.degree(mono) for mono, _ in self.terms), default=0)

    def contains_variable(self, i: int) -> bool:
        return any(mono[i] for mono, _ in self.terms)

    def derivative(self, i: int) -> "SeriesForm":
        """Left derivative d/dx^i."""
        out: dict = {}
        for (mono, mask), c in self.terms.items():
            k, rest = superpoly.left_derivative(mono, i, self.parities)
            if rest is not None:
                _accumulate(out, (rest, mask), k * c)
        return self._like(out)

    # ---- vector space structure
    def _check(self, other: "SeriesForm") -> None:
        if not isinstance(other, SeriesForm):
            raise TypeError(f"expected SeriesForm, got {type(other).__name__}")
        if other.model != self.model:
            raise ModelMismatch("series-forms belong to different models")
        if other.parities != self.parities:
            raise ValueError("series-forms use different formal variables")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return (isinstance(other, SeriesForm) and other.model == self.model
                and other.parities == self.parities and self.terms == other.terms)

    __hash__ = None

    def __add__(self, other: "SeriesForm") -> "SeriesForm":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return SeriesForm(self.model, self.parities, min(self.order, other.order), out,
                          self.truncated or other.truncated)

    def __neg__(self) -> "SeriesForm":
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SeriesForm") -> "SeriesForm":
        return self + (-other)

    def scale(self, c) -> "SeriesForm":
        return self._like({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return wedge(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, mask in sorted(self.terms, key=lambda k: (k[0], self.model.sort_key(k[1]))):
            name = "^".join(f"e{i}" for i in subset_of(mask)) or "1"
            parts.append(f"({self.terms[mono, mask]})*{superpoly.to_string(mono)}*{name}")
        return " + ".join(parts)


AnyForm = Union[Form, SeriesForm]


# ------------------------------------------------------------------ wedge

def wedge(f: AnyForm, g: AnyForm) -> AnyForm:
    """Graded-commutative product, Koszul signs included."""
    f._check(g)
    if isinstance(f, Form):
        out: dict = {}
        for a, ca in f.terms.items():
            for b, cb in g.terms.items():
                s = wedge_sign(a, b)
                if s:
                    _accumulate(out, a | b, s * ca * cb)
        return Form(f.model, out)

    order = min(f.order, g.order)
    parities = f.parities
    out = {}
    truncated = f.truncated or g.truncated
    for (ma, sa), ca in f.terms.items():
        da = superpoly.degree(ma)
        for (mb, sb), cb in g.terms.items():
            if da + superpoly.degree(mb) > order:
                truncated = True
                continue
            s = wedge_sign(sa, sb)
            if not s:
                continue
            s2, mono = superpoly.multiply(ma, mb, parities)
            if mono is None:
                continue
            # e^S has to pass x^mb
            if sa.bit_count() & 1 and superpoly.parity(mb, parities):
                s = -s
            _accumulate(out, (mono, sa | sb), s * s2 * ca * cb)
    return SeriesForm(f.model, parities, order, out, truncated)


# -------------------------------------------------------- linear operators

def _apply(f: AnyForm, images: Callable[[int], Mapping[int, Fraction]], odd: bool) -> AnyForm:
    if isinstance(f, Form):
        out: dict = {}
        for mask, c in f.terms.items():
            for m2, c2 in images(mask).items():
                _accumulate(out, m2, c * c2)
        return Form(f.model, out)
    out = {}
    for (mono, mask), c in f.terms.items():
        if odd and superpoly.parity(mono, f.parities):
            c = -c
        for m2, c2 in images(mask).items():
            _accumulate(out, (mono, m2), c * c2)
    return f._like(out)


def _cached(model: "Model", name: str, mask: int, compute) -> dict[int, Fraction]:
    cache = model.cache.setdefault(name, {})
    if mask not in cache:
        cache[mask] = compute(model, mask)
    return cache[mask]


def _d_mask(model: "Model", mask: int) -> dict[int, Fraction]:
    # derivation rule: d(e^{s1}..e^{sk}) = sum_t (-1)^{t-1} e^{s1}..d e^{st}..e^{sk}
    out: dict = {}
    idx = subset_of(mask)
    for t, s in enumerate(idx):
        bit = 1 << (s - 1)
        before = mask & (bit - 1)
        after = mask & ~((bit << 1) - 1)
        for two, c in model.d_generator(s).items():
            s1 = wedge_sign(before, two)
            if not s1:
                continue
            s2 = wedge_sign(before | two, after)
            if not s2:
                continue
            sign = -1 if t & 1 else 1
            _accumulate(out, before | two | after, sign * s1 * s2 * c)
    return out


def _contract_pair(mask: int, a: int, b: int) -> tuple[int, int]:
    """iota_a iota_b on a basis form."""
    s1, m1 = contract_mask(b, mask)
    if not s1:
        return 0, 0
    s2, m2 = contract_mask(a, m1)
    return s1 * s2, m2


def _lstar_mask(model: "Model", mask: int) -> dict[int, Fraction]:
    out: dict = {}
    n = 2 * model.m
    winv = model.omega_inv
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            w = winv[a - 1][b - 1]
            if not w:
                continue
            s, m2 = _contract_pair(mask, a, b)
            if s:
                _accumulate(out, m2, s * w)
    return out


def _delta_mask(model: "Model", mask: int) -> dict[int, Fraction]:
    one = Form(model, {mask: Fraction(1)})
    return (lstar(d(one)) - d(lstar(one))).terms


def d(f: AnyForm) -> AnyForm:
    """Exterior differential of the model, extended as an odd derivation."""
    return _apply(f, lambda mask: _cached(f.model, "d", mask, _d_mask), odd=True)


def contraction(a: int, f: AnyForm) -> AnyForm:
    """Odd contraction iota_a dual to the generator e^a."""
    def img(mask):
        s, m2 = contract_mask(a, mask)
        return {m2: Fraction(s)} if s else {}
    return _apply(f, img, odd=True)


def lstar(f: AnyForm) -> AnyForm:
    """L* = sum over ordered pairs (a, b) of omega^{ab} iota_a iota_b."""
    return _apply(f, lambda mask: _cached(f.model, "lstar", mask, _lstar_mask), odd=False)


def delta(f: AnyForm) -> AnyForm:
    """Delta = L* d - d L*, degree -1."""
    return _apply(f, lambda mask: _cached(f.model, "delta", mask, _delta_mask), odd=True)


# ----------------------------------------------------- pairing, star, integral

def _pairing_masks(model: "Model", a: int, b: int) -> Fraction:
    from .linalg import det

    ia, ib = subset_of(a), subset_of(b)
    if len(ia) != len(ib):
        return Fraction(0)
    winv = model.omega_inv
    return det([[winv[i - 1][j - 1] for j in ib] for i in ia])


def pairing(a: Form, b: Form) -> Fraction:
    """<a, b> induced by omega^{-1}: det(omega^{i_p j_q}) on basis forms."""
    a._check(b)
    total = Fraction(0)
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma.bit_count() == mb.bit_count():
                total += ca * cb * _pairing_masks(a.model, ma, mb)
    return total


def volume_form(model: "Model") -> Form:
    """omega^m / m!"""
    w = model.omega_form()
    v = Form.one(model)
    fact = 1
    for i in range(1, model.m + 1):
        v = v * w
        fact *= i
    return v.scale(Fraction(1, fact))


def _star_mask(model: "Model", mask: int) -> dict[int, Fraction]:
    # b ^ *a = <b, a> vol for every basis b of the same degree. b ^ e^T is
    # nonzero only for T the complement of b, so the system is a signed
    # permutation and each unknown is read off directly.
    top = model.top_mask
    v = integral(volume_form(model))
    out: dict = {}
    for b in model.basis(mask.bit_count()):
        p = _pairing_masks(model, b, mask)
        if p:
            comp = top ^ b
            out[comp] = p * v / wedge_sign(b, comp)
    return out


def star(f: Form) -> Form:
    """Symplectic star, degree k -> 2m - k."""
    if not isinstance(f, Form):
        raise TypeError("star is defined on scalar forms")
    return _apply(f, lambda mask: _cached(f.model, "star", mask, _star_mask), odd=False)


def integral(f: AnyForm):
    """Coefficient of e^1^...^e^{2m}; a SuperPoly for series-forms."""
    top = f.model.top_mask
    if isinstance(f, Form):
        return f.terms.get(top, Fraction(0))
    return SuperPoly(f.parities, {mono: c for (mono, mask), c in f.terms.items() if mask == top})


# ------------------------------------------------------------------ bracket

def bracket(f: AnyForm, g: AnyForm) -> AnyForm:
    """Odd bracket [f . g] = (-1)^f Delta(fg) - (-1)^f Delta(f) g - f Delta(g).

    f must have homogeneous parity; g may be arbitrary.
    """
    sign = -1 if f.parity else 1
    return (delta(f * g) - delta(f) * g).scale(sign) - f * delta(g)
