"""Kernels, images and cohomology of d and Delta; Lefschetz, Mathieu, ddDelta, formality.

All subspaces live in Q^{dim Omega^k} with coordinates in the model's
canonical degree-k basis, stored in reduced echelon form so that the
output is reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import exterior
from .exterior import Form
from .linalg import Subspace, matvec, nullspace, solve, transpose
from .model import Model


def operator_matrix(model: Model, op: Callable[[Form], Form], k: int, shift: int) -> list[list[Fraction]]:
    """Matrix of a homogeneous operator Omega^k -> Omega^{k+shift}."""
    rows = model.basis(k + shift)
    cols = model.basis(k)
    idx = model.index(k + shift)
    a = [[Fraction(0)] * len(cols) for _ in rows]
    for j, mask in enumerate(cols):
        for m2, c in op(Form(model, {mask: Fraction(1)})).terms.items():
            a[idx[m2]][j] = c
    return a


def _cached_matrix(model: Model, name: str, op, k: int, shift: int):
    cache = model.cache.setdefault("matrix:" + name, {})
    if k not in cache:
        cache[k] = operator_matrix(model, op, k, shift)
    return cache[k]


def d_matrix(model: Model, k: int):
    return _cached_matrix(model, "d", exterior.d, k, 1)


def delta_matrix(model: Model, k: int):
    return _cached_matrix(model, "delta", exterior.delta, k, -1)


def dd_matrix(model: Model, k: int):
    """d Delta on Omega^k (degree preserving)."""
    return _cached_matrix(model, "dDelta", lambda f: exterior.d(exterior.delta(f)), k, 0)


def _image(a, nrows: int) -> Subspace:
    return Subspace(transpose(a) if a and a[0] else [], nrows)


def _kernel(a, ncols: int) -> Subspace:
    if not a:
        return Subspace([[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)], ncols)
    return Subspace(nullspace(a, ncols), ncols)


def _dims(model: Model, k: int) -> int:
    return len(model.basis(k))


class Spaces:
    """Lazy per-degree Ker/Im of d and Delta for one model."""

    def __init__(self, model: Model):
        self.model = model
        self._memo: dict = {}

    def _get(self, key, build):
        if key not in self._memo:
            self._memo[key] = build()
        return self._memo[key]

    def dim(self, k: int) -> int:
        return _dims(self.model, k)

    def ker_d(self, k: int) -> Subspace:
        return self._get(("ker_d", k), lambda: _kernel(d_matrix(self.model, k), self.dim(k)))

    def im_d(self, k: int) -> Subspace:
        """d(Omega^{k-1}) inside Omega^k."""
        if k - 1 < 0:
            return Subspace([], self.dim(k))
        return self._get(("im_d", k), lambda: _image(d_matrix(self.model, k - 1), self.dim(k)))

    def ker_delta(self, k: int) -> Subspace:
        return self._get(("ker_delta", k),
                         lambda: _kernel(delta_matrix(self.model, k), self.dim(k)))

    def im_delta(self, k: int) -> Subspace:
        """Delta(Omega^{k+1}) inside Omega^k."""
        if k + 1 > self.model.dim:
            return Subspace([], self.dim(k))
        return self._get(("im_delta", k),
                         lambda: _image(delta_matrix(self.model, k + 1), self.dim(k)))

    def im_d_delta(self, k: int) -> Subspace:
        return self._get(("im_dd", k), lambda: _image(dd_matrix(self.model, k), self.dim(k)))

    def harmonic(self, k: int) -> Subspace:
        """Ker d n Ker Delta: symplectic harmonic forms of degree k."""
        return self._get(("harm", k), lambda: self.ker_d(k).intersect(self.ker_delta(k)))


def spaces(model: Model) -> Spaces:
    if "spaces" not in model.cache:
        model.cache["spaces"] = Spaces(model)
    return model.cache["spaces"]


# ----------------------------------------------------------------- de Rham

@dataclass
class CohomologyBasis:
    """Representatives c_i ordered by degree; c_0 = 1."""

    model: Model
    betti: list[int]
    representatives: list[Form]
    degrees: list[int]
    harmonic: list[bool]

    @property
    def total(self) -> int:
        return len(self.representatives)

    @property
    def parities(self) -> tuple[int, ...]:
        return tuple(k & 1 for k in self.degrees)

    @property
    def all_harmonic(self) -> bool:
        return all(self.harmonic)

    def indices_in_degree(self, k: int) -> list[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == k]

    def coordinates(self, form: Form) -> list[Fraction]:
        """Coordinates of the class of a closed homogeneous form in this basis.

        Raises ValueError if the form is not closed.
        """
        if form.is_zero():
            return [Fraction(0)] * self.total
        k = form.degree
        if not exterior.d(form).is_zero():
            raise ValueError("form is not closed")
        idx = self.indices_in_degree(k)
        sp = spaces(self.model)
        reps = [self.representatives[i].vector(k) for i in idx]
        cols = reps + sp.im_d(k).basis
        sol = solve(transpose(cols), form.vector(k), len(cols))
        if sol is None:
            raise ValueError("closed form not in span of representatives and exact forms")
        out = [Fraction(0)] * self.total
        for i, c in zip(idx, sol):
            out[i] = c
        return out

    def to_json(self) -> dict:
        from .serialize import form_to_json

        return {
            "betti": list(self.betti),
            "degrees": list(self.degrees),
            "harmonic": list(self.harmonic),
            "representatives": [form_to_json(c) for c in self.representatives],
        }


def _pick_complement(candidates: list[list[Fraction]], base: Subspace) -> list[list[Fraction]]:
    """Greedily choose candidates independent modulo base, in order."""
    chosen = []
    acc = Subspace(base.basis, base.ambient)
    for v in candidates:
        if not acc.contains(v):
            chosen.append(v)
            acc = Subspace(acc.basis + [v], acc.ambient)
    return chosen


def cohomology_d(model: Model) -> CohomologyBasis:
    """de Rham cohomology with harmonic representatives wherever possible."""
    sp = spaces(model)
    betti, reps, degrees, harm = [], [], [], []
    for k in range(model.dim + 1):
        z, b = sp.ker_d(k), sp.im_d(k)
        bk = z.dim - b.dim
        betti.append(bk)
        # harmonic candidates first, then the echelon basis of Ker d
        hv = _pick_complement(sp.harmonic(k).basis, b)
        if k == 0:
            hv = [[Fraction(1)]] if sp.harmonic(0).dim else []
        rest = _pick_complement(z.basis, Subspace(b.basis + hv, b.ambient))
        for v in hv:
            reps.append(Form.from_vector(model, k, v))
            degrees.append(k)
            harm.append(True)
        for v in rest:
            reps.append(Form.from_vector(model, k, v))
            degrees.append(k)
            harm.append(False)
    return CohomologyBasis(model, betti, reps, degrees, harm)


@dataclass
class CanonicalCohomology:
    ker: list[int]
    im: list[int]
    dims: list[int]

    def to_json(self) -> dict:
        return {"ker_delta": self.ker, "im_delta": self.im, "dims": self.dims}


def cohomology_delta(model: Model) -> CanonicalCohomology:
    """Dimensions of Ker Delta / Im Delta per degree."""
    sp = spaces(model)
    ker = [sp.ker_delta(k).dim for k in range(model.dim + 1)]
    im = [sp.im_delta(k).dim for k in range(model.dim + 1)]
    return CanonicalCohomology(ker, im, [a - b for a, b in zip(ker, im)])


# ----------------------------------------------------------- hard Lefschetz

@dataclass
class LefschetzReport:
    ranks: list[int]          # index k: rank of [omega^k] on H^{m-k}
    source_dims: list[int]
    target_dims: list[int]
    failed_at: list[int]

    @property
    def ok(self) -> bool:
        return not self.failed_at

    def to_json(self) -> dict:
        return {
            "ranks": self.ranks,
            "source_dims": self.source_dims,
            "target_dims": self.target_dims,
            "failed_at": self.failed_at,
            "ok": self.ok,
        }


def hard_lefschetz_check(model: Model, coh: CohomologyBasis | None = None) -> LefschetzReport:
    coh = coh or cohomology_d(model)
    m = model.m
    w = model.omega_form()
    power = Form.one(model)
    ranks, src, tgt, failed = [], [], [], []
    for k in range(m + 1):
        images = []
        for i in coh.indices_in_degree(m - k):
            images.append(coh.coordinates(coh.representatives[i] * power))
        r = len(Subspace(images, coh.total)) if images else 0
        s, t = coh.betti[m - k], coh.betti[m + k]
        ranks.append(r)
        src.append(s)
        tgt.append(t)
        if not (r == s == t):
            failed.append(k)
        power = power * w
    return LefschetzReport(ranks, src, tgt, failed)


# ---------------------------------------------------------------- Mathieu

@dataclass
class MathieuReport:
    lefschetz: bool
    quotient_iso: bool
    harmonic_reps: bool
    quotient_detail: list[dict] = field(default_factory=list)
    classes_without_harmonic: list[int] = field(default_factory=list)

    @property
    def verdicts(self) -> tuple[bool, bool, bool]:
        return (self.lefschetz, self.quotient_iso, self.harmonic_reps)

    @property
    def consistent(self) -> bool:
        return len(set(self.verdicts)) == 1

    def failed_conditions(self) -> list[str]:
        names = ("(i) hard Lefschetz", "(ii) quotient complex isomorphism",
                 "(iii) harmonic representatives")
        return [n for n, v in zip(names, self.verdicts) if not v]

    def to_json(self) -> dict:
        return {
            "verdicts": list(self.verdicts),
            "consistent": self.consistent,
            "quotient": self.quotient_detail,
            "classes_without_harmonic": self.classes_without_harmonic,
        }


def _delta_preimage(model: Model, k: int, target: Subspace) -> Subspace:
    """{x in Omega^k : Delta x in target}."""
    n = len(model.basis(k))
    dm = delta_matrix(model, k)
    if not dm:
        return Subspace([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)
    tb = target.basis
    # Delta x - sum_j y_j t_j = 0
    stacked = [list(row) + [-t[i] for t in tb] for i, row in enumerate(dm)]
    return Subspace([s[:n] for s in nullspace(stacked, n + len(tb))], n)


def quotient_complex_check(model: Model) -> tuple[bool, list[dict]]:
    """Does (Omega, Delta) -> (Omega/d Omega, Delta) induce an isomorphism in cohomology?

    Per degree k, with D = d Omega^{k-1}:
      H(quotient)_k = {x : Delta x in d Omega^{k-2}} / (Delta Omega^{k+1} + D)
      image of H(Omega, Delta)_k = (Ker Delta + Delta Omega^{k+1} + D) / (Delta Omega^{k+1} + D)
    """
    sp = spaces(model)
    ok = True
    detail = []
    for k in range(model.dim + 1):
        n = sp.dim(k)
        dk = sp.im_d(k)
        bq = sp.im_delta(k) + dk
        zq = _delta_preimage(model, k, sp.im_d(k - 1)) if k >= 1 else Subspace([[Fraction(1)]], n)
        h_delta = sp.ker_delta(k).dim - sp.im_delta(k).dim
        h_quot = zq.dim - bq.dim
        rank = (sp.ker_delta(k) + bq).dim - bq.dim
        iso = rank == h_delta == h_quot
        ok = ok and iso
        detail.append({"degree": k, "canonical": h_delta, "quotient": h_quot, "rank": rank, "iso": iso})
    return ok, detail


def harmonic_representative(model: Model, form: Form) -> Form | None:
    """Solve Delta(form + d u) = 0 for u; return the harmonic representative or None."""
    k = form.degree
    if k == 0:
        return form if exterior.delta(form).is_zero() else None
    rhs = [-x for x in exterior.delta(form).vector(k - 1)]
    # Delta d on Omega^{k-1}
    a = _cached_matrix(model, "Deltad", lambda f: exterior.delta(exterior.d(f)), k - 1, 0)
    u = solve(a, rhs, len(model.basis(k - 1)))
    if u is None:
        return None
    return form + exterior.d(Form.from_vector(model, k - 1, u))


def mathieu_check(model: Model, coh: CohomologyBasis | None = None,
                  lefschetz: LefschetzReport | None = None) -> MathieuReport:
    coh = coh or cohomology_d(model)
    lef = lefschetz or hard_lefschetz_check(model, coh)
    q_ok, q_detail = quotient_complex_check(model)
    missing = [i for i, c in enumerate(coh.representatives) if harmonic_representative(model, c) is None]
    return MathieuReport(lef.ok, q_ok, not missing, q_detail, missing)


# ----------------------------------------------------------------- ddDelta

@dataclass
class DDeltaReport:
    dims: list[dict]
    equal: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.equal)

    def to_json(self) -> dict:
        return {"degrees": self.dims, "equal": self.equal, "ok": self.ok}


def dd_delta_check(model: Model) -> DDeltaReport:
    """Im d Delta = Im d n Ker Delta = Im Delta n Ker d, as subspaces per degree."""
    sp = spaces(model)
    dims, equal = [], []
    for k in range(model.dim + 1):
        a = sp.im_d_delta(k)
        b = sp.im_d(k).intersect(sp.ker_delta(k))
        c = sp.im_delta(k).intersect(sp.ker_d(k))
        eq = a.equals(b) and b.equals(c)
        dims.append({"degree": k, "im_d_delta": a.dim, "im_d_cap_ker_delta": b.dim,
                     "im_delta_cap_ker_d": c.dim})
        equal.append(eq)
    return DDeltaReport(dims, equal)


# --------------------------------------------------------------- formality

class PreconditionError(RuntimeError):
    """An operation was asked to run on a model that fails its precondition."""


@dataclass
class FormalityReport:
    kernel_cohomology: list[int]
    inclusion_ranks: list[int]
    projection_ranks: list[int]
    betti: list[int]
    canonical: list[int]
    projection_is_chain_map: bool

    @property
    def inclusion_iso(self) -> bool:
        return all(r == h == b for r, h, b in zip(self.inclusion_ranks, self.kernel_cohomology, self.betti))

    @property
    def projection_iso(self) -> bool:
        return self.projection_is_chain_map and all(
            r == h == c for r, h, c in zip(self.projection_ranks, self.kernel_cohomology, self.canonical))

    @property
    def ok(self) -> bool:
        return self.inclusion_iso and self.projection_iso

    def to_json(self) -> dict:
        return {
            "ker_delta_cohomology": self.kernel_cohomology,
            "inclusion_ranks": self.inclusion_ranks,
            "projection_ranks": self.projection_ranks,
            "projection_is_chain_map": self.projection_is_chain_map,
            "inclusion_iso": self.inclusion_iso,
            "projection_iso": self.projection_iso,
            "ok": self.ok,
        }


def _apply_matrix_to_space(a, space: Subspace, nrows: int) -> Subspace:
    return Subspace([matvec(a, v) for v in space.basis] if a else [], nrows)


def formality_witness(model: Model, dd: DDeltaReport | None = None) -> FormalityReport:
    """Check the zig-zag (Omega, d) <- (Ker Delta, d) -> (H, 0) is made of quasi-isomorphisms."""
    dd = dd or dd_delta_check(model)
    if not dd.ok:
        bad = [k for k, e in enumerate(dd.equal) if not e]
        raise PreconditionError(f"ddDelta lemma fails in degree(s) {bad}")
    sp = spaces(model)
    n = model.dim
    kh, inc, proj, betti, canon = [], [], [], [], []
    chain = True
    for k in range(n + 1):
        kd = sp.ker_delta(k)
        z = kd.intersect(sp.ker_d(k))
        # d(Ker Delta^{k-1})
        b = (_apply_matrix_to_space(d_matrix(model, k - 1), sp.ker_delta(k - 1), sp.dim(k))
             if k >= 1 else Subspace([], sp.dim(k)))
        kh.append(z.dim - b.dim)
        inc.append((z + sp.im_d(k)).dim - sp.im_d(k).dim)
        betti.append(sp.ker_d(k).dim - sp.im_d(k).dim)
        canon.append(kd.dim - sp.im_delta(k).dim)
        # projection Ker Delta -> H(Omega, Delta) kills d(Ker Delta) only if it lands in Im Delta
        if not sp.im_delta(k).contains_space(b):
            chain = False
        proj.append((z + sp.im_delta(k)).dim - sp.im_delta(k).dim)
    return FormalityReport(kh, inc, proj, betti, canon, chain)
