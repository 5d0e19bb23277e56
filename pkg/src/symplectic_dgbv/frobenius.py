"""Normalized Maurer-Cartan solution and the Frobenius structure on cohomology.

The formal variables x^0..x^{r-1} are indexed like the cohomology basis
c_0..c_{r-1} (c_0 = 1) and x^i has the parity of deg c_i, so the
generic element Gamma_1 = sum_i x^i c_i is even.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from . import superpoly
from .cohomology import (CohomologyBasis, PreconditionError, dd_delta_check, dd_matrix,
                         hard_lefschetz_check, spaces)
from .exterior import Form, SeriesForm, bracket, d, delta, integral, wedge
from .linalg import inverse, solve
from .model import Model
from .superpoly import Monomial, SuperPoly


class SolverError(RuntimeError):
    """The Maurer-Cartan corrector equation had no solution."""


def init_gamma1(coh: CohomologyBasis, order: int = 1) -> SeriesForm:
    """Gamma_1 = sum_i x^i c_i over harmonic representatives."""
    if not coh.all_harmonic:
        bad = [i for i, h in enumerate(coh.harmonic) if not h]
        raise PreconditionError(f"representatives {bad} are not symplectic harmonic")
    r = coh.total
    parities = coh.parities
    terms: dict = {}
    for i, c in enumerate(coh.representatives):
        mono = superpoly.variable(i, r)
        for mask, v in c.terms.items():
            terms[mono, mask] = v
    return SeriesForm(coh.model, parities, order, terms)


@dataclass
class MCSolution:
    model: Model
    cohomology: CohomologyBasis
    order: int
    components: dict[int, SeriesForm]     # n -> Gamma_n
    b_components: dict[int, SeriesForm]   # n -> B_n, n >= 2
    findings: list[str] = field(default_factory=list)

    @property
    def parities(self) -> tuple[int, ...]:
        return self.cohomology.parities

    def _sum(self, parts: dict[int, SeriesForm]) -> SeriesForm:
        total = SeriesForm.zero(self.model, self.parities, self.order)
        for n in sorted(parts):
            total = total + parts[n].with_order(self.order)
        return total

    @property
    def gamma(self) -> SeriesForm:
        return self._sum(self.components)

    @property
    def B(self) -> SeriesForm:
        return self._sum(self.b_components)

    @property
    def residual(self) -> SeriesForm:
        g = self.gamma
        return d(g) + bracket(g, g).scale(Fraction(1, 2))

    def truncate(self, order: int) -> "MCSolution":
        comps = {n: g.with_order(order) for n, g in self.components.items() if n <= order}
        bs = {n: b.with_order(order) for n, b in self.b_components.items() if n <= order}
        return MCSolution(self.model, self.cohomology, order, comps, bs, list(self.findings))


def _solve_dd(model: Model, r: Form) -> Form:
    """Canonical tau with d Delta tau = r, solved degree by degree."""
    tau = Form.zero(model)
    for k in sorted(r.degrees()):
        a = dd_matrix(model, k)
        n = len(model.basis(k))
        x = solve(a, r.homogeneous(k).vector(k), n)
        if x is None:
            raise SolverError(f"d Delta tau = R has no solution in degree {k}")
        tau = tau + Form.from_vector(model, k, x)
    return tau


def mc_solve(model: Model, coh: CohomologyBasis, order: int) -> MCSolution:
    """Order-by-order solution of d Gamma + 1/2 [Gamma . Gamma] = 0.

    At order n: R_n = 1/2 sum_{p+q=n} [Gamma_p . Gamma_q], solve
    d Delta tau_n = R_n per x-monomial, then Gamma_n = -Delta tau_n and
    B_n = -tau_n, so that d Gamma_n = -R_n.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    dd = dd_delta_check(model)
    if not dd.ok:
        raise PreconditionError("ddDelta lemma fails; Maurer-Cartan equation not solvable this way")
    gamma1 = init_gamma1(coh, order)
    parities = coh.parities
    r = coh.total
    comps = {1: gamma1}
    bs: dict[int, SeriesForm] = {}
    findings: list[str] = []
    for n in range(2, order + 1):
        rn = SeriesForm.zero(model, parities, n)
        for p in range(1, n):
            q = n - p
            rn = rn + bracket(comps[p].with_order(n), comps[q].with_order(n))
        rn = rn.homogeneous(n).scale(Fraction(1, 2))
        if rn.contains_variable(0):
            findings.append(f"R_{n} depends on x^0")
        tau_terms: dict = {}
        for mono in rn.monomials():
            tau = _solve_dd(model, rn.coefficient(mono))
            for mask, c in tau.terms.items():
                tau_terms[mono, mask] = c
        tau_n = SeriesForm(model, parities, order, tau_terms)
        gamma_n = -delta(tau_n)
        if gamma_n.contains_variable(0):
            findings.append(f"Gamma_{n} depends on x^0")
        comps[n] = gamma_n
        bs[n] = -tau_n
    return MCSolution(model, coh, order, comps, bs, findings)


def d_gamma(solution: MCSolution, f: SeriesForm) -> SeriesForm:
    """Twisted differential d_K f + [Gamma . f]."""
    g = solution.gamma
    return d(f) + bracket(g.with_order(f.order), f)


def in_image_of_delta(model: Model, s: SeriesForm) -> bool:
    sp = spaces(model)
    for mono in s.monomials():
        c = s.coefficient(mono)
        for k in c.degrees():
            if not sp.im_delta(k).contains(c.homogeneous(k).vector(k)):
                return False
    return True


# --------------------------------------------------------------- potential

@dataclass
class Potential:
    phi: SuperPoly
    certified_degree: int
    uncertified: SuperPoly | None = None


def potential(model: Model, solution: MCSolution, extra: int = 0) -> Potential:
    """Phi = int(Gamma^3/6 - 1/2 dB ^ Delta B), trusted through x-degree N+2.

    ``extra`` > 0 also expands the formula further and returns those
    higher terms separately as uncertified.
    """
    cert = solution.order + 2
    top = cert + extra
    g = solution.gamma.with_order(top)
    b = solution.B.with_order(top)
    cube = wedge(wedge(g, g), g)
    db_delta_b = wedge(d(b), delta(b))
    full = integral(cube.scale(Fraction(1, 6)) - db_delta_b.scale(Fraction(1, 2)))
    phi = full.truncate(cert)
    rest = None
    if extra:
        rest = SuperPoly(full.parities, {m: c for m, c in full.terms.items()
                                         if superpoly.degree(m) > cert})
    return Potential(phi, cert, rest)


def third_derivative(phi: SuperPoly, i: int, j: int, k: int) -> SuperPoly:
    """d^3 Phi / dx^i dx^j dx^k with left derivatives, d/dx^k applied first."""
    return phi.derivative(k).derivative(j).derivative(i)


# ----------------------------------------------------------------- product

def metric(coh: CohomologyBasis) -> list[list[Fraction]]:
    """Poincare metric g_ij = int c_i ^ c_j."""
    reps = coh.representatives
    return [[integral(a * b) for b in reps] for a in reps]


@dataclass
class FrobeniusData:
    cohomology: CohomologyBasis
    order: int
    metric: list[list[Fraction]]
    metric_inv: list[list[Fraction]]
    phi: SuperPoly
    certified_degree: int
    structure: dict[tuple[int, int], list[SuperPoly]]  # (i, j) -> [A_ij^l(x)]
    cocycle_at_zero: dict[tuple[int, int], list[Fraction]]
    uncertified: SuperPoly | None = None

    @property
    def parities(self) -> tuple[int, ...]:
        return self.cohomology.parities

    @property
    def rank(self) -> int:
        return self.cohomology.total

    @property
    def structure_degree(self) -> int:
        """x-degree through which the structure constants are trusted."""
        return self.certified_degree - 3

    def at_zero(self) -> dict[tuple[int, int], list[Fraction]]:
        return {key: [a.at_zero() for a in row] for key, row in self.structure.items()}

    def products_agree(self) -> bool:
        return self.at_zero() == self.cocycle_at_zero

    def grading(self) -> list[tuple[Monomial, int, int]]:
        """Each Phi monomial with its x-degree and its cohomological degree sum."""
        degs = self.cohomology.degrees
        return [(m, superpoly.degree(m), sum(e * degs[i] for i, e in enumerate(m)))
                for m in sorted(self.phi.terms)]


def potential_structure_constants(phi: SuperPoly, ginv: list[list[Fraction]],
                                  parities, degree: int) -> dict[tuple[int, int], list[SuperPoly]]:
    """A_ij^l = sum_k d^3 Phi/dx^i dx^j dx^k g^{kl}, truncated at ``degree``."""
    r = len(parities)
    firsts = {k: phi.derivative(k) for k in range(r)}
    out = {}
    for i, j in iproduct(range(r), repeat=2):
        row = [SuperPoly(parities) for _ in range(r)]
        for k in range(r):
            t = firsts[k].derivative(j).derivative(i).truncate(degree)
            if not t:
                continue
            for l in range(r):
                if ginv[k][l]:
                    row[l] = row[l] + t.scale(ginv[k][l])
        out[i, j] = row
    return out


def cocycle_structure_constants(solution: MCSolution) -> dict[tuple[int, int], list[Fraction]]:
    """psi(c_i) psi(c_j) reduced modulo Im d_Gamma, at x = 0."""
    coh = solution.cohomology
    g = solution.gamma
    psi = [g.derivative(i).at_zero() for i in range(coh.total)]
    out = {}
    for i, j in iproduct(range(coh.total), repeat=2):
        prod = psi[i] * psi[j]
        try:
            out[i, j] = coh.coordinates(prod)
        except ValueError as exc:
            raise SolverError(f"product of psi({i}), psi({j}) does not reduce: {exc}") from None
    return out


def frobenius_data(model: Model, solution: MCSolution, extra: int = 0) -> FrobeniusData:
    coh = solution.cohomology
    g = metric(coh)
    try:
        ginv = inverse(g)
    except ZeroDivisionError:
        raise PreconditionError("Poincare metric is degenerate") from None
    pot = potential(model, solution, extra)
    struct = potential_structure_constants(pot.phi, ginv, coh.parities, pot.certified_degree - 3)
    cocycle = cocycle_structure_constants(solution)
    return FrobeniusData(coh, solution.order, g, ginv, pot.phi, pot.certified_degree,
                         struct, cocycle, pot.uncertified)


# -------------------------------------------------------------------- WDVV

@dataclass
class WDVVReport:
    passed: bool
    fail_at: tuple[int, int, int] | None
    degree: int
    triples: int

    def to_json(self):
        return "pass" if self.passed else {"fail_at": list(self.fail_at)}


def wdvv_check(data: FrobeniusData) -> WDVVReport:
    """(c_i o c_j) o c_k == c_i o (c_j o c_k) through the trusted x-degree."""
    r = data.rank
    par = data.parities
    deg = data.structure_degree
    # sparse rows: (i, j) -> [(l, A_ij^l), ...] with A_ij^l != 0
    rows = {key: [(l, a) for l, a in enumerate(row) if a] for key, row in data.structure.items()}
    count = 0
    for i, j, k in iproduct(range(r), repeat=3):
        count += 1
        lhs: dict[int, SuperPoly] = {}
        rhs: dict[int, SuperPoly] = {}
        for l, a in rows.get((i, j), ()):
            for mm, b in rows.get((l, k), ()):
                lhs[mm] = lhs[mm] + a * b if mm in lhs else a * b
        for l, a in rows.get((j, k), ()):
            sign = -1 if (a.term_parity() and par[i]) else 1
            for mm, b in rows.get((i, l), ()):
                t = (a * b).scale(sign)
                rhs[mm] = rhs[mm] + t if mm in rhs else t
        for mm in lhs.keys() | rhs.keys():
            diff = lhs.get(mm, SuperPoly(par)) - rhs.get(mm, SuperPoly(par))
            if diff.truncate(deg):
                return WDVVReport(False, (i, j, k), deg, count)
    return WDVVReport(True, None, deg, count)


def frobenius_pipeline(model: Model, coh: CohomologyBasis, order: int, extra: int = 0):
    """Gate on hard Lefschetz, solve, and assemble the Frobenius data."""
    lef = hard_lefschetz_check(model, coh)
    if not lef.ok:
        raise PreconditionError(f"hard Lefschetz fails at k={lef.failed_at[0]}")
    sol = mc_solve(model, coh, order)
    data = frobenius_data(model, sol, extra)
    return sol, data, wdvv_check(data)
