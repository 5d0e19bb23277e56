"""Finite-dimensional symplectic models: invariant forms on tori and nilmanifolds.

A model fixes 2m generators e^1..e^{2m}, the differential of each generator
as a combination of e^i ^ e^j (i < j), and a constant symplectic form.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

from . import exterior
from .exterior import Form, mask_of, subset_of
from .linalg import det, inverse, matmul, identity


class ModelError(ValueError):
    """A model file could not be parsed or violates a model invariant."""


@dataclass(frozen=True)
class Model:
    name: str
    m: int
    diff: tuple[tuple[int, int, int, Fraction], ...]
    omega: tuple[tuple[int, int, Fraction], ...]
    cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.m < 1:
            raise ModelError("m must be positive")
        n = 2 * self.m
        diff = tuple(sorted((k, i, j, Fraction(c)) for k, i, j, c in self.diff if c != 0))
        omega = tuple(sorted((a, b, Fraction(c)) for a, b, c in self.omega if c != 0))
        for k, i, j, _ in diff:
            if not (1 <= k <= n and 1 <= i < j <= n):
                raise ModelError(f"bad diff entry ({k}, {i}, {j})")
        for a, b, _ in omega:
            if not 1 <= a < b <= n:
                raise ModelError(f"bad omega entry ({a}, {b})")
        if len({e[:3] for e in diff}) != len(diff):
            raise ModelError("duplicate diff entry")
        if len({e[:2] for e in omega}) != len(omega):
            raise ModelError("duplicate omega entry")
        object.__setattr__(self, "diff", diff)
        object.__setattr__(self, "omega", omega)

    # ---- sizes and bases
    @property
    def dim(self) -> int:
        return 2 * self.m

    @property
    def top_mask(self) -> int:
        return (1 << self.dim) - 1

    def basis(self, k: int) -> list[int]:
        """Masks of degree-k basis forms in canonical (lexicographic) order."""
        bases = self.cache.setdefault("basis", {})
        if k not in bases:
            if 0 <= k <= self.dim:
                bases[k] = [mask_of(c) for c in combinations(range(1, self.dim + 1), k)]
            else:
                bases[k] = []
        return bases[k]

    def index(self, k: int) -> dict[int, int]:
        idx = self.cache.setdefault("index", {})
        if k not in idx:
            idx[k] = {mask: i for i, mask in enumerate(self.basis(k))}
        return idx[k]

    def sort_key(self, mask: int) -> tuple:
        return (mask.bit_count(), subset_of(mask))

    def all_basis_forms(self) -> list[Form]:
        return [Form(self, {mask: Fraction(1)}) for k in range(self.dim + 1) for mask in self.basis(k)]

    # ---- structure
    def d_generator(self, k: int) -> dict[int, Fraction]:
        gens = self.cache.setdefault("dgen", None)
        if gens is None:
            gens = {}
            for kk, i, j, c in self.diff:
                mask = mask_of((i, j))
                gens.setdefault(kk, {})
                gens[kk][mask] = gens[kk].get(mask, 0) + c
            self.cache["dgen"] = gens
        return gens.get(k, {})

    @property
    def omega_matrix(self) -> list[list[Fraction]]:
        n = self.dim
        w = [[Fraction(0)] * n for _ in range(n)]
        for a, b, c in self.omega:
            w[a - 1][b - 1] = c
            w[b - 1][a - 1] = -c
        return w

    @property
    def omega_inv(self) -> list[list[Fraction]]:
        if "omega_inv" not in self.cache:
            try:
                self.cache["omega_inv"] = inverse(self.omega_matrix)
            except ZeroDivisionError:
                raise ModelError("omega degenerate") from None
        return self.cache["omega_inv"]

    def omega_form(self) -> Form:
        return Form(self, {mask_of((a, b)): c for a, b, c in self.omega})

    def generator(self, i: int) -> Form:
        return Form.basis(self, i)

    # ---- serialization
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "m": self.m,
            "diff": [[k, i, j, fraction_str(c)] for k, i, j, c in self.diff],
            "omega": [[a, b, fraction_str(c)] for a, b, c in self.omega],
        }


def fraction_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise ModelError(f"not a scalar: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ModelError(f"scalars must be fraction strings, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ModelError(f"not a fraction: {s!r}") from None


def build_torus(m: int) -> Model:
    """Flat torus T^{2m}: zero differential, Darboux form sum e^{2k-1}^e^{2k}."""
    if m < 1:
        raise ModelError("m must be positive")
    omega = tuple((2 * k - 1, 2 * k, Fraction(1)) for k in range(1, m + 1))
    return Model(f"torus:{m}", m, (), omega)


def build_kodaira_thurston() -> Model:
    """Kodaira-Thurston nilmanifold: d e^4 = e^1^e^2, omega = e^13 + e^24."""
    return Model("kodaira-thurston", 2, ((4, 1, 2, Fraction(1)),),
                 ((1, 3, Fraction(1)), (2, 4, Fraction(1))))


def build_sol_times_circle() -> Model:
    """Sol^3 x S^1 model: d e^2 = e^12, d e^3 = -e^13, omega = e^14 + e^23.

    Unimodular, non-nilpotent, with nonzero Delta; satisfies hard Lefschetz.
    """
    return Model("sol3xS1", 2, ((2, 1, 2, Fraction(1)), (3, 1, 3, Fraction(-1))),
                 ((1, 4, Fraction(1)), (2, 3, Fraction(1))))


def builtin(name: str) -> Model:
    """Resolve ``torus:M`` or ``kodaira-thurston``."""
    if name == "kodaira-thurston":
        return build_kodaira_thurston()
    if name.startswith("torus:"):
        try:
            m = int(name.split(":", 1)[1])
        except ValueError:
            raise ModelError(f"bad torus size in {name!r}") from None
        return build_torus(m)
    raise ModelError(f"unknown builtin model {name!r}")


def model_from_json(data: dict, check: bool = True) -> Model:
    try:
        name = data["name"]
        m = data["m"]
        diff_raw = data.get("diff", [])
        omega_raw = data["omega"]
    except (KeyError, TypeError) as exc:
        raise ModelError(f"missing field {exc}") from None
    if not isinstance(m, int) or isinstance(m, bool):
        raise ModelError("m must be an integer")
    try:
        diff = [(int(k), int(i), int(j), parse_fraction(c)) for k, i, j, c in diff_raw]
        omega = [(int(a), int(b), parse_fraction(c)) for a, b, c in omega_raw]
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ModelError):
            raise
        raise ModelError(f"malformed entry: {exc}") from None
    if len({e[:3] for e in diff}) != len(diff):
        raise ModelError("duplicate diff entry")
    if len({e[:2] for e in omega}) != len(omega):
        raise ModelError("duplicate omega entry")
    model = Model(str(name), m, tuple(diff), tuple(omega))
    if check:
        report = validate(model)
        if not report.ok:
            raise ModelError(report.first_failure())
    return model


def build_from_file(path) -> Model:
    """Load and validate a model file; raises ModelError on any problem."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelError(f"parse error: {exc}") from None
    if not isinstance(data, dict):
        raise ModelError("parse error: top level must be an object")
    return model_from_json(data)


def save_model(model: Model, path) -> None:
    Path(path).write_text(json.dumps(model.to_json(), indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------- validation

@dataclass
class ValidationReport:
    checks: dict[str, bool]
    details: dict[str, str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def first_failure(self) -> str:
        for name, passed in self.checks.items():
            if not passed:
                return self.details.get(name, name)
        return ""

    def to_json(self) -> dict:
        return {"checks": dict(self.checks), "details": dict(self.details), "ok": self.ok}


CHECKS = ("d^2=0", "d omega=0", "omega invertible", "Delta^2=0", "Delta d + d Delta=0", "int d=0")


def validate(model: Model) -> ValidationReport:
    """Run every model invariant; failures are report entries, not exceptions."""
    checks: dict[str, bool] = {}
    details: dict[str, str] = {}

    bad_gen = None
    for k in range(1, model.dim + 1):
        if not exterior.d(exterior.d(model.generator(k))).is_zero():
            bad_gen = k
            break
    checks["d^2=0"] = bad_gen is None
    if bad_gen is not None:
        details["d^2=0"] = f"d^2 != 0 at generator e^{bad_gen}"

    checks["d omega=0"] = exterior.d(model.omega_form()).is_zero()
    if not checks["d omega=0"]:
        details["d omega=0"] = "d omega != 0"

    w = model.omega_matrix
    invertible = det(w) != 0
    checks["omega invertible"] = invertible
    if invertible:
        # omega^{ab} omega_{bc} = delta^a_c, literally
        invertible = matmul(model.omega_inv, w) == identity(model.dim)
        checks["omega invertible"] = invertible
    if not invertible:
        details["omega invertible"] = "omega degenerate"

    top = model.dim - 1
    checks["int d=0"] = all(
        exterior.integral(exterior.d(Form(model, {mask: Fraction(1)}))) == 0
        for mask in model.basis(top)
    )
    if not checks["int d=0"]:
        details["int d=0"] = "integral of d is nonzero (model is not unimodular)"

    if invertible:
        forms = model.all_basis_forms()
        sq = all(exterior.delta(exterior.delta(f)).is_zero() for f in forms)
        comm = all((exterior.delta(exterior.d(f)) + exterior.d(exterior.delta(f))).is_zero()
                   for f in forms)
    else:
        sq = comm = False
    checks["Delta^2=0"] = sq
    checks["Delta d + d Delta=0"] = comm
    if not sq:
        details["Delta^2=0"] = "Delta^2 != 0" if invertible else "Delta undefined (omega degenerate)"
    if not comm:
        details["Delta d + d Delta=0"] = ("Delta d + d Delta != 0" if invertible
                                          else "Delta undefined (omega degenerate)")
    return ValidationReport({name: checks[name] for name in CHECKS}, details)


# ------------------------------------------------------------ transformations

def _substitute(form: Form, images: Sequence[Form], target: Model) -> Form:
    """Image of a form under the algebra map e^a -> images[a-1]."""
    out = Form.zero(target)
    for mask, c in form.terms.items():
        term = Form.one(target)
        for i in subset_of(mask):
            term = term * images[i - 1]
        out = out + term.scale(c)
    return out


def change_basis(model: Model, p: Sequence[Sequence[Fraction]], name: str | None = None) -> Model:
    """Same algebra in the generators f^i = sum_a p[i][a] e^a."""
    from .linalg import inverse as inv

    n = model.dim
    p = [[Fraction(x) for x in row] for row in p]
    q = inv(p)
    scratch = Model("scratch", model.m, (), ((1, 2, Fraction(1)),))
    # e^a = sum_j q[a][j] f^j
    e_in_f = [Form(scratch, {1 << j: q[a][j] for j in range(n) if q[a][j]}) for a in range(n)]

    diff = []
    for i in range(n):
        de = Form.zero(model)
        for a in range(n):
            if p[i][a]:
                de = de + exterior.d(model.generator(a + 1)).scale(p[i][a])
        for mask, c in _substitute(de, e_in_f, scratch).terms.items():
            a, b = subset_of(mask)
            diff.append((i + 1, a, b, c))
    omega = []
    for mask, c in _substitute(model.omega_form(), e_in_f, scratch).terms.items():
        a, b = subset_of(mask)
        omega.append((a, b, c))
    return Model(name or f"{model.name}~", model.m, tuple(diff), tuple(omega))


def random_basis_change(model: Model, rng: random.Random, bound: int = 2) -> Model:
    """Apply a random invertible integer change of generators."""
    n = model.dim
    while True:
        p = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if det(p) != 0:
            return change_basis(model, p, name=f"{model.name}~{rng.randrange(10**6)}")


def direct_product(a: Model, b: Model) -> Model:
    """Product model: generators of b are shifted after those of a."""
    s = a.dim
    diff = list(a.diff) + [(k + s, i + s, j + s, c) for k, i, j, c in b.diff]
    omega = list(a.omega) + [(x + s, y + s, c) for x, y, c in b.omega]
    return Model(f"{a.name}x{b.name}", a.m + b.m, tuple(diff), tuple(omega))
