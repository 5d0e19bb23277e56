"""Command-line front end.

Exit status: 0 ok, 1 model validation/parse failure, 2 violated
precondition (e.g. hard Lefschetz fails), 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import cohomology as coh_mod
from . import frobenius as frob
from .model import Model, ModelError, build_from_file, builtin, fraction_str, validate
from .properties import run_suites
from .serialize import form_to_json, monomial_to_json, poly_to_json

COMMANDS = ("validate", "cohomology", "lefschetz", "formality", "frobenius")

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    builtin: str | None = None
    model_path: str | None = None
    order: int = 3
    output: str = "text"
    seed: int = 0
    unsafe: bool = False
    samples: int = 200

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if (self.builtin is None) == (self.model_path is None):
            raise ValueError("exactly one of builtin / model_path is required")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.output not in ("text", "json"):
            raise ValueError("output must be text or json")


class _Exit(Exception):
    def __init__(self, status: int, report: dict):
        self.status = status
        self.report = report


def _matrix_json(a):
    return [[fraction_str(x) for x in row] for row in a]


def _load(config: RunConfig) -> Model:
    try:
        if config.builtin is not None:
            model = builtin(config.builtin)
        else:
            return build_from_file(config.model_path)
    except ModelError as exc:
        raise _Exit(EXIT_INVALID, {"error": str(exc)}) from None
    report = validate(model)
    if not report.ok:
        raise _Exit(EXIT_INVALID, {"error": report.first_failure(), "validation": report.to_json()})
    return model


def _mathieu(model, coh, lef):
    mt = coh_mod.mathieu_check(model, coh, lef)
    if not mt.consistent:
        raise _Exit(EXIT_INTERNAL, {"error": "Mathieu verdicts disagree",
                                    "mathieu": list(mt.verdicts)})
    return mt


def _cmd_validate(model: Model, config: RunConfig, report: dict) -> int:
    v = validate(model)
    report["validation"] = v.to_json()
    suites = run_suites(model, config.seed, config.samples)
    report["properties"] = suites
    broken = [k for k, n in suites["bracket_axiom_failures"].items() if n]
    broken += [k for k, n in suites["adjointness_failures"].items() if n]
    ids = suites["operator_identities"]
    broken += [k for k in ("Delta^2=0", "Delta d + d Delta=0", "star^2=id", "b^*a=*b^a") if not ids[k]]
    if broken:
        report["error"] = f"property suite failures: {broken}"
        return EXIT_INTERNAL
    return EXIT_OK


def _cmd_cohomology(model: Model, config: RunConfig, report: dict) -> int:
    coh = coh_mod.cohomology_d(model)
    report["betti"] = coh.betti
    report["canonical"] = coh_mod.cohomology_delta(model).to_json()
    report["harmonic_representatives"] = coh.all_harmonic
    if config.output == "json":
        report["representatives"] = [form_to_json(c) for c in coh.representatives]
        report["degrees"] = coh.degrees
    return EXIT_OK


def _cmd_lefschetz(model: Model, config: RunConfig, report: dict) -> int:
    coh = coh_mod.cohomology_d(model)
    lef = coh_mod.hard_lefschetz_check(model, coh)
    report["betti"] = coh.betti
    report["lefschetz_ranks"] = lef.ranks
    report["lefschetz"] = "pass" if lef.ok else f"fail at k={lef.failed_at[0]}"
    mt = _mathieu(model, coh, lef)
    report["mathieu"] = list(mt.verdicts)
    if config.output == "json":
        report["mathieu_detail"] = mt.to_json()
    return EXIT_OK


def _cmd_formality(model: Model, config: RunConfig, report: dict) -> int:
    coh = coh_mod.cohomology_d(model)
    report["betti"] = coh.betti
    dd = coh_mod.dd_delta_check(model)
    report["dd_delta"] = dd.to_json()
    try:
        fw = coh_mod.formality_witness(model, dd)
    except coh_mod.PreconditionError as exc:
        report["formality"] = {"refused": str(exc)}
        report["error"] = str(exc)
        return EXIT_PRECONDITION
    report["formality"] = fw.to_json()
    return EXIT_OK if fw.ok else EXIT_INTERNAL


def _structure_json(struct) -> list:
    out = []
    for (i, j), row in sorted(struct.items()):
        for l, a in enumerate(row):
            if a:
                out.append([i, j, l, poly_to_json(a)])
    return out


def _cmd_frobenius(model: Model, config: RunConfig, report: dict) -> int:
    coh = coh_mod.cohomology_d(model)
    lef = coh_mod.hard_lefschetz_check(model, coh)
    mt = _mathieu(model, coh, lef)
    if not lef.ok:
        failed = ", ".join(mt.failed_conditions())
        report["error"] = f"hard Lefschetz fails at k={lef.failed_at[0]} (failed Mathieu conditions: {failed})"
        return EXIT_PRECONDITION
    try:
        sol, data, wdvv = frob.frobenius_pipeline(model, coh, config.order,
                                                  extra=config.order if config.unsafe else 0)
    except coh_mod.PreconditionError as exc:
        report["error"] = str(exc)
        return EXIT_PRECONDITION
    except frob.SolverError as exc:
        report["error"] = f"solver inconsistency: {exc}"
        return EXIT_INTERNAL
    if not sol.residual.is_zero():
        report["error"] = "Maurer-Cartan residual does not vanish"
        return EXIT_INTERNAL

    report["order"] = config.order
    report["certified_degree"] = data.certified_degree
    report["metric"] = _matrix_json(data.metric)
    report["phi"] = poly_to_json(data.phi)
    at0 = data.at_zero()
    report["structure_constants"] = {
        "at_zero": [[i, j, l, fraction_str(c)] for (i, j), row in sorted(at0.items())
                    for l, c in enumerate(row) if c],
        "polynomial": _structure_json(data.structure),
        "trusted_degree": data.structure_degree,
        "cocycle_agrees": data.products_agree(),
    }
    report["wdvv"] = wdvv.to_json()
    report["grading"] = [[monomial_to_json(m), xd, cd] for m, xd, cd in data.grading()]
    report["findings"] = sol.findings
    if config.unsafe and data.uncertified is not None:
        report["phi_uncertified"] = poly_to_json(data.uncertified)
    if not data.products_agree():
        report["error"] = "cocycle and potential products disagree"
        return EXIT_INTERNAL
    if not wdvv.passed:
        report["error"] = f"WDVV fails at {list(wdvv.fail_at)}"
        return EXIT_INTERNAL
    return EXIT_OK


_HANDLERS = {
    "validate": _cmd_validate,
    "cohomology": _cmd_cohomology,
    "lefschetz": _cmd_lefschetz,
    "formality": _cmd_formality,
    "frobenius": _cmd_frobenius,
}


def run(config: RunConfig) -> tuple[int, dict]:
    report: dict = {"command": config.command, "seed": config.seed}
    try:
        model = _load(config)
        report["model"] = model.name
        status = _HANDLERS[config.command](model, config, report)
    except _Exit as exc:
        report.update(exc.report)
        status = exc.status
    report["status"] = status
    return status, report


def _text(report: dict) -> str:
    lines = []
    for key in ("model", "betti", "lefschetz_ranks", "lefschetz", "mathieu", "certified_degree",
                "wdvv", "error"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    if "validation" in report:
        lines.append("model checks:")
        for name, ok in report["validation"]["checks"].items():
            lines.append(f"  {name}: {'pass' if ok else 'FAIL'}")
    if "properties" in report:
        p = report["properties"]
        lines.append(f"operator identities (seed {report['seed']}, {p['samples']} samples):")
        for name, ok in p["operator_identities"].items():
            lines.append(f"  {name}: {'pass' if ok else 'FAIL'}")
        lines.append(f"  Delta / ((-1)^(k+1) *d*): {p['delta_over_star_d_star']}")
        lines.append(f"  bracket axiom failures: {p['bracket_axiom_failures']}")
        lines.append(f"  adjointness failures: {p['adjointness_failures']}")
    if "canonical" in report:
        lines.append(f"canonical cohomology: {report['canonical']['dims']}")
    if "dd_delta" in report:
        lines.append(f"ddDelta: {'pass' if report['dd_delta']['ok'] else 'fail'} "
                     f"{[d_['im_d_delta'] for d_ in report['dd_delta']['degrees']]}")
    if "formality" in report:
        f = report["formality"]
        lines.append("formality: " + (f"refused ({f['refused']})" if "refused" in f
                                      else ("pass" if f["ok"] else "fail")))
    if "phi" in report:
        lines.append(f"phi terms: {len(report['phi'])}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdgbv", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", help="torus:M or kodaira-thurston")
    src.add_argument("--model", metavar="PATH", help="model JSON file")
    p.add_argument("--order", type=int, default=3, help="Maurer-Cartan truncation order")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200, help="random samples per property suite")
    p.add_argument("--unsafe", action="store_true", help="also print uncertified Phi terms")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(args.command, args.builtin, args.model, args.order, args.output,
                           args.seed, args.unsafe, args.samples)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    status, report = run(config)
    sys.stdout.write(dumps(report) if config.output == "json" else _text(report) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
