import random
from pathlib import Path

import pytest

from symplectic_dgbv.model import (build_from_file, build_kodaira_thurston, build_sol_times_circle,
                                   build_torus, random_basis_change)

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"
DATA = Path(__file__).resolve().parent / "data"

# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def load(name):
    return build_from_file(MODELS / f"{name}.json")


def builtin_models():
    return [build_torus(1), build_torus(2), build_torus(3), build_kodaira_thurston()]


def nontrivial_models():
    """Hard Lefschetz models with Delta != 0."""
    return [build_sol_times_circle(), load("e2xR"), load("hyperbolic-twisted")]


def randomized_models(seed=2024):
    rng = random.Random(seed)
    pool = [build_torus(1), build_torus(2), build_kodaira_thurston(), build_sol_times_circle(),
            load("e2xR")]
    return [random_basis_change(m, rng) for m in pool]


@pytest.fixture
def kt():
    return build_kodaira_thurston()


@pytest.fixture
def t1():
    return build_torus(1)


@pytest.fixture
def t2():
    return build_torus(2)


@pytest.fixture
def rng():
    return random.Random(12345)
