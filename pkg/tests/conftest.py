from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from aloops import constructions as C  # noqa: E402
from aloops.search import naive_enumerate  # noqa: E402
from aloops.table import direct_product, q6  # noqa: E402

GROUPS_DIR = Path(__file__).resolve().parents[1] / "data" / "groups" / "deg6"


def build_corpus() -> dict:
    """Every loop constructed by the acceptance scenarios, keyed by a readable name."""
    out = {"Q6": q6(), "trivial": C.cyclic(1)}
    for n in range(2, 9):
        out[f"Z{n}"] = C.cyclic(n)
    out["Z2xZ2"] = C.abelian([2, 2])
    for k, Q in enumerate(naive_enumerate(6, "automorphic")):
        if k % 10 == 0:
            out[f"naive6_{k}"] = Q
    for p in (3, 5, 7):
        out[f"Z{2 * p}"] = C.cyclic(2 * p)
        for a in C.units(p):
            out[f"Dih2_Z{p}_{a}"] = C.dih(2, C.cyclic(p), C.cyclic_automorphism(p, a))
    for a in range(3):
        for b in range(3):
            out[f"Qab3_{a}{b}"] = C.q_ab(3, a, b)
    for factors in ([27], [9, 3], [3, 3, 3]):
        out["Ab" + "x".join(map(str, factors))] = C.abelian(factors)
    for a in range(2):
        for b in range(2):
            out[f"Qab2_{a}{b}"] = C.q_ab(2, a, b)
    for t in range(5):
        D = C.drapal(5, t)
        if D is not None:
            out[f"Drapal5_{t}"] = D
    for a in range(3):
        out[f"FieldExt3_{a}"] = C.field_ext_loop(3, a)
    for a in (1, 2):
        out[f"FieldExt2_{a}"] = C.field_ext_loop(2, a)
    out["Z2xQ6"] = direct_product(C.cyclic(2), q6())
    return out


@pytest.fixture(scope="session")
def corpus() -> dict:
    return build_corpus()


@pytest.fixture(scope="session")
def automorphic_corpus(corpus) -> dict:
    from aloops.analysis import is_automorphic
    return {k: Q for k, Q in corpus.items() if is_automorphic(Q)}


@pytest.fixture
def Q6():
    return q6()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
