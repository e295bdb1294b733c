from __future__ import annotations

import numpy as np
import pytest

from ldpc_guard.construction import ConstructionSpec, peg_construct
from ldpc_guard.graph import TannerGraph

# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
ACCEPTANCE_TOTAL = 8

DESK_CW3 = ConstructionSpec(150, 95, 3, 7, rng_seed=0)
DESK_CW4 = ConstructionSpec(200, 140, 4, 9, rng_seed=0)


def random_graph(rng: np.random.Generator, n: int, m: int, gamma: int) -> TannerGraph:
    """Each variable picks gamma distinct checks uniformly; 4-cycles allowed."""
    return TannerGraph.from_var_adj(m, [rng.choice(m, gamma, replace=False).tolist() for _ in range(n)])


def random_girth6(rng: np.random.Generator, n: int, m: int, gamma: int, tries: int = 200) -> TannerGraph:
    """Random column-weight-gamma graph in which two variables share at most one check."""
    used: set[tuple[int, int]] = set()
    rows: list[list[int]] = []
    for _ in range(n):
        for _t in range(tries):
            row: list[int] = []
            for _k in range(gamma):
                ok = [c for c in range(m) if c not in row and all((min(c, d), max(c, d)) not in used for d in row)]
                if not ok:
                    break
                row.append(int(rng.choice(ok)))
            if len(row) == gamma:
                break
        else:
            raise RuntimeError("could not place variable")
        used.update((min(a, b), max(a, b)) for i, a in enumerate(row) for b in row[i + 1:])
        rows.append(row)
    return TannerGraph.from_var_adj(m, rows)


def ring(k: int) -> TannerGraph:
    """Cycle of length 2k: variable i joins checks i and i+1 mod k."""
    return TannerGraph.from_var_adj(k, [[i, (i + 1) % k] for i in range(k)])


@pytest.fixture(scope="session")
def cw3_desk():
    return peg_construct(DESK_CW3)


@pytest.fixture(scope="session")
def cw4_desk():
    return peg_construct(DESK_CW4)


@pytest.fixture
def criterion():
    def record(k: int, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[k] = (bool(ok), detail)
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}")
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in range(1, ACCEPTANCE_TOTAL + 1):
        if k in ACCEPTANCE:
            ok, detail = ACCEPTANCE[k]
            tr.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            tr.write_line(f"criterion {k}: NOT RUN")
