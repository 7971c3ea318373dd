from __future__ import annotations

import os
from collections import defaultdict
from pathlib import Path

import pytest
from hypothesis import settings

from qmatroids import constructions as cons
from qmatroids import rankmetric as rm
from qmatroids.gf import field_make
from qmatroids.space import lattice, span

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def F8():
    return field_make(2, 3, [1, 1, 0, 1])


@pytest.fixture(scope="session")
def gf8_code(F8):
    a = F8.gen
    return rm.RankMetricCode(field_make(2, 1, [0, 1]), F8, [[1, a, 0, 0], [0, 1, a, 0]])


@pytest.fixture(scope="session")
def gab():
    return rm.gabidulin(2, 4, 4, 2)


@pytest.fixture(scope="session")
def loop_line():
    return span(2, 4, ["0001"])


@pytest.fixture(scope="session")
def loopy(loop_line):
    """Dimension <= 2 subspaces of F_2^4 avoiding <0001>, as independent spaces."""
    fam = [S for S in lattice(2, 4) if S.dim <= 2 and not loop_line <= S]
    return cons.from_independents(fam, 2, 4)


@pytest.fixture(scope="session")
def counter_I():
    return span(2, 4, ["1001", "0110"])


@pytest.fixture(scope="session")
def counter_family(counter_I):
    return [S for S in lattice(2, 4) if S <= counter_I]


# -- acceptance summary ---------------------------------------------------------

_criteria: dict[int, dict] = defaultdict(lambda: {"title": "", "outcomes": []})


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    number, title = marker.args
    entry = _criteria[number]
    entry["title"] = title
    entry["outcomes"].append(call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        ok = all(entry["outcomes"]) and entry["outcomes"]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'} - {entry['title']}"
            f" ({sum(entry['outcomes'])}/{len(entry['outcomes'])} checks)")
