import random

import pytest
from hypothesis import settings, strategies as st

from goodsets import PointSet

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def ps(*points, n=None):
    pts = tuple(tuple(p) for p in points)
    return PointSet(n or len(pts[0]), pts)


TWO_BLOCKS = ps("000", "001", "110", "111")
RECTANGLE = ps("ax", "ay", "bx", "by")
GRID_2x3 = ps("ax", "ay", "az", "bx", "by", "bz")
SIX_CYCLE = ps("ax", "bx", "by", "cy", "cz", "az")


@pytest.fixture
def rng():
    return random.Random(12345)


@st.composite
def point_sets(draw, max_n=3, max_size=7, alphabet=3, min_size=1):
    n = draw(st.integers(1, max_n))
    labels = st.sampled_from([str(k) for k in range(alphabet)])
    pts = draw(st.lists(st.tuples(*([labels] * n)), min_size=min_size, max_size=max_size, unique=True))
    return PointSet(n, tuple(pts))


# criterion name -> short metric line, filled in by the acceptance tests
ACCEPTANCE_NOTES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", None) != "call" or "test_acceptance" not in rep.nodeid:
                continue
            name = rep.nodeid.split("::")[-1]
            if name.startswith("test_criterion_"):
                lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(lines, key=lambda x: int(x[0].split("_")[2])):
            note = ACCEPTANCE_NOTES.get(name)
            terminalreporter.write_line(f"{verdict}  {name}" + (f"  ({note})" if note else ""))
