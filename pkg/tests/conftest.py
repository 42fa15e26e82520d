import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from crmaps.algebra.poly import Poly
from crmaps.algebra.scalars import gq
from crmaps.algebra.space import VariableSpace

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("CRMAPS_HYPOTHESIS", "default"))

SPACE = VariableSpace.make(["z1", "z2", "w"], weights={"z1": 1, "z2": 1, "w": 2})

small_fracs = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
scalars = st.builds(gq, small_fracs, small_fracs)


@st.composite
def polys(draw, space=SPACE, max_terms=4, max_exp=2):
    n = len(space.names)
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, max_exp)] * n), scalars, max_size=max_terms))
    return Poly.from_terms(space, terms)


@pytest.fixture
def space():
    return SPACE


# acceptance bookkeeping: one PASS/FAIL line per criterion in the terminal summary
_CRITERIA: dict[int, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.skipped or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    num, label = mark.args
    detail = ""
    if rep.failed and call.excinfo is not None:
        detail = call.excinfo.exconly().splitlines()[0][:160]
    _CRITERIA.setdefault(num, []).append((label, item.name, rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        parts = _CRITERIA[num]
        ok = all(p for _, _, p, _ in parts)
        tr.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {parts[0][0]}")
        for _, name, passed, detail in parts:
            if not passed or len(parts) > 1:
                tr.write_line(f"      {'pass' if passed else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
