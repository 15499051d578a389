import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "exact operator laws (Hochschild and pike differentials square to zero)",
    2: "projection laws and constructive image membership",
    3: "homotopy identity for the pike operators",
    4: "hand expansions match the MC evaluator term for term",
    5: "rational construction at (2,3) and (3,1)",
    6: "boundary conditions, filtration containment, rationality",
    7: "Monte Carlo weights of brooms and exact zeros",
    8: "byte-identical repeated runs",
}

_outcomes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(crit, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(CRITERIA):
        seen = _outcomes.get(crit)
        if not seen:
            verdict = "NOT RUN"
        elif all(o == "passed" for o in seen):
            verdict = "PASS"
        else:
            verdict = "FAIL"
        terminalreporter.write_line(f"criterion {crit}: {verdict}  {CRITERIA[crit]}")
