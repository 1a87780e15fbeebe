"""Shared pytest hooks: a one-line verdict per acceptance criterion.

The acceptance tests are named test_criterion_NN_*; after the run we print
a compact PASS/FAIL table so the suite's contract is visible at a glance
without scrolling through the full pytest output.
"""

_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    label = name[len("test_criterion_"):]
    if report.passed:
        verdict = "PASS"
    elif report.skipped:
        verdict = "SKIP"
    else:
        verdict = "FAIL"
    _CRITERIA[label] = verdict


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {label}: {_CRITERIA[label]}")
