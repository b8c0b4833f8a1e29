"""Shared pytest hooks.

Prints one PASS/FAIL line per acceptance criterion (tests named test_acNN_*)
in the terminal summary, so an acceptance run is auditable at a glance.
"""

import re

_AC_PATTERN = re.compile(r"test_acceptance\.py::test_ac(\d+)\w*")
_ac_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _AC_PATTERN.search(report.nodeid)
    if m:
        _ac_results[int(m.group(1))] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ac_results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ac_results):
        outcome = _ac_results[k]
        line = f"AC{k}: {'PASS' if outcome == 'passed' else outcome.upper()}"
        terminalreporter.write_line(line)
