"""Shared pytest wiring for the suite.

Collects the one-line verdicts emitted by the acceptance tests and
prints them after the run, outside capture, so a plain ``pytest -v``
log always carries the conformance report.
"""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
