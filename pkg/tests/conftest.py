"""Shared pytest wiring.

Acceptance checks report one PASS/FAIL line each; those lines are
collected here and replayed after the run summary so they stay visible
without -s.
"""

_acceptance_lines = []


def record_acceptance(line: str):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.write_sep("-", "acceptance checks")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
