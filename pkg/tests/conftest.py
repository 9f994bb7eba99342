"""Shared test plumbing.

``ACCEPTANCE_LINES`` collects one formatted line per acceptance criterion
as the acceptance tests run; the terminal-summary hook prints them in
criterion order so every run ends with an explicit pass/fail roster.
"""
from __future__ import annotations

ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    from ringchain.verify import CRITERION_LABELS

    terminalreporter.section("acceptance criteria")
    for label in CRITERION_LABELS:
        if label in ACCEPTANCE_LINES:
            terminalreporter.write_line(ACCEPTANCE_LINES[label])
