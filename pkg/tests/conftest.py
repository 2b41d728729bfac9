"""Shared fixtures and the acceptance-criteria summary hook."""

import pytest

ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []  # (criterion, status, detail)


def record_acceptance(criterion: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((criterion, "PASS" if passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, status, detail in ACCEPTANCE_RESULTS:
        line = f"{status}  {criterion}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
