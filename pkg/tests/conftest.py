"""Collects one verdict line per acceptance criterion and prints them at the end."""

import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Record ``(id, passed, detail)``; returns ``passed`` so tests can assert on it."""
    lines = request.config.stash[_LINES]

    def record(cid: str, passed: bool, detail: str) -> bool:
        line = f"criterion {cid:<3} {'PASS' if passed else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: (int("".join(c for c in l.split()[1] if c.isdigit())), l)):
            terminalreporter.write_line(line)
