"""Shared pytest plumbing: collects the per-criterion acceptance verdict lines
and replays them in the terminal summary, so they are visible even when pytest
captures test stdout."""

ACCEPTANCE_LINES: list = []


def record(line: str) -> None:
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
