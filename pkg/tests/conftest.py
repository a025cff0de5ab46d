import contextlib

ACCEPTANCE_LINES = []


@contextlib.contextmanager
def criterion(number, label):
    """Record one acceptance line; failures still propagate to pytest."""
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  criterion {number}: {label}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  criterion {number}: {label}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
