import os

# every run() in the suite checks per-agent and mean-fitness monotonicity
os.environ["EVOC_CHECK_INVARIANTS"] = "1"

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
