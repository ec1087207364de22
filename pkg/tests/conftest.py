"""Shared test configuration: collects acceptance-criterion verdicts so the
terminal summary shows one pass/fail line per criterion."""

ACCEPTANCE_LINES = []


def record_criterion(number: int, passed: bool, detail: str):
    verdict = "PASS" if passed else "FAIL"
    line = f"criterion {number}: {verdict} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
