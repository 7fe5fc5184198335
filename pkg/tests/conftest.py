"""Shared acceptance-criteria reporting: one pass/fail line per criterion."""

_RESULTS = []


def record_criterion(num: int, ok: bool, detail: str):
    line = f"ACCEPTANCE {num:02d} {'PASS' if ok else 'FAIL'} - {detail}"
    _RESULTS.append((num, line))
    print(line, flush=True)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_RESULTS):
        terminalreporter.write_line(line)
