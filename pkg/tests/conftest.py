import helpers


def pytest_terminal_summary(terminalreporter):
    res = helpers.ACCEPTANCE_RESULTS
    if not res:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(res):
        ok, desc, secs = res[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {desc}  [{secs:.2f} s]")
