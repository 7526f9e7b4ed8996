import re

CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = CRITERION.search(getattr(rep, "nodeid", ""))
            if m and (rep.when == "call" or outcome != "passed"):
                rows[int(m.group(1))] = (m.group(2).replace("_", " "), "PASS" if outcome == "passed" else "FAIL")
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(rows):
        name, status = rows[k]
        terminalreporter.write_line(f"criterion {k:2d} {name}: {status}")
