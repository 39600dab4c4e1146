import re


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per numbered acceptance criterion."""
    status: dict = {}
    names: dict = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", nodeid)
            if not m:
                continue
            if key == "passed" and getattr(rep, "when", "call") != "call":
                continue
            n = int(m.group(1))
            ok = key == "passed"
            status[n] = status.get(n, True) and ok
            names[n] = nodeid.split("::")[-1]
    if not status:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(status):
        label = "PASS" if status[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {label}  ({names[n]})")
