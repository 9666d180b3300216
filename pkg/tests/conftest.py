from __future__ import annotations


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split("]")[1].split(".")[0])):
        terminalreporter.write_line(line)
