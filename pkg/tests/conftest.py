from __future__ import annotations

import re

_VERDICTS: dict[int, tuple[bool, str]] = {}
_NAME = re.compile(r"test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    m = _NAME.search(report.nodeid)
    if m and "test_acceptance" in report.nodeid:
        detail = ""
        if report.failed:
            detail = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else "failed"
        _VERDICTS[int(m.group(1))] = (report.passed, detail.splitlines()[0][:160] if detail else "")


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    from test_acceptance import verdict_line

    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        passed, detail = _VERDICTS[number]
        terminalreporter.write_line(verdict_line(number, passed, detail))
