import numpy as np
import pytest

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _ACCEPTANCE[props["criterion"]] = (report.passed, props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[crit]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] AC{crit:02d} {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
