import pytest

from tiltlab.fileformat import load_fixture

ACCEPTANCE = {}


def record(key, passed, detail=""):
    ACCEPTANCE[key] = (passed, detail)
    print(f"criterion {key}: {'PASS' if passed else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k)):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def a4():
    return load_fixture("a4_cluster")


@pytest.fixture(scope="session")
def d4():
    return load_fixture("d4_cluster")
