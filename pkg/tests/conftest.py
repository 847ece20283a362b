import os
import pathlib

import pytest

from gyroklein.finite import validate_gyrogroup
from gyroklein.tables import cyclic_table, read_table

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURES = pathlib.Path(os.environ.get("GYROKLEIN_FIXTURES", ROOT / "fixtures"))


def fixture_path(name: str) -> pathlib.Path:
    return FIXTURES / f"{name}.tbl"


def load_fixture(name: str):
    path = fixture_path(name)
    if not path.exists():
        pytest.skip(f"fixture {path} not present (tables are sourced externally, see fixtures/README.md)")
    return validate_gyrogroup(read_table(path))


@pytest.fixture(scope="session")
def g8():
    return load_fixture("g8")


@pytest.fixture(scope="session")
def k16():
    return load_fixture("k16")


@pytest.fixture(scope="session")
def g15():
    return load_fixture("g15")


@pytest.fixture(scope="session")
def z5():
    return validate_gyrogroup(cyclic_table(5))


# acceptance criteria: one summary line each at the end of the run

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or not (rep.when == "call" or rep.skipped or rep.failed):
        return
    number, title = mark.args
    status = "SKIP" if rep.skipped else ("FAIL" if rep.failed else "PASS")
    prev = _ACCEPTANCE.get(number, (title, []))
    prev[1].append((item.name, status))
    _ACCEPTANCE[number] = prev


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, results = _ACCEPTANCE[number]
        statuses = {s for _, s in results}
        if "FAIL" in statuses:
            overall = "FAIL"
        elif statuses == {"SKIP"}:
            overall = "SKIP"
        else:
            overall = "PASS"
        skipped = [name for name, s in results if s == "SKIP"]
        note = f"  (skipped: {', '.join(skipped)})" if skipped and overall != "SKIP" else ""
        terminalreporter.write_line(f"criterion {number}: {overall}  {title}{note}")
