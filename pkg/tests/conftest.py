import pytest

from crawlsim import config

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def paper_2g():
    return config.bundled("paper_2g")


@pytest.fixture(scope="session")
def paper_1g():
    return config.bundled("paper_1g")


@pytest.fixture(scope="session")
def paper_osc(paper_2g):
    return paper_2g.oscillator


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
