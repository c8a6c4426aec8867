from importlib import resources

import pytest
from hypothesis import settings

from slcgerm.germfile import parse_germ_file

# exact arithmetic on long chains is slow but deterministic
settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")


def corpus_text(name: str) -> str:
    return (resources.files("slcgerm") / "corpus" / name).read_text(encoding="utf-8")


@pytest.fixture
def example1():
    return parse_germ_file(corpus_text("example1.germ"))


@pytest.fixture
def example2():
    return parse_germ_file(corpus_text("example2.germ"))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number].line())
