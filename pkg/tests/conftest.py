import pytest

from rowconvex.core import Alphabet, shape_of, tableau


@pytest.fixture
def minus8():
    return Alphabet.from_signs("-" * 8)


@pytest.fixture
def ex5(minus8):
    """The four-row tableau whose straightening is worked out by hand."""
    n = {a.symbol: a for a in minus8}
    w = lambda *xs: [n[str(x)] for x in xs]
    return tableau([(3, w(4, 5)), (1, w(1, 3, 5, 7)), (3, w(2)), (2, w(3, 8))])


@pytest.fixture
def ab():
    return Alphabet.parse("a+,b+")


@pytest.fixture
def weyl31():
    """Three cells in the top row, one below in the middle column."""
    return shape_of([(1, 3), (2, 2)])


def pytest_terminal_summary(terminalreporter):
    import sys

    lines = [line for name, mod in list(sys.modules.items())
             if name.endswith("test_acceptance") for line in getattr(mod, "LINES", [])]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
