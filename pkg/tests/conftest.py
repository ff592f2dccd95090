import pytest

from clusterforge.laurent import Laurent, xs


@pytest.fixture(scope="session")
def x_ab() -> Laurent:
    """The hexagon arc variable for the word ab, written out by hand."""
    num = xs(2, 2, 7, 8) + xs(2, 5, 7, 9) + xs(4, 5, 6, 9) + xs(2, 4, 6, 8) + xs(1, 3, 6, 9)
    return num * xs(1, 2, 3) ** -1


def pytest_terminal_summary(terminalreporter):
    try:
        from tests import test_acceptance as acc
    except ImportError:
        import test_acceptance as acc
    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.report_line(k))
