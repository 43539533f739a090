import contextlib
import time

import pytest

_RESULTS = {}


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def record(number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _RESULTS[number] = f"criterion {number:2d} FAIL  {title}"
            print(_RESULTS[number])
            raise
        took = time.perf_counter() - start
        _RESULTS[number] = f"criterion {number:2d} PASS  {title} ({took:.2f} s)"
        print(_RESULTS[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.write_sep("-", "acceptance criteria")
        for n in sorted(_RESULTS):
            terminalreporter.write_line(_RESULTS[n])
