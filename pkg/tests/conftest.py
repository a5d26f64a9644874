import time
from contextlib import contextmanager

import pytest

_RESULTS: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion.

    The block fails if it raises or if it runs past ``seconds``.
    """
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    @contextmanager
    def check(number: int, title: str, seconds: float):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            line = f"criterion {number:2d}: FAIL  {title} ({type(exc).__name__}: {str(exc).splitlines()[0][:160] if str(exc) else ''})"
            _RESULTS[number] = line
            if reporter:
                reporter.write_line(line)
            raise
        elapsed = time.perf_counter() - start
        if elapsed > seconds:
            line = f"criterion {number:2d}: FAIL  {title} (took {elapsed:.1f} s, limit {seconds:g} s)"
            _RESULTS[number] = line
            if reporter:
                reporter.write_line(line)
            pytest.fail(line)
        line = f"criterion {number:2d}: PASS  {title} ({elapsed:.1f} s)"
        _RESULTS[number] = line
        if reporter:
            reporter.write_line(line)

    return check


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[n])
