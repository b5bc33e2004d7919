import functools

from toric_split import fixtures
from toric_split.resolve import betti_multigraded
from toric_split.toricgen import toric_ideal_of_graph


@functools.lru_cache(maxsize=None)
def fixture_ideal(name):
    return toric_ideal_of_graph(fixtures.get(name))


@functools.lru_cache(maxsize=None)
def fixture_multigraded(name, backend="divisor-complex"):
    """Multigraded table of a named fixture, computed once per session."""
    return betti_multigraded(fixture_ideal(name), backend=backend)


# acceptance criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})")
