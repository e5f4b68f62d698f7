from __future__ import annotations

import pytest

from pistar.catalog import KEYS, SUM_KEYS


@pytest.fixture(params=KEYS)
def catalog_key(request):
    return request.param


@pytest.fixture(params=KEYS + SUM_KEYS)
def any_key(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.LINES):
            terminalreporter.write_line(test_acceptance.LINES[n])
