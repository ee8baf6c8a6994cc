from __future__ import annotations

import contextlib

import pytest

from subdivcat.relcat import RelativeCategory, RelativePoset

# Every relative category and relative poset built during the session is
# recorded so a final check can validate all of them.  Tests that build
# invalid inputs on purpose do so inside ``expect_invalid``.
CONSTRUCTED: dict[int, object] = {}
_paused = [0]
ACCEPTANCE_LINES: list[str] = []


def _record(cls):
    original = cls.__init__

    def __init__(self, *args, **kwargs):
        original(self, *args, **kwargs)
        if not _paused[0]:
            CONSTRUCTED[id(self)] = self

    __init__.__wrapped__ = original
    cls.__init__ = __init__


for _cls in (RelativeCategory, RelativePoset):
    _record(_cls)


@contextlib.contextmanager
def _pause():
    _paused[0] += 1
    try:
        yield
    finally:
        _paused[0] -= 1


@pytest.fixture
def expect_invalid():
    """Context manager under which deliberately invalid objects are not recorded."""
    return _pause


def pytest_collection_modifyitems(config, items):
    # the whole-session validation criterion must run after everything else
    last = [it for it in items if it.name == "test_criterion_10_everything_constructed_validates"]
    rest = [it for it in items if it not in last]
    items[:] = rest + last


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
