from __future__ import annotations

import logging
import os
from pathlib import Path

import hypothesis
import pytest

from fixgame.boards import parse_board
from fixgame.catalog import builtin_config, builtin_manifest

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CATALOG = builtin_manifest().parent


@pytest.fixture(autouse=True)
def _quiet_size_warnings():
    # exact-size universes below the degree are legitimate in sweeps
    logging.getLogger("fixgame.boards").setLevel(logging.ERROR)
    yield


@pytest.fixture(scope="session")
def catalog_dir() -> Path:
    return CATALOG


def load_board(name: str):
    c = builtin_config(name)
    return c, parse_board((CATALOG / f"{name}.board").read_text(), c.graph).board


@pytest.fixture(scope="session")
def goldberg():
    return {name: load_board(name) for name in ("goldberg_a", "goldberg_b")}


_CRITERIA = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording a PASS/FAIL/SKIP line for an acceptance criterion."""
    from contextlib import contextmanager

    store = request.config.stash.setdefault(_CRITERIA, {})

    @contextmanager
    def record(number: int, label: str):
        try:
            yield
        except pytest.skip.Exception as exc:
            store[number] = f"SKIP criterion {number:2d}: {label} ({exc.msg})"
            raise
        except BaseException:
            store[number] = f"FAIL criterion {number:2d}: {label}"
            raise
        store[number] = f"PASS criterion {number:2d}: {label}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_CRITERIA, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        terminalreporter.write_line(store[n])
