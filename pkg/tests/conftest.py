from __future__ import annotations

import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gentlecat.cli import bundled  # noqa: E402

EXAMPLE_ALGEBRAS = ("a2", "n3", "a3rel", "e62", "pia2")

# acceptance criterion -> (ok, detail); filled by test_acceptance, printed at the end
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def algebra(name: str):
    return bundled(name)


@pytest.fixture(params=EXAMPLE_ALGEBRAS)
def example_alg(request):
    return algebra(request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"CRITERION {k} {'PASS' if ok else 'FAIL'} {detail}")
