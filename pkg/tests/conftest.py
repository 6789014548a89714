"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

import random
from collections import defaultdict

import pytest

_CRITERIA: dict = defaultdict(list)

TITLES = {
    1: "gauge round trip",
    2: "zero-curvature identity",
    3: "Birkhoff round trip",
    4: "Toeplitz inverse",
    5: "Painleve I recovery",
    6: "reduction consistency",
    7: "H <-> I two-route agreement",
    8: "isospectral coordinates",
    9: "chart equivalences",
    10: "mutation sensitivity",
}


@pytest.fixture
def rng(request) -> random.Random:
    return random.Random(request.node.nodeid)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key in report.keywords:
        if key.startswith("criterion_"):
            _CRITERIA[int(key.split("_")[1])].append(report.passed)


def pytest_collection_modifyitems(items):
    for item in items:
        for mark in item.iter_markers("criterion"):
            item.keywords[f"criterion_{mark.args[0]}"] = True


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok = all(_CRITERIA[n])
        runs = len(_CRITERIA[n])
        terminalreporter.write_line(f"criterion {n:2d} ({TITLES.get(n, '')}): {'PASS' if ok else 'FAIL'} [{runs} checks]")
