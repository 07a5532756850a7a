import math

import numpy as np
import pytest

from hypertet.membership import DihedralAngles, is_member

HALF = math.pi / 2
QUARTER = math.pi / 4
THETA = math.acos(0.6)

# compact witness: right angles around p123, arccos(0.6) on the edges of face 4
INTERIOR = DihedralAngles(HALF, HALF, THETA, HALF, THETA, THETA)
# the explicit construction with normals (0,1,0,0), (0,0,1,0), (0,0,0,1), -(1,1,1,1)/sqrt2
QUARTER_FACE = DihedralAngles(HALF, HALF, QUARTER, HALF, QUARTER, QUARTER)
REGULAR_IDEAL = DihedralAngles(*[math.pi / 3] * 6)
ALL_RIGHT = DihedralAngles(*[HALF] * 6)


def random_members(n, seed, lo=0.5):
    """``n`` members drawn by rejection from (lo, pi/2]^6."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        for row in rng.uniform(lo, HALF, (4 * n + 64, 6)):
            a = DihedralAngles(*map(float, row))
            if is_member(a):
                out.append(a)
                if len(out) == n:
                    break
    return out


@pytest.fixture(scope="session")
def members():
    return random_members(200, seed=7)


# ---- one pass/fail line per acceptance criterion --------------------------

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit:
        _criteria.append((crit, report.outcome))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker and not any(k == "criterion" for k, _ in item.user_properties):
        number, text = marker.args
        item.user_properties.append(("criterion", f"{number:>2}. {text}"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for text, outcome in sorted(_criteria, key=lambda c: int(c[0].split(".")[0])):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {text}")
