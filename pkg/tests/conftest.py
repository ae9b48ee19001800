import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import nevkit as nk

settings.register_profile(
    "ci", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("ci")

LN = math.log

# one unit pole at 1 against a constant: value ln|5/(z-1)|
@pytest.fixture
def pole_model():
    return nk.from_rational(poles=((1.0, 1),), scale=5.0)


@pytest.fixture
def window24():
    return nk.RadialWindow(2.0, 4.0)


def random_model(seed: int, positive_only: bool = False, max_radius: float = 5.0):
    """Small random atomic model, radii kept clear of integers 1..8."""
    rng = np.random.default_rng((9000, seed))
    atoms = []
    for _ in range(int(rng.integers(1, 6))):
        rad = max_radius * math.sqrt(float(rng.uniform(0.01, 1.0)))
        for guard in range(1, 9):
            while abs(rad - guard) < 1e-3:
                rad *= 1.002
        ang = float(rng.uniform(0.0, 2.0 * math.pi))
        mass = float(rng.integers(1, 4)) * float(rng.uniform(0.2, 1.0))
        if not positive_only and rng.uniform() < 0.5:
            mass = -mass
        atoms.append(nk.RieszAtom(rad * complex(math.cos(ang), math.sin(ang)), mass))
    coeffs = (complex(float(rng.uniform(-1.0, 1.0))),)
    return nk.DeltaSubharmonicModel(atoms=tuple(atoms),
                                    harmonic=nk.HarmonicPart(coeffs))


# -- acceptance summary -------------------------------------------------------

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    def key(nodeid):
        name = nodeid.split("::")[-1]
        digits = "".join(ch for ch in name if ch.isdigit())
        return int(digits) if digits else 0
    for nodeid in sorted(_ACCEPTANCE, key=key):
        name = nodeid.split("::")[-1]
        outcome = "PASS" if _ACCEPTANCE[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {key(nodeid)}: {outcome} - {name}")
