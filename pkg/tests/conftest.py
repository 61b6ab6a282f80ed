import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from gweyl.clifford_core import Representation, build_basis

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("default")

REPS = list(Representation)

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(coord, coord, coord)
mass = st.floats(0.01, 10, allow_nan=False)


@st.composite
def nonzero_vec3(draw, min_norm=1e-2):
    v = draw(vec3)
    if np.linalg.norm(v) < min_norm:
        v = (v[0], v[1], v[2] + 1.0)
    return v


@pytest.fixture(params=REPS, ids=lambda r: r.value)
def basis(request):
    return build_basis(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
