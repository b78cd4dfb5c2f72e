import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from xcoherence.xstates import XState

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
weight = st.floats(min_value=0.0, max_value=10.0, allow_nan=False)
phase = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)


@st.composite
def xstates(draw, phases=True):
    w = [draw(weight) for _ in range(4)]
    total = sum(w)
    if total == 0.0:
        w, total = [1.0] * 4, 4.0
    d = [x / total for x in w]
    u14, u23 = draw(unit), draw(unit)
    p14 = draw(phase) if phases else 0.0
    p23 = draw(phase) if phases else 0.0
    m14 = u14 * math.sqrt(d[0] * d[3])
    m23 = u23 * math.sqrt(d[1] * d[2])
    return XState(*d, m14 * complex(math.cos(p14), math.sin(p14)),
                  m23 * complex(math.cos(p23), math.sin(p23)))


def random_states(seed, n, phases=False):
    """Independent of the library sampler: Dirichlet diagonals via numpy's
    own routine and coherence fractions skewed toward the positivity edge."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        d = rng.dirichlet(rng.choice([0.3, 1.0, 3.0], size=4))
        f = rng.random(2) ** 0.3
        ph = rng.random(2) * 2 * np.pi if phases else np.zeros(2)
        out.append(XState(*d, f[0] * np.sqrt(d[0] * d[3]) * np.exp(1j * ph[0]),
                          f[1] * np.sqrt(d[1] * d[2]) * np.exp(1j * ph[1])))
    return out


@pytest.fixture
def bell():
    return XState(0.5, 0.0, 0.0, 0.5, 0.5, 0.0)


@pytest.fixture
def mixed():
    return XState(0.25, 0.25, 0.25, 0.25)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
