import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from twoatom.dicke import XStateParams


def random_x_state(rng, coherence_max=1.0):
    """Physical X state: Dirichlet populations, coherence inside the PSD disc."""
    gg, ee, ss = rng.dirichlet([1.0, 1.0, 1.0])
    ss = 1.0 - gg - ee
    frac = coherence_max * rng.uniform()
    phase = rng.uniform(-math.pi, math.pi)
    coh = frac * math.sqrt(ee * gg)
    return XStateParams(rho_gg=gg, rho_ee=ee, rho_ss=max(ss, 0.0), rho_eg=cmath.rect(coh, phase))


def random_unitary(rng, rotations=12):
    """Product of complex Givens rotations on random planes."""
    u = np.eye(4, dtype=complex)
    for _ in range(rotations):
        p, q = rng.choice(4, size=2, replace=False)
        theta = rng.uniform(0, 2 * math.pi)
        phi = rng.uniform(0, 2 * math.pi)
        g = np.eye(4, dtype=complex)
        g[p, p] = math.cos(theta)
        g[q, q] = math.cos(theta)
        g[p, q] = -math.sin(theta) * cmath.exp(1j * phi)
        g[q, p] = math.sin(theta) * cmath.exp(-1j * phi)
        u = g @ u
    return u


def random_hermitian(rng, scale=1.0):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return scale * (a + a.conj().T)


@st.composite
def x_states(draw):
    u = draw(st.floats(0.0, 1.0))
    v = draw(st.floats(0.0, 1.0))
    lo, hi = min(u, v), max(u, v)
    gg, ee = lo, hi - lo
    ss = 1.0 - gg - ee
    frac = draw(st.floats(0.0, 1.0))
    phase = draw(st.floats(-math.pi, math.pi))
    coh = frac * math.sqrt(ee * gg)
    return XStateParams(rho_gg=gg, rho_ee=ee, rho_ss=max(ss, 0.0), rho_eg=cmath.rect(coh, phase))


def projector_onto(vectors):
    return sum(np.outer(v, v.conj()) for v in vectors)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
