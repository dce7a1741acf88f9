import cmath
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from braidjones import kernels
from braidjones.braid import BraidWord

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ROOTS = [(2, 5), (2, 7), (2, 8), (3, 7), (4, 9)]


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.use_backend(request.param):
        yield request.param


@st.composite
def braids(draw, min_strands=2, max_strands=5, max_len=10):
    n = draw(st.integers(min_strands, max_strands))
    m = draw(st.integers(0, max_len))
    letters = draw(st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from([1, -1])), min_size=m, max_size=m))
    return BraidWord(n, tuple(letters))


def random_braid(rng, n, m):
    return BraidWord(n, tuple((int(rng.integers(1, n)), int(rng.choice([-1, 1]))) for _ in range(m)))


def power_sum_qint(k, l):
    """[k] as q^{-(k-1)/2} + q^{-(k-3)/2} + ... + q^{(k-1)/2} with q = exp(2 pi i / l)."""
    return sum(cmath.exp(2j * math.pi * (-(k - 1) / 2 + j) / l) for j in range(k))


def jones_poly_abs(coeffs, l):
    """|sum c t^e| at t = exp(2 pi i / l) for a Laurent polynomial in t^(1/2) given as {e: c}."""
    t = cmath.exp(2j * math.pi / l)
    return abs(sum(c * t ** e for e, c in coeffs.items()))


# Published Jones polynomials used as independent oracles.
TREFOIL = {1: 1, 3: 1, 4: -1}
HOPF = {0.5: -1, 2.5: -1}
UNKNOT_HOPF = {1: 1, 0: 1, 2: 1, 3: 1}  # (-t^1/2 - t^-1/2)(-t^1/2 - t^5/2)
