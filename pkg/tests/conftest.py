"""Shared fixtures and desk-scale helpers for the test suite."""

import numpy as np
import pytest

from isacsim import kernels
from isacsim.periodogram import WindowSpec, compute_periodogram

# small but representative processing scale: fast enough for unit tests,
# large enough that window/FFT effects behave like the full system
DESK_N_SUB = 256
DESK_N_ANT = 8
DESK_BW = 800e6
DESK_FC = 26e9
DESK_C0 = 299792458.0
DESK_LAMBDA = DESK_C0 / DESK_FC
DESK_D = DESK_LAMBDA / 2
DESK_DELTA_F = DESK_BW / DESK_N_SUB


def impulse_ctf(roundtrip_m, sin_theta, amp=1.0 + 0j,
                n_sub=DESK_N_SUB, n_ant=DESK_N_ANT):
    """CTF of a single impulsive path."""
    return kernels.synthesize_ctf(
        np.array([amp], dtype=complex),
        np.array([float(roundtrip_m)]),
        np.array([float(sin_theta)]),
        n_sub, n_ant, DESK_DELTA_F, DESK_D, DESK_FC,
    )


def desk_periodogram(h, window=None, pad_factor=4):
    return compute_periodogram(
        h, window or WindowSpec("chebyshev", 30.0),
        DESK_DELTA_F, DESK_D, DESK_FC, pad_factor=pad_factor,
    )


@pytest.fixture(scope="session")
def rng_factory():
    def make(*entropy):
        return np.random.default_rng(list(entropy))
    return make
