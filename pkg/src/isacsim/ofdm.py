"""OFDM frontend: symbol generation, channel + AWGN, single-tap equalization.

Transmit symbols are known at the receiver (colocated TX/RX), so
equalization is exact division.  With constant-modulus symbols it is an
isometry on the noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OfdmConfig:
    """OFDM numerology plus per-subcarrier transmit symbol power."""

    n_sub: int
    n_ant: int
    bandwidth_hz: float
    symbol_power_w: float = 1.0

    def __post_init__(self):
        if self.n_sub < 1 or self.n_ant < 1:
            raise ValueError("need at least one subcarrier and one antenna")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth must be positive")

    @property
    def delta_f(self) -> float:
        return self.bandwidth_hz / self.n_sub


@dataclass(frozen=True)
class NoiseSpec:
    """Receiver noise over the whole band; per-sample variance is P_N/N_sub."""

    total_power_w: float
    n_sub: int

    @property
    def sigma2(self) -> float:
        return self.total_power_w / self.n_sub

    @classmethod
    def from_dbm(cls, power_dbm: float, n_sub: int) -> "NoiseSpec":
        return cls(10 ** ((power_dbm - 30) / 10), n_sub)


_QPSK = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / np.sqrt(2)


def generate_symbols(n_sub: int, rng, symbol_power_w: float = 1.0) -> np.ndarray:
    """Uniform QPSK symbols scaled to the configured per-subcarrier power."""
    if n_sub < 1:
        raise ValueError("n_sub must be >= 1")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    return _QPSK[rng.integers(0, 4, size=n_sub)] * np.sqrt(symbol_power_w)


def apply_channel_and_noise(H: np.ndarray, x: np.ndarray, noise: NoiseSpec, rng):
    """Received symbols: y_{n,k} = x_n h_{n,k} + z_{n,k}, z ~ CN(0, sigma^2)."""
    if H.shape[0] != x.shape[0]:
        raise ValueError("symbol vector and CTF subcarrier count differ")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    y = x[:, None] * H
    if noise.sigma2 > 0:
        z = rng.standard_normal(H.shape) + 1j * rng.standard_normal(H.shape)
        y = y + z * np.sqrt(noise.sigma2 / 2)
    return y


def equalize(Y: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Single-tap equalization: hhat_{n,k} = y_{n,k} / x_n."""
    if np.any(x == 0):
        raise ValueError("cannot equalize with a zero transmit symbol")
    return Y / x[:, None]


def snr_report(H: np.ndarray, noise: NoiseSpec, symbol_power_w: float = 1.0):
    """(gamma_com, gamma_imag): symbol-wise SNR and post-DFT sensing SNR.

    gamma_com relates mean received symbol power over the band to the
    total noise power; the periodogram DFTs add a processing gain of
    N_sub * K.
    """
    n_sub, n_ant = H.shape
    p_signal = symbol_power_w * float(np.mean(np.abs(H) ** 2)) * n_sub
    gamma_com = p_signal / noise.total_power_w
    return gamma_com, gamma_com * n_sub * n_ant
