"""Rayleigh channel generation and application with SIR-controlled powers.

Each frame sees one quasi-static realization per base station: either a
single flat coefficient, a 5-tap exponential-decay multipath response, or a
deterministic unit gain (for AWGN reference runs).  Because the longest tap
delay fits inside the cyclic prefix, the channel acts multiplicatively per
subcarrier and the default application path works in the frequency domain; a
time-domain convolution path is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modem import ofdm_demodulate, ofdm_modulate

DEFAULT_TAP_DELAYS = (0, 3, 6, 9, 12)


@dataclass(frozen=True)
class ChannelModel:
    """Fading model: 'flat', 'multipath' (5 taps, exponential decay) or 'awgn'."""

    kind: str = "flat"
    tap_delays: tuple[int, ...] = DEFAULT_TAP_DELAYS
    pdp_decay: float = 1.0

    def __post_init__(self):
        if self.kind not in ("flat", "multipath", "awgn"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.pdp_decay < 0:
            raise ValueError("pdp_decay must be nonnegative")

    @property
    def tap_powers(self) -> np.ndarray:
        """Normalized power delay profile, p_k proportional to exp(-decay*k)."""
        p = np.exp(-self.pdp_decay * np.arange(len(self.tap_delays)))
        return p / p.sum()


@dataclass
class ChannelRealization:
    """Per-BS frequency response (3, n_fft), taps (multipath) and mean powers."""

    h_freq: np.ndarray
    powers: np.ndarray
    taps: np.ndarray | None = None
    tap_delays: tuple[int, ...] | None = None


@dataclass(frozen=True)
class NoiseConfig:
    """Receiver noise level derived from Eb/N0 for the unit-energy constellation."""

    ebno_db: float
    sigma2: float

    @classmethod
    def from_ebno(cls, ebno_db: float, modulation_order: int = 4) -> "NoiseConfig":
        return cls(ebno_db=ebno_db, sigma2=noise_variance(ebno_db, modulation_order))


def noise_variance(ebno_db: float, modulation_order: int = 4) -> float:
    """Total complex noise variance for a given Eb/N0 in dB.

    With unit average symbol energy, sigma2 = 1 / (log2(M) * 10^(ebno/10)).
    +inf dB is accepted and maps to zero noise.
    """
    if modulation_order != 4:
        raise ValueError(f"unsupported modulation order {modulation_order} (QPSK only)")
    if np.isnan(ebno_db):
        raise ValueError("ebno_db must not be NaN")
    if np.isposinf(ebno_db):
        return 0.0
    return 1.0 / (2.0 * 10.0 ** (ebno_db / 10.0))


def sir_to_power(sir_db: float) -> float:
    """Linear interference power relative to the serving cell; +inf dB -> 0."""
    if np.isnan(sir_db):
        raise ValueError("SIR must not be NaN")
    if np.isposinf(sir_db):
        return 0.0
    return 10.0 ** (-sir_db / 10.0)


def draw_realization(
    model: ChannelModel,
    sirs_db: tuple[float, float],
    rng: np.random.Generator,
    n_fft: int = 64,
) -> ChannelRealization:
    """Draw one quasi-static realization for the three base stations.

    Average received powers are p = (1, 10^(-SIR12/10), 10^(-SIR13/10)).
    Flat: one circular complex Gaussian coefficient per BS, constant over
    frequency.  Multipath: independent Gaussian taps with the model's power
    delay profile, transformed to H_i(l) = sum_k g_ik exp(-2j*pi*l*d_k/n_fft).
    AWGN: deterministic real gain sqrt(p_i).
    """
    powers = np.array([1.0, sir_to_power(sirs_db[0]), sir_to_power(sirs_db[1])])
    l = np.arange(n_fft)

    if model.kind == "awgn":
        h = np.sqrt(powers)[:, None] * np.ones((3, n_fft))
        return ChannelRealization(h_freq=h.astype(np.complex128), powers=powers)

    if model.kind == "flat":
        coef = _cn(rng, (3,)) * np.sqrt(powers)
        h = np.repeat(coef[:, None], n_fft, axis=1)
        return ChannelRealization(h_freq=h, powers=powers)

    delays = np.asarray(model.tap_delays)
    taps = _cn(rng, (3, delays.size)) * np.sqrt(powers[:, None] * model.tap_powers[None, :])
    # H_i(l) = sum_k g_ik * exp(-2j pi l d_k / n_fft)
    phases = np.exp(-2j * np.pi * np.outer(l, delays) / n_fft)
    h = taps @ phases.T
    return ChannelRealization(h_freq=h, powers=powers, taps=taps, tap_delays=model.tap_delays)


def _cn(rng: np.random.Generator, shape) -> np.ndarray:
    """Unit-variance circular complex Gaussian samples."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def complex_awgn(rng: np.random.Generator, shape, sigma2: float) -> np.ndarray:
    """Circular complex Gaussian noise with total variance sigma2 per sample."""
    return _cn(rng, shape) * np.sqrt(sigma2)


def apply_channel(
    grids: np.ndarray,
    realization: ChannelRealization,
    path: str = "freq",
    cp_len: int = 16,
) -> np.ndarray:
    """Superpose the three transmitted grids through the channel (no noise).

    The default frequency-domain path computes
    y(l, t) = h1(l) x1(l, t) + h2(l) x2(l, t) + h3(l) x3(l, t)
    and is exact because every tap delay fits inside the cyclic prefix.  The
    'time' path modulates each OFDM symbol, convolves with the tap response
    and demodulates; it exists as an independent route for equivalence tests.
    """
    grids = np.asarray(grids)
    h = realization.h_freq
    if grids.ndim != 3 or grids.shape[0] != 3 or grids.shape[1] != h.shape[1]:
        raise ValueError(f"expected grids of shape (3, {h.shape[1]}, n_symbols), got {grids.shape}")

    if path == "freq":
        return h[0][:, None] * grids[0] + h[1][:, None] * grids[1] + h[2][:, None] * grids[2]
    if path == "time":
        return _apply_time_domain(grids, realization, cp_len)
    raise ValueError(f"unknown application path {path!r}")


def apply_and_sum(
    grids: np.ndarray,
    realization: ChannelRealization,
    noise: NoiseConfig,
    rng: np.random.Generator,
    path: str = "freq",
    cp_len: int = 16,
) -> np.ndarray:
    """Channel application plus receiver noise of variance `noise.sigma2`.

    Noise is injected in the frequency domain on both paths so that a given
    rng state yields the same noise either way.
    """
    clean = apply_channel(grids, realization, path=path, cp_len=cp_len)
    return clean + complex_awgn(rng, clean.shape, noise.sigma2)


def _apply_time_domain(grids: np.ndarray, realization: ChannelRealization, cp_len: int) -> np.ndarray:
    """Per-symbol IDFT + CP, tap convolution, CP removal + DFT."""
    n_fft, n_symbols = grids.shape[1:]
    if realization.taps is not None and max(realization.tap_delays) > cp_len:
        raise ValueError("tap delay exceeds the cyclic prefix")
    if realization.taps is None:
        # flat/awgn: single zero-delay tap per BS
        impulses = [np.array([realization.h_freq[i, 0]]) for i in range(3)]
    else:
        impulses = []
        for i in range(3):
            imp = np.zeros(max(realization.tap_delays) + 1, dtype=np.complex128)
            for g, d in zip(realization.taps[i], realization.tap_delays):
                imp[d] = g
            impulses.append(imp)

    out = np.zeros((n_fft, n_symbols), dtype=np.complex128)
    for t in range(n_symbols):
        rx = np.zeros(n_fft + cp_len, dtype=np.complex128)
        for i in range(3):
            tx = ofdm_modulate(grids[i, :, t], n_fft=n_fft, cp_len=cp_len)
            rx += np.convolve(tx, impulses[i])[: n_fft + cp_len]
        out[:, t] = ofdm_demodulate(rx, n_fft=n_fft, cp_len=cp_len)
    return out
