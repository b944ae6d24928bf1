"""Per-BS least-squares channel estimation from time-orthogonal pilots.

Each base station owns two pilot OFDM symbols on which the other stations are
silent, so the LS estimate is simply the received pilot cells divided by the
known pilot value and averaged over the two slots.  The channel is
quasi-static within a frame, hence no interpolation is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelRealization
from .modem import FrameConfig

# An estimate whose power is indistinguishable from its own noise floor points
# at a dead or misconfigured pilot grid.
QUALITY_FLOOR = 3.0


@dataclass
class ChannelEstimate:
    """Estimated frequency response per BS, with a pilot-based quality metric.

    `quality[i]` is the ratio of the estimate's mean power to the noise level
    inferred from the spread between the station's two pilot slots; values
    near 1 mean the "estimate" is noise only, and `degenerate[i]` flags those.
    """

    h_hat: np.ndarray
    mode: str
    quality: np.ndarray | None = None
    degenerate: np.ndarray = field(default_factory=lambda: np.zeros(3, dtype=bool))


def perfect_estimate(realization: ChannelRealization) -> ChannelEstimate:
    """Genie-aided mode: the estimate equals the true response exactly."""
    return ChannelEstimate(h_hat=realization.h_freq.copy(), mode="perfect")


def estimate_ls(received: np.ndarray, cfg: FrameConfig) -> ChannelEstimate:
    """Least-squares estimate from each station's two owned pilot symbols.

    For BS i the estimate is the average over its pilot slots of y(l)/pilot.
    With orthogonal pilots and noise variance sigma2 the per-subcarrier
    estimation error variance is sigma2/2.
    """
    received = np.asarray(received)
    if received.shape != (cfg.n_fft, cfg.n_symbols):
        raise ValueError(f"expected grid of shape ({cfg.n_fft}, {cfg.n_symbols}), got {received.shape}")

    h_hat = np.zeros((3, cfg.n_fft), dtype=np.complex128)
    quality = np.zeros(3)
    degenerate = np.zeros(3, dtype=bool)
    for i, slots in enumerate(cfg.pilot_symbol_indices_per_bs):
        obs = received[:, list(slots)] / cfg.pilot_value
        h_hat[i] = obs.mean(axis=1)
        est_power = np.mean(np.abs(h_hat[i]) ** 2)
        # E|y1 - y2|^2 = 2*sigma2, so the estimate's own noise floor is /4
        noise_floor = np.mean(np.abs(obs[:, 0] - obs[:, 1]) ** 2) / 4.0
        if noise_floor > 0:
            quality[i] = est_power / noise_floor
        else:
            quality[i] = np.inf if est_power > 0 else 0.0
        degenerate[i] = quality[i] < QUALITY_FLOOR
    return ChannelEstimate(h_hat=h_hat, mode="ls", quality=quality, degenerate=degenerate)
