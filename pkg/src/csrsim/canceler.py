"""Soft-decision maximum-likelihood CCI canceler with modified MRC combining.

Per subcarrier, the detector enumerates every combination of the three
stations' QPSK symbols (4^3 = 64 replicas), reconstructs the received sample
through the estimated channels and keeps the combination with the smallest
squared Euclidean distance.  The interferer's symbol estimate is discarded.
The two hard decisions available for each transmitted symbol (one per paired
subcarrier) are then blended with channel-magnitude weights and sliced.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modem import FrameConfig, QPSK_ORDER, QPSK_SYMBOLS, qpsk_demap

N_BS = 3
N_REPLICAS = QPSK_ORDER ** N_BS  # 64

# Replica index m enumerates (a1, a2, a3) lexicographically over the
# constellation indices: m = 16*i1 + 4*i2 + i3.  Ties in the distance metric
# resolve to the lowest m, which makes detection deterministic.
_IDX = np.arange(N_REPLICAS)
REPLICA_TRIPLES = np.stack(
    [QPSK_SYMBOLS[(_IDX // 16) % 4], QPSK_SYMBOLS[(_IDX // 4) % 4], QPSK_SYMBOLS[_IDX % 4]],
    axis=1,
)


class DegenerateChannelError(ValueError):
    """All combining weights vanished (every channel magnitude is zero)."""


def replica_metrics(y: complex, h_hat: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance |y - sum_i h_i a_i|^2 for all 64 replicas."""
    h_hat = np.asarray(h_hat)
    if h_hat.shape != (N_BS,):
        raise ValueError(f"expected {N_BS} channel estimates, got shape {h_hat.shape}")
    x = (h_hat[0] * REPLICA_TRIPLES[:, 0]
         + h_hat[1] * REPLICA_TRIPLES[:, 1]
         + h_hat[2] * REPLICA_TRIPLES[:, 2])
    return np.abs(y - x) ** 2


def mle_hard_decision(y: complex, h_hat: np.ndarray) -> tuple[complex, complex]:
    """Jointly detect the two cooperating stations' symbols at one subcarrier.

    Returns (a1, a2) of the minimum-distance replica; the interferer estimate
    a3 is computed as part of the search but not returned.
    """
    m = int(np.argmin(replica_metrics(y, h_hat)))
    return complex(REPLICA_TRIPLES[m, 0]), complex(REPLICA_TRIPLES[m, 1])


@dataclass
class SoftDecision:
    """M-MRC output for one (s_p, s_q) pair: soft symbols, inputs and weights."""

    s_p: complex
    s_q: complex
    hard_p_a: complex
    hard_p_b: complex
    hard_q_a: complex
    hard_q_b: complex
    w_p_a: float
    w_p_b: float
    w_q_a: float
    w_q_b: float


def mmrc_combine(
    hard_p_a: complex,
    hard_p_b: complex,
    hard_q_a: complex,
    hard_q_b: complex,
    h1_a: complex,
    h2_a: complex,
    h1_b: complex,
    h2_b: complex,
) -> SoftDecision:
    """Channel-magnitude-weighted combination of the per-subcarrier decisions.

    s_p blends its copy received through h1 on subcarrier a with the copy
    received through h2 on subcarrier b (and mirrored for s_q):

        s_p = |h1(a)|/(2(|h1(a)|+|h2(a)|)) * p_a + |h2(b)|/(2(|h1(b)|+|h2(b)|)) * p_b
        s_q = |h2(a)|/(2(|h1(a)|+|h2(a)|)) * q_a + |h1(b)|/(2(|h1(b)|+|h2(b)|)) * q_b

    The weights intentionally do not sum to one; QPSK slicing is invariant to
    a common positive scale.  A subcarrier whose two magnitudes both vanish
    contributes weight zero; if that happens on both subcarriers there is
    nothing to combine and DegenerateChannelError is raised.
    """
    m1a, m2a, m1b, m2b = abs(h1_a), abs(h2_a), abs(h1_b), abs(h2_b)
    den_a = 2.0 * (m1a + m2a)
    den_b = 2.0 * (m1b + m2b)
    if den_a == 0.0 and den_b == 0.0:
        raise DegenerateChannelError("all four channel magnitudes are zero")
    w_p_a = m1a / den_a if den_a > 0 else 0.0
    w_q_a = m2a / den_a if den_a > 0 else 0.0
    w_p_b = m2b / den_b if den_b > 0 else 0.0
    w_q_b = m1b / den_b if den_b > 0 else 0.0
    return SoftDecision(
        s_p=w_p_a * hard_p_a + w_p_b * hard_p_b,
        s_q=w_q_a * hard_q_a + w_q_b * hard_q_b,
        hard_p_a=hard_p_a,
        hard_p_b=hard_p_b,
        hard_q_a=hard_q_a,
        hard_q_b=hard_q_b,
        w_p_a=w_p_a,
        w_p_b=w_p_b,
        w_q_a=w_q_a,
        w_q_b=w_q_b,
    )


def detect_pair(
    y_a: complex,
    y_b: complex,
    h_hat_a: np.ndarray,
    h_hat_b: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Detect the bit pairs of (s_p, s_q) from one swapped-subcarrier pair.

    Subcarrier a carries s_p from BS1 and s_q from BS2; subcarrier b carries
    them swapped, so the joint decisions map to (p_a, q_a) = (a1, a2) at a and
    (q_b, p_b) = (a1, a2) at b.
    """
    a1_a, a2_a = mle_hard_decision(y_a, h_hat_a)
    a1_b, a2_b = mle_hard_decision(y_b, h_hat_b)
    hard_p_a, hard_q_a = a1_a, a2_a
    hard_q_b, hard_p_b = a1_b, a2_b
    try:
        soft = mmrc_combine(
            hard_p_a, hard_p_b, hard_q_a, hard_q_b,
            h_hat_a[0], h_hat_a[1], h_hat_b[0], h_hat_b[1],
        )
        s_p, s_q = soft.s_p, soft.s_q
    except DegenerateChannelError:
        # No usable magnitudes anywhere: keep the branch with the larger
        # magnitude sum (a wins ties) as a plain hard decision.
        if abs(h_hat_a[0]) + abs(h_hat_a[1]) >= abs(h_hat_b[0]) + abs(h_hat_b[1]):
            s_p, s_q = hard_p_a, hard_q_a
        else:
            s_p, s_q = hard_p_b, hard_q_b
    return qpsk_demap(s_p), qpsk_demap(s_q)


def detect_csr_frame(
    received: np.ndarray,
    h_hat: np.ndarray,
    cfg: FrameConfig,
) -> tuple[np.ndarray, np.ndarray]:
    """Run the canceler over a whole frame at once.

    Vectorized equivalent of calling detect_pair for every pair and data
    symbol; returns (bits_p, bits_q) with shape (n_pairs, n_data_symbols, 2).
    """
    received = np.asarray(received)
    h_hat = np.asarray(h_hat)
    data_t = cfg.data_symbol_indices

    # distances (replica, subcarrier): same elementwise evaluation order as
    # replica_metrics so both routes agree bit for bit
    x = (h_hat[0][None, :] * REPLICA_TRIPLES[:, 0][:, None]
         + h_hat[1][None, :] * REPLICA_TRIPLES[:, 1][:, None]
         + h_hat[2][None, :] * REPLICA_TRIPLES[:, 2][:, None])
    y = received[:, data_t]
    dist = np.abs(y[None, :, :] - x[:, :, None]) ** 2
    m_hat = np.argmin(dist, axis=0)
    a1 = REPLICA_TRIPLES[m_hat, 0]
    a2 = REPLICA_TRIPLES[m_hat, 1]

    f_a = np.array([p[0] for p in cfg.pairing])
    f_b = np.array([p[1] for p in cfg.pairing])
    hard_p_a, hard_q_a = a1[f_a], a2[f_a]
    hard_q_b, hard_p_b = a1[f_b], a2[f_b]

    m1a = np.abs(h_hat[0, f_a])[:, None]
    m2a = np.abs(h_hat[1, f_a])[:, None]
    m1b = np.abs(h_hat[0, f_b])[:, None]
    m2b = np.abs(h_hat[1, f_b])[:, None]
    den_a = 2.0 * (m1a + m2a)
    den_b = 2.0 * (m1b + m2b)
    with np.errstate(divide="ignore", invalid="ignore"):
        w_p_a = np.where(den_a > 0, m1a / den_a, 0.0)
        w_q_a = np.where(den_a > 0, m2a / den_a, 0.0)
        w_p_b = np.where(den_b > 0, m2b / den_b, 0.0)
        w_q_b = np.where(den_b > 0, m1b / den_b, 0.0)

    s_p = w_p_a * hard_p_a + w_p_b * hard_p_b
    s_q = w_q_a * hard_q_a + w_q_b * hard_q_b

    # fully degenerate pairs: fall back to the stronger branch's hard decision
    dead = (den_a == 0) & (den_b == 0)
    if dead.any():
        use_a = (m1a + m2a >= m1b + m2b) & dead
        s_p = np.where(dead, np.where(use_a, hard_p_a, hard_p_b), s_p)
        s_q = np.where(dead, np.where(use_a, hard_q_a, hard_q_b), s_q)

    return qpsk_demap(s_p), qpsk_demap(s_q)
