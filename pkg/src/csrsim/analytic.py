"""Closed-form BER of the uncoordinated QAM link under co-channel interference.

Implements the Gaussian-approximation bit error probability for a Rayleigh
faded square-QAM link with K co-channel interferers,

    P_e = (1/log2(sqrt(M))) (1 - 1/sqrt(M))
          [1 - 1/sqrt((M-1)/3 (sum_j 1/SIR_j + 2/(log2(M) gamma_b)) + 1)]

with SIRs and the per-bit SNR gamma_b in linear units.  dB-to-linear
conversion happens at this boundary; everything downstream is linear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class AnalyticParams:
    """Formula inputs: modulation order, interferer SIRs (dB) and Eb/N0 (dB)."""

    m: int = 4
    sir_db: tuple[float, ...] = field(default_factory=tuple)
    ebno_db: float = 18.0

    @property
    def k(self) -> int:
        return len(self.sir_db)

    def __post_init__(self):
        root = math.isqrt(self.m)
        if self.m < 4 or root * root != self.m:
            raise ValueError(f"modulation order must be a perfect square >= 4, got {self.m}")
        if math.isnan(self.ebno_db):
            raise ValueError("ebno_db must not be NaN")


def ber_closed_form(params: AnalyticParams) -> float:
    """Evaluate the closed-form error probability for the given parameters.

    Accepts ebno_db = +inf (noiseless limit).  An interferer at -inf dB SIR
    (zero linear SIR) has no finite error probability and raises ValueError.
    """
    m = params.m
    log2_sqrt_m = math.log2(math.sqrt(m))
    interference = 0.0
    for s_db in params.sir_db:
        if math.isnan(s_db):
            raise ValueError("SIR must not be NaN")
        sir_lin = 10.0 ** (s_db / 10.0)
        if sir_lin == 0.0:
            raise ValueError("interferer SIR of 0 (linear) is outside the formula's domain")
        interference += 1.0 / sir_lin

    if math.isinf(params.ebno_db) and params.ebno_db > 0:
        noise = 0.0
    else:
        gamma_b = 10.0 ** (params.ebno_db / 10.0)
        noise = 2.0 / (math.log2(m) * gamma_b)

    inner = (m - 1) / 3.0 * (interference + noise) + 1.0
    return (1.0 / log2_sqrt_m) * (1.0 - 1.0 / math.sqrt(m)) * (1.0 - 1.0 / math.sqrt(inner))


def qpsk_rayleigh_ber(ebno_db: float) -> float:
    """Classical flat-Rayleigh QPSK bit error rate, 0.5*(1 - sqrt(g/(1+g)))."""
    if math.isinf(ebno_db) and ebno_db > 0:
        return 0.0
    g = 10.0 ** (ebno_db / 10.0)
    return 0.5 * (1.0 - math.sqrt(g / (1.0 + g)))


def qpsk_awgn_ber(ebno_db: float) -> float:
    """QPSK over AWGN with a unit channel: Q(sqrt(2 gamma_b)) per bit."""
    g = 10.0 ** (ebno_db / 10.0)
    return 0.5 * math.erfc(math.sqrt(g))
