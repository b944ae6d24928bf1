"""Link-level simulator for coordinated symbol repetition and ML interference
cancellation in a three-cell OFDM downlink."""

from .analytic import AnalyticParams, ber_closed_form, qpsk_awgn_ber, qpsk_rayleigh_ber
from .canceler import (
    DegenerateChannelError,
    N_REPLICAS,
    REPLICA_TRIPLES,
    SoftDecision,
    detect_csr_frame,
    detect_pair,
    mle_hard_decision,
    mmrc_combine,
    replica_metrics,
)
from .channel import (
    ChannelModel,
    ChannelRealization,
    NoiseConfig,
    apply_and_sum,
    apply_channel,
    complex_awgn,
    draw_realization,
    noise_variance,
    sir_to_power,
)
from .estimator import ChannelEstimate, estimate_ls, perfect_estimate
from .harness import (
    BerRecord,
    SimConfig,
    crossing_db,
    derive_frame_seed,
    measure_gain_db,
    run_frame,
    sweep,
)
from .modem import (
    CsrFrame,
    FrameConfig,
    QPSK_SYMBOLS,
    build_frames,
    build_interference_grid,
    build_single_bs_grid,
    ofdm_demodulate,
    ofdm_modulate,
    qpsk_demap,
    qpsk_map,
)

__version__ = "0.1.0"
