"""QPSK mapping, OFDM (de)modulation with cyclic prefix, and frame construction.

Frames are built on a 64-subcarrier x 57-symbol grid per base station.  The
two cooperating base stations repeat each data symbol pair on swapped
subcarriers; the third cell carries independent traffic.  Pilot OFDM symbols
are time-orthogonal across the three cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Gray-mapped unit-energy QPSK alphabet, indexed by (b0 << 1) | b1.
# (b0, b1) -> ((1 - 2*b0) + 1j*(1 - 2*b1)) / sqrt(2)
QPSK_BITS = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=np.int64)
QPSK_SYMBOLS = ((1 - 2 * QPSK_BITS[:, 0]) + 1j * (1 - 2 * QPSK_BITS[:, 1])) / np.sqrt(2.0)
QPSK_ORDER = 4
BITS_PER_SYMBOL = 2


def qpsk_map(bits: np.ndarray) -> np.ndarray:
    """Map bit pairs to unit-energy Gray-coded QPSK symbols.

    Parameters
    ----------
    bits : array of 0/1 with shape (..., 2)

    Returns
    -------
    complex array of shape (...,)
    """
    bits = np.asarray(bits)
    if bits.shape[-1] != 2:
        raise ValueError(f"expected trailing axis of length 2, got shape {bits.shape}")
    if not np.isin(bits, (0, 1)).all():
        raise ValueError("bits must be 0 or 1")
    return QPSK_SYMBOLS[(bits[..., 0] << 1) | bits[..., 1]]


def qpsk_demap(x: np.ndarray) -> np.ndarray:
    """Hard-slice complex samples to the nearest QPSK point's bits.

    Equivalent to sign tests on the real and imaginary parts.  Samples exactly
    on a decision boundary (re or im equal to 0) resolve to bit value 0.
    """
    x = np.asarray(x)
    if not np.isfinite(x).all():
        raise ValueError("samples must be finite")
    b0 = (x.real < 0).astype(np.int64)
    b1 = (x.imag < 0).astype(np.int64)
    return np.stack([b0, b1], axis=-1)


def ofdm_modulate(freq: np.ndarray, n_fft: int = 64, cp_len: int = 16) -> np.ndarray:
    """Unitary inverse DFT plus cyclic prefix (last `cp_len` body samples)."""
    freq = np.asarray(freq, dtype=np.complex128)
    if freq.shape != (n_fft,):
        raise ValueError(f"expected {n_fft} frequency samples, got shape {freq.shape}")
    body = np.fft.ifft(freq, norm="ortho")
    return np.concatenate([body[-cp_len:], body])


def ofdm_demodulate(time: np.ndarray, n_fft: int = 64, cp_len: int = 16) -> np.ndarray:
    """Drop the cyclic prefix and apply the unitary DFT."""
    time = np.asarray(time, dtype=np.complex128)
    if time.shape != (n_fft + cp_len,):
        raise ValueError(f"expected {n_fft + cp_len} time samples, got shape {time.shape}")
    return np.fft.fft(time[cp_len:], norm="ortho")


def _default_pairing() -> tuple[tuple[int, int], ...]:
    # Pair l with l+32: maximal subcarrier separation for frequency diversity.
    return tuple((l, l + 32) for l in range(32))


@dataclass(frozen=True)
class FrameConfig:
    """Frame geometry: FFT size, cyclic prefix, pilot layout, subcarrier pairing.

    Pilot OFDM symbols are time-orthogonal: each base station owns two symbol
    indices on which the other two stations transmit nothing.
    """

    n_fft: int = 64
    cp_len: int = 16
    n_symbols: int = 57
    pilot_symbol_indices_per_bs: tuple[tuple[int, int], ...] = ((0, 19), (1, 20), (38, 39))
    pairing: tuple[tuple[int, int], ...] = field(default_factory=_default_pairing)
    pilot_value: complex = 1.0 + 0.0j

    def __post_init__(self):
        if not 0 < self.cp_len < self.n_fft:
            raise ValueError("cyclic prefix must be shorter than the FFT size")
        flat_pilots = [t for pair in self.pilot_symbol_indices_per_bs for t in pair]
        if len(set(flat_pilots)) != len(flat_pilots):
            raise ValueError("pilot symbol indices must be disjoint across base stations")
        if any(t < 0 or t >= self.n_symbols for t in flat_pilots):
            raise ValueError("pilot symbol index out of range")
        touched = sorted(i for pair in self.pairing for i in pair)
        if touched != list(range(self.n_fft)):
            raise ValueError("pairing must be a perfect matching of all subcarriers")

    @property
    def n_pilot_symbols(self) -> int:
        return sum(len(p) for p in self.pilot_symbol_indices_per_bs)

    @property
    def data_symbol_indices(self) -> np.ndarray:
        pilots = {t for pair in self.pilot_symbol_indices_per_bs for t in pair}
        return np.array([t for t in range(self.n_symbols) if t not in pilots])

    @property
    def n_data_symbols(self) -> int:
        return self.n_symbols - self.n_pilot_symbols

    @property
    def n_pairs(self) -> int:
        return len(self.pairing)

    def csr_bits_per_frame(self) -> int:
        # two symbols (s_p, s_q) of two bits each, per pair and data symbol
        return self.n_pairs * self.n_data_symbols * 2 * BITS_PER_SYMBOL

    def single_bs_bits_per_frame(self) -> int:
        return self.n_fft * self.n_data_symbols * BITS_PER_SYMBOL


@dataclass
class CsrFrame:
    """Three transmit grids plus the ground truth needed for error counting.

    `grids[i]` has shape (n_fft, n_symbols); `bits_p[k, t]` / `bits_q[k, t]`
    are the bit pairs carried by pair k at data symbol slot t.
    """

    grids: np.ndarray
    bits_p: np.ndarray
    bits_q: np.ndarray
    sym_p: np.ndarray
    sym_q: np.ndarray


def _pilot_grid(cfg: FrameConfig, bs: int) -> np.ndarray:
    """Empty grid with this station's pilots inserted (zeros elsewhere)."""
    grid = np.zeros((cfg.n_fft, cfg.n_symbols), dtype=np.complex128)
    for t in cfg.pilot_symbol_indices_per_bs[bs]:
        grid[:, t] = cfg.pilot_value
    return grid


def build_interference_grid(cfg: FrameConfig, rng: np.random.Generator, bs: int = 2) -> np.ndarray:
    """Grid of independent uniform QPSK traffic for a non-cooperating cell."""
    grid = _pilot_grid(cfg, bs)
    data_t = cfg.data_symbol_indices
    idx = rng.integers(0, QPSK_ORDER, size=(cfg.n_fft, data_t.size))
    grid[:, data_t] = QPSK_SYMBOLS[idx]
    return grid


def build_frames(data_bits: np.ndarray, cfg: FrameConfig, rng: np.random.Generator) -> CsrFrame:
    """Build the three per-BS frequency grids for one coordinated frame.

    BS1 and BS2 repeat each (s_p, s_q) pair on swapped subcarriers: BS1 sends
    s_p on f_a and s_q on f_b while BS2 sends s_q on f_a and s_p on f_b.  BS3
    carries independent traffic drawn from `rng`.

    `data_bits` is consumed in layout (pair, data symbol, member, bit) where
    member 0 is s_p and member 1 is s_q.
    """
    data_bits = np.asarray(data_bits)
    need = cfg.csr_bits_per_frame()
    if data_bits.size < need:
        raise ValueError(f"need {need} data bits per frame, got {data_bits.size}")

    n_data = cfg.n_data_symbols
    bits = data_bits[:need].reshape(cfg.n_pairs, n_data, 2, BITS_PER_SYMBOL)
    bits_p = bits[:, :, 0, :]
    bits_q = bits[:, :, 1, :]
    sym_p = qpsk_map(bits_p)
    sym_q = qpsk_map(bits_q)

    grids = np.stack([_pilot_grid(cfg, 0), _pilot_grid(cfg, 1),
                      build_interference_grid(cfg, rng, bs=2)])
    data_t = cfg.data_symbol_indices
    f_a = np.array([p[0] for p in cfg.pairing])
    f_b = np.array([p[1] for p in cfg.pairing])
    grids[0][np.ix_(f_a, data_t)] = sym_p
    grids[0][np.ix_(f_b, data_t)] = sym_q
    grids[1][np.ix_(f_a, data_t)] = sym_q
    grids[1][np.ix_(f_b, data_t)] = sym_p

    return CsrFrame(grids=grids, bits_p=bits_p, bits_q=bits_q, sym_p=sym_p, sym_q=sym_q)


def build_single_bs_grid(data_bits: np.ndarray, cfg: FrameConfig, bs: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Uncoordinated frame: one station fills every subcarrier with its own data.

    Returns the grid and the transmitted bits with shape
    (n_fft, n_data_symbols, 2).
    """
    data_bits = np.asarray(data_bits)
    need = cfg.single_bs_bits_per_frame()
    if data_bits.size < need:
        raise ValueError(f"need {need} data bits per frame, got {data_bits.size}")
    bits = data_bits[:need].reshape(cfg.n_fft, cfg.n_data_symbols, BITS_PER_SYMBOL)
    grid = _pilot_grid(cfg, bs)
    grid[:, cfg.data_symbol_indices] = qpsk_map(bits)
    return grid, bits
