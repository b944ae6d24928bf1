"""
QPSK alphabet and the OFDM modem
================================

Walks the lowest layer of the simulator: the Gray-mapped unit-energy QPSK
alphabet and the 64-point OFDM modulator with its 16-sample cyclic prefix.
"""

import numpy as np

from csrsim import ofdm_demodulate, ofdm_modulate, qpsk_demap, qpsk_map

################################################################################
# the four constellation points and their bit labels

print("bit pair -> symbol")
for b0 in (0, 1):
    for b1 in (0, 1):
        s = qpsk_map(np.array([b0, b1]))
        print(f"  ({b0},{b1}) -> {s:+.5f}   |s|^2 = {abs(s) ** 2:.1f}")

# slicing is a pair of sign tests; boundaries resolve to bit 0
print("\nslicer on noisy samples:")
for sample in (0.9 + 0.2j, -0.3 - 2.0j, 0j):
    bits = tuple(int(b) for b in qpsk_demap(np.array(sample)))
    print(f"  {sample:+.2f} -> bits {bits}")

################################################################################
# OFDM round trip: unitary IDFT + cyclic prefix

rng = np.random.default_rng(1)
spectrum = qpsk_map(rng.integers(0, 2, size=(64, 2)))
time_signal = ofdm_modulate(spectrum)

print(f"\n64 subcarriers -> {time_signal.size} time samples "
      f"(body 64 + prefix {time_signal.size - 64})")
print("prefix equals body tail:", np.allclose(time_signal[:16], time_signal[-16:]))

recovered = ofdm_demodulate(time_signal)
print("round-trip max error:", float(np.max(np.abs(recovered - spectrum))))

# a frequency impulse spreads to a flat time signal of amplitude 1/8
impulse = np.zeros(64, dtype=complex)
impulse[0] = 1.0
body = ofdm_modulate(impulse)[16:]
print("impulse at subcarrier 0 -> constant body sample:", body[0])
