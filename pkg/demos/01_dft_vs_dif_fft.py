"""
Naive DFT versus the radix-2 DIF FFT
====================================

The direct DFT costs N^2 complex multiply-adds. The decimation-in-frequency
FFT splits the output into even and odd bins at every stage, so log2(N)
stages of N/2 butterflies do the same job. Its output lands in bit-reversed
order.
"""

import numpy as np

from r2mdc import Frame, OpCount, bit_reverse_permute, dft_naive, fft_dif, theoretical_op_counts

rng = np.random.default_rng(0)
x = rng.uniform(-1, 1, 8) + 1j * rng.uniform(-1, 1, 8)
frame = Frame.from_complex(x)

###############################################################################
# The FFT result is tagged bit-reversed; reorder it before comparing.

counter = OpCount()
scrambled = fft_dif(frame, counter=counter)
print("output order:", scrambled.order.value)
natural = bit_reverse_permute(scrambled)
err = np.abs(natural.to_numpy() - dft_naive(frame).to_numpy()).max()
print(f"max |FFT - DFT| = {err:.2e}")

###############################################################################
# Every butterfly does one complex multiply (W^0 included) and two add/subs.

print("counted:     ", counter)
print("(N/2)log2N, Nlog2N:", theoretical_op_counts(8))

for n in (64, 1024):
    t = theoretical_op_counts(n)
    print(f"N={n:5d}: FFT {t.complex_mults:6d} mults vs DFT {n * n:8d}")
