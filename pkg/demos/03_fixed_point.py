"""
Fixed-point datapath: rounding, saturation and word growth
==========================================================

Each butterfly stage can double the signal magnitude, so an N-point
transform grows by up to N. Q1.15 inputs near full scale overflow; either
keep inputs small or give the datapath integer bits.
"""

import numpy as np

from r2mdc import Frame, NumericMode, Q15
from r2mdc.harness import run_engine

rng = np.random.default_rng(7)
x = rng.uniform(-0.5, 0.5, 8) + 1j * rng.uniform(-0.5, 0.5, 8)

for label, mode, scale in [
    ("q1.15, |x| <= 0.5 (overflows)", Q15, 1.0),
    ("q1.15, inputs / 8", Q15, 1 / 8),
    ("q4.12, |x| <= 0.5", NumericMode.fixed(4, 12), 1.0),
]:
    r = run_engine([Frame.from_complex(x * scale)], "pipeline", mode)
    verdict = "within" if r.passed else "OUTSIDE"
    print(f"{label:32s} SNR {r.snr_db:6.2f} dB, error {r.max_abs_error:.2e} "
          f"{verdict} bound {r.tolerance:.2e}")

###############################################################################
# Complex products are rounded one at a time before they are summed.

a = Q15.from_raw(1, 1)          # 2**-15 * (1 + j)
b = Q15.cplx(0.5 + 0.5j)
print("tiny * half =", a * b, "(each cross product is exactly half an LSB)")
