"""
Streaming frames through the R2MDC pipeline
===========================================

One sample enters per clock. After the fill latency the pipeline emits two
bins per clock for N/2 clocks, one on each data path. Frames can follow
each other with no gap.
"""

import numpy as np

from r2mdc import Frame, PipelineConfig, dft_naive, latency, new_pipeline, output_map, tick

n = 8
config = PipelineConfig(n)
print(f"n={n}: latency {latency(config)} cycles")

###############################################################################
# Clock a constant 2+2j frame through by hand and watch the output register.

state = new_pipeline(config)
for x in [2 + 2j] * n + [None] * latency(config):
    out = tick(state, x)
    if out.valid:
        print(f"cycle {out.cycle:2d} slot {out.slot}: A={complex(out.path_a)!s:>10} "
              f"B={complex(out.path_b)!s:>6}")

###############################################################################
# (path, slot) pairs map to natural bins. Read A then B per slot and the
# bins come out in bit-reversed order.

m = output_map(n)
print("bin order:", [m[(p, k)] for k in range(n // 2) for p in "AB"])

###############################################################################
# Three random frames back to back, checked against the naive DFT.

from r2mdc import run_frames

rng = np.random.default_rng(1)
frames = [Frame.from_complex(rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))
          for _ in range(3)]
for i, (f, s) in enumerate(zip(frames, run_frames(config, frames))):
    err = np.abs(s.to_numpy() - dft_naive(f).to_numpy()).max()
    print(f"frame {i}: max error {err:.1e}")
