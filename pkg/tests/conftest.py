import cmath

import numpy as np
import pytest

from r2mdc.transforms import Frame


def random_frame(rng, n, amp=1.0, mode=None):
    values = rng.uniform(-amp, amp, n) + 1j * rng.uniform(-amp, amp, n)
    frame = Frame.from_complex(values)
    return frame if mode is None else frame.astype(mode)


def brute_dft(values):
    """Textbook double loop with cmath; shares no code with the package."""
    n = len(values)
    return np.array([
        sum(values[t] * cmath.exp(-2j * cmath.pi * t * k / n) for t in range(n))
        for k in range(n)
    ])


def max_component_error(a, b):
    d = np.asarray(a) - np.asarray(b)
    return float(max(np.abs(d.real).max(), np.abs(d.imag).max()))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
