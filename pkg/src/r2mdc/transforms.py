"""Software reference transforms: naive DFT, iterative radix-2 DIF FFT,
bit reversal and the inverse via conjugation.

``dft_naive`` in Float64 mode is the oracle every other path is checked
against. ``fft_dif`` walks exactly the stage/butterfly/twiddle schedule the
pipeline simulator reproduces, so the two agree bit for bit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import ConfigError, UsageError
from .numerics import (
    FLOAT64,
    Cplx,
    NumericMode,
    build_twiddle_table,
    cplx_add,
    cplx_conj,
    cplx_mul,
    cplx_scale_pow2,
    cplx_sub,
    log2_exact,
    _unit_root,
)

__all__ = [
    "Order",
    "Frame",
    "Spectrum",
    "OpCount",
    "dft_naive",
    "butterfly",
    "fft_dif",
    "bit_reverse_indices",
    "bit_reverse_permute",
    "ifft_via_conjugate",
    "theoretical_op_counts",
]


class Order(enum.Enum):
    NATURAL = "natural"
    BIT_REVERSED = "bit-reversed"

    def toggled(self) -> "Order":
        return Order.BIT_REVERSED if self is Order.NATURAL else Order.NATURAL


def _check_length(n: int) -> int:
    s = log2_exact(n)
    if s < 1:
        raise ConfigError(f"frame length must be >= 2, got {n}")
    return s


@dataclass(frozen=True)
class Frame:
    """N time-domain samples in natural order, all in one numeric mode."""

    samples: tuple

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        _check_length(len(self.samples))
        modes = {s.mode for s in self.samples}
        if len(modes) != 1:
            raise UsageError("all samples of a frame must share one numeric mode")

    @classmethod
    def from_complex(cls, values: Iterable, mode: NumericMode = FLOAT64) -> "Frame":
        return cls(tuple(mode.cplx(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.samples)

    @property
    def mode(self) -> NumericMode:
        return self.samples[0].mode

    def astype(self, mode: NumericMode) -> "Frame":
        if mode == self.mode:
            return self
        return Frame(tuple(mode.cplx(complex(s)) for s in self.samples))

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(s) for s in self.samples], dtype=np.complex128)


@dataclass(frozen=True)
class Spectrum:
    """N frequency bins with an explicit ordering tag."""

    bins: tuple
    order: Order = Order.NATURAL

    def __post_init__(self):
        object.__setattr__(self, "bins", tuple(self.bins))
        _check_length(len(self.bins))
        if not isinstance(self.order, Order):
            raise UsageError(f"order must be an Order, got {self.order!r}")

    @property
    def n(self) -> int:
        return len(self.bins)

    @property
    def mode(self) -> NumericMode:
        return self.bins[0].mode

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(b) for b in self.bins], dtype=np.complex128)


@dataclass
class OpCount:
    """Caller-owned accumulator of complex multiplies and add/subtracts."""

    complex_mults: int = 0
    complex_addsubs: int = 0


def theoretical_op_counts(n: int) -> OpCount:
    s = _check_length(n)
    return OpCount(complex_mults=(n // 2) * s, complex_addsubs=n * s)


def _resolve(frame: Frame, mode: Optional[NumericMode]) -> Frame:
    return frame if mode is None else frame.astype(mode)


def dft_naive(frame: Frame, mode: Optional[NumericMode] = None) -> Spectrum:
    """Direct O(N^2) evaluation of X(k) = sum_n x(n) W_N^{nk}.

    The exponent ``n*k`` is reduced mod N before the root is evaluated, so
    no accuracy is lost to large angles. Float64 mode runs as a dense
    matrix-vector product; fixed mode accumulates with saturating adds.
    """
    frame = _resolve(frame, mode)
    n = frame.n
    mode = frame.mode
    idx = np.arange(n)
    exps = np.outer(idx, idx) % n
    if not mode.is_fixed:
        roots = np.array([complex(*_unit_root(n, k)) for k in range(n)])
        out = roots[exps] @ frame.to_numpy()
        return Spectrum(tuple(mode.cplx(z) for z in out), Order.NATURAL)
    roots = [mode.cplx(*_unit_root(n, k)) for k in range(n)]
    bins = []
    for k in range(n):
        acc = mode.zero
        for i, x in enumerate(frame.samples):
            acc = cplx_add(acc, cplx_mul(x, roots[exps[k, i]]))
        bins.append(acc)
    return Spectrum(tuple(bins), Order.NATURAL)


def butterfly(a: Cplx, b: Cplx, w: Cplx, counter: Optional[OpCount] = None):
    """Radix-2 DIF butterfly: returns ``(a + b, (a - b) * w)``."""
    upper = cplx_add(a, b)
    lower = cplx_mul(cplx_sub(a, b), w)
    if counter is not None:
        counter.complex_addsubs += 2
        counter.complex_mults += 1
    return upper, lower


def fft_dif(
    frame: Frame,
    mode: Optional[NumericMode] = None,
    counter: Optional[OpCount] = None,
) -> Spectrum:
    """Iterative in-place radix-2 decimation-in-frequency FFT.

    Stage ``s`` pairs elements ``span = N >> (s+1)`` apart inside blocks of
    ``2*span`` and scales the difference by ``W_N^(m * 2**s)``. Multiplies
    by ``W^0`` are executed and counted. Output is in bit-reversed order.
    """
    frame = _resolve(frame, mode)
    n = frame.n
    stages = _check_length(n)
    table = build_twiddle_table(n, frame.mode)
    x = list(frame.samples)
    for s in range(stages):
        span = n >> (s + 1)
        for start in range(0, n, 2 * span):
            for m in range(span):
                i, j = start + m, start + m + span
                x[i], x[j] = butterfly(x[i], x[j], table.factor(m << s), counter)
    return Spectrum(tuple(x), Order.BIT_REVERSED)


def bit_reverse_indices(n: int) -> list:
    """``rev[i]`` is ``i`` with its log2(n) bits reversed."""
    s = log2_exact(n)
    return [int(format(i, f"0{s}b")[::-1], 2) if s else 0 for i in range(n)]


def bit_reverse_permute(spec: Spectrum) -> Spectrum:
    """Move bin ``i`` to ``rev(i)`` and toggle the order tag."""
    rev = bit_reverse_indices(spec.n)
    out = [None] * spec.n
    for i, b in enumerate(spec.bins):
        out[rev[i]] = b
    return Spectrum(tuple(out), spec.order.toggled())


def ifft_via_conjugate(spec: Spectrum, mode: Optional[NumericMode] = None) -> Frame:
    """Inverse transform as ``conj(FFT(conj(X))) / N``; input must be natural order."""
    if spec.order is not Order.NATURAL:
        raise UsageError("ifft_via_conjugate needs a natural-order spectrum")
    if mode is not None and mode != spec.mode:
        spec = Spectrum(tuple(mode.cplx(complex(b)) for b in spec.bins), spec.order)
    s = _check_length(spec.n)
    conj_frame = Frame(tuple(cplx_conj(b) for b in spec.bins))
    y = bit_reverse_permute(fft_dif(conj_frame))
    return Frame(tuple(cplx_scale_pow2(cplx_conj(b), -s) for b in y.bins))

