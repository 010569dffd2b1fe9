"""Complex arithmetic in double precision or parameterized fixed point.

A :class:`Cplx` carries its :class:`NumericMode`. In ``Float64`` mode the
components are Python floats; in fixed mode they are stored as scaled
integers (``value * 2**frac_bits``) so that every operation is bit-exact
for any word length up to 64 bits.

Fixed-point rounding is round-half-to-even and overflow saturates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError, DomainError, ModeMismatchError, UsageError

__all__ = [
    "FixedFormat",
    "NumericMode",
    "FLOAT64",
    "Q15",
    "Cplx",
    "TwiddleTable",
    "quantize",
    "cplx_add",
    "cplx_sub",
    "cplx_mul",
    "cplx_neg",
    "cplx_conj",
    "cplx_scale_pow2",
    "twiddle",
    "build_twiddle_table",
    "is_power_of_two",
    "log2_exact",
]


def is_power_of_two(n) -> bool:
    return isinstance(n, int) and not isinstance(n, bool) and n >= 1 and n & (n - 1) == 0


def log2_exact(n: int) -> int:
    if not is_power_of_two(n):
        raise ConfigError(f"transform length must be a power of two, got {n!r}")
    return n.bit_length() - 1


def _round_shift(value: int, shift: int) -> int:
    """Divide an integer by 2**shift, rounding half to even."""
    if shift <= 0:
        return value << -shift
    q, r = divmod(value, 1 << shift)
    half = 1 << (shift - 1)
    if r > half or (r == half and q & 1):
        q += 1
    return q


@dataclass(frozen=True)
class FixedFormat:
    """Signed two's-complement format, ``total_bits`` wide per real component."""

    total_bits: int = 16
    frac_bits: int = 15
    rounding: str = "round-half-to-even"
    overflow: str = "saturate"

    def __post_init__(self):
        if not 2 <= self.total_bits <= 64:
            raise ConfigError(f"total_bits must be in [2, 64], got {self.total_bits}")
        if not 0 <= self.frac_bits <= self.total_bits - 1:
            raise ConfigError(
                f"frac_bits must be in [0, {self.total_bits - 1}], got {self.frac_bits}"
            )
        if self.rounding != "round-half-to-even":
            raise ConfigError(f"unsupported rounding {self.rounding!r}")
        if self.overflow != "saturate":
            raise ConfigError(f"unsupported overflow {self.overflow!r}")

    @property
    def int_bits(self) -> int:
        """Integer bits including the sign bit (the ``m`` of ``Qm.f``)."""
        return self.total_bits - self.frac_bits

    @property
    def scale(self) -> int:
        return 1 << self.frac_bits

    @property
    def lsb(self) -> float:
        return 2.0 ** -self.frac_bits

    @property
    def min_raw(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def max_raw(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    @property
    def min_value(self) -> float:
        return self.min_raw / self.scale

    @property
    def max_value(self) -> float:
        return self.max_raw / self.scale

    def saturate(self, raw: int) -> int:
        if raw > self.max_raw:
            return self.max_raw
        if raw < self.min_raw:
            return self.min_raw
        return raw

    def to_raw(self, v: float) -> int:
        """Nearest representable scaled integer for ``v``."""
        if not math.isfinite(v):
            raise DomainError(f"cannot quantize non-finite value {v!r}")
        # scaling by a power of two is exact; round() on a float is half-even
        return self.saturate(round(math.ldexp(float(v), self.frac_bits)))

    def from_raw(self, raw: int) -> float:
        return math.ldexp(raw, -self.frac_bits)

    def contains(self, v: float) -> bool:
        """True if ``v`` lies inside the representable range (before rounding)."""
        return self.min_value <= v <= self.max_value

    def __str__(self):
        return f"q{self.int_bits}.{self.frac_bits}"


def quantize(v: float, fmt: FixedFormat) -> float:
    """Round ``v`` to the nearest multiple of the format's LSB, saturating."""
    return fmt.from_raw(fmt.to_raw(v))


@dataclass(frozen=True)
class NumericMode:
    """Either double precision (``fmt is None``) or a fixed-point format."""

    fmt: Optional[FixedFormat] = None

    @property
    def is_fixed(self) -> bool:
        return self.fmt is not None

    @classmethod
    def fixed(cls, int_bits: int = 1, frac_bits: int = 15) -> "NumericMode":
        return cls(FixedFormat(int_bits + frac_bits, frac_bits))

    @classmethod
    def parse(cls, text: str) -> "NumericMode":
        """Parse ``f64`` or ``q<m>.<f>`` (m integer bits incl. sign, f fractional)."""
        t = text.strip().lower()
        if t in ("f64", "float64"):
            return FLOAT64
        if t.startswith("q") and "." in t:
            m, _, f = t[1:].partition(".")
            try:
                return cls.fixed(int(m), int(f))
            except ValueError as exc:
                raise UsageError(f"bad fixed-point mode {text!r}: {exc}") from None
        raise UsageError(f"unknown numeric mode {text!r} (expected f64 or q<m>.<f>)")

    def cplx(self, z, im=None) -> "Cplx":
        """Build a sample in this mode from a Python number (quantizing if fixed)."""
        if im is None:
            z = complex(z)
            re, im = z.real, z.imag
        else:
            re = z
        if self.fmt is None:
            re, im = float(re), float(im)
            if not (math.isfinite(re) and math.isfinite(im)):
                raise DomainError(f"non-finite sample {complex(re, im)!r}")
            return Cplx._make(re, im, self)
        return Cplx._make(self.fmt.to_raw(re), self.fmt.to_raw(im), self)

    def from_raw(self, re: int, im: int) -> "Cplx":
        if self.fmt is None:
            raise UsageError("raw integer components only exist in fixed mode")
        return Cplx._make(self.fmt.saturate(int(re)), self.fmt.saturate(int(im)), self)

    @property
    def zero(self) -> "Cplx":
        return Cplx._make(0 if self.fmt else 0.0, 0 if self.fmt else 0.0, self)

    def __str__(self):
        return "f64" if self.fmt is None else str(self.fmt)


FLOAT64 = NumericMode()
Q15 = NumericMode(FixedFormat(16, 15))


class Cplx:
    """One complex sample in a given numeric mode. Immutable."""

    __slots__ = ("_re", "_im", "mode")

    def __init__(self, re=0.0, im=0.0, mode: NumericMode = FLOAT64):
        c = mode.cplx(re, im)
        object.__setattr__(self, "_re", c._re)
        object.__setattr__(self, "_im", c._im)
        object.__setattr__(self, "mode", mode)

    @classmethod
    def _make(cls, re, im, mode):
        self = object.__new__(cls)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        object.__setattr__(self, "mode", mode)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Cplx is immutable")

    @property
    def re(self) -> float:
        fmt = self.mode.fmt
        return self._re if fmt is None else fmt.from_raw(self._re)

    @property
    def im(self) -> float:
        fmt = self.mode.fmt
        return self._im if fmt is None else fmt.from_raw(self._im)

    @property
    def raw(self) -> tuple:
        """Stored components: floats in Float64 mode, scaled ints in fixed mode."""
        return self._re, self._im

    def __complex__(self):
        return complex(self.re, self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def __eq__(self, other):
        if not isinstance(other, Cplx):
            return NotImplemented
        return self.mode == other.mode and self._re == other._re and self._im == other._im

    def __hash__(self):
        return hash((self._re, self._im, self.mode))

    def __repr__(self):
        if self.mode.fmt is None:
            return f"Cplx({self._re!r}, {self._im!r})"
        return f"Cplx({self.re!r}, {self.im!r}, {self.mode})"

    def __add__(self, other):
        return cplx_add(self, other)

    def __sub__(self, other):
        return cplx_sub(self, other)

    def __mul__(self, other):
        return cplx_mul(self, other)

    def __neg__(self):
        return cplx_neg(self)


def _check(a: Cplx, b: Cplx) -> NumericMode:
    ma, mb = a.mode, b.mode
    if ma is not mb and ma != mb:
        raise ModeMismatchError(f"operands in different modes: {ma} vs {mb}")
    return ma


def cplx_add(a: Cplx, b: Cplx) -> Cplx:
    mode = _check(a, b)
    fmt = mode.fmt
    if fmt is None:
        return Cplx._make(a._re + b._re, a._im + b._im, mode)
    return Cplx._make(fmt.saturate(a._re + b._re), fmt.saturate(a._im + b._im), mode)


def cplx_sub(a: Cplx, b: Cplx) -> Cplx:
    mode = _check(a, b)
    fmt = mode.fmt
    if fmt is None:
        return Cplx._make(a._re - b._re, a._im - b._im, mode)
    return Cplx._make(fmt.saturate(a._re - b._re), fmt.saturate(a._im - b._im), mode)


def cplx_mul(a: Cplx, b: Cplx) -> Cplx:
    """Four real products and two add/subtracts.

    In fixed mode every product is rounded and saturated to the format
    before the add/subtract, the way a DSP-block multiplier feeding a
    word-width adder behaves.
    """
    mode = _check(a, b)
    fmt = mode.fmt
    if fmt is None:
        return Cplx._make(
            a._re * b._re - a._im * b._im, a._re * b._im + a._im * b._re, mode
        )
    f = fmt.frac_bits
    sat = fmt.saturate
    rr = sat(_round_shift(a._re * b._re, f))
    ii = sat(_round_shift(a._im * b._im, f))
    ri = sat(_round_shift(a._re * b._im, f))
    ir = sat(_round_shift(a._im * b._re, f))
    return Cplx._make(sat(rr - ii), sat(ri + ir), mode)


def cplx_neg(a: Cplx) -> Cplx:
    fmt = a.mode.fmt
    if fmt is None:
        return Cplx._make(-a._re, -a._im, a.mode)
    return Cplx._make(fmt.saturate(-a._re), fmt.saturate(-a._im), a.mode)


def cplx_conj(a: Cplx) -> Cplx:
    fmt = a.mode.fmt
    if fmt is None:
        return Cplx._make(a._re, -a._im, a.mode)
    return Cplx._make(a._re, fmt.saturate(-a._im), a.mode)


def cplx_scale_pow2(a: Cplx, exp: int) -> Cplx:
    """Multiply by ``2**exp`` (a shift in fixed mode, rounded half-even)."""
    fmt = a.mode.fmt
    if fmt is None:
        return Cplx._make(math.ldexp(a._re, exp), math.ldexp(a._im, exp), a.mode)
    return Cplx._make(
        fmt.saturate(_round_shift(a._re, -exp)),
        fmt.saturate(_round_shift(a._im, -exp)),
        a.mode,
    )


def _unit_root(n: int, k: int) -> tuple:
    """cos/-sin of 2*pi*k/n, evaluated by quadrant so axis points are exact."""
    q, rem = divmod(4 * (k % n), n)
    theta = 0.5 * math.pi * rem / n
    c, s = math.cos(theta), math.sin(theta)
    # e^{-j(theta + q*pi/2)} = (c - js) * (-j)^q
    if q == 0:
        return c, -s
    if q == 1:
        return -s, -c
    if q == 2:
        return -c, s
    return s, c


def twiddle(n: int, k: int, mode: NumericMode = FLOAT64) -> Cplx:
    """W_n^k = exp(-2j*pi*k/n)."""
    log2_exact(n)
    if not 0 <= k < n:
        raise UsageError(f"twiddle index {k} outside [0, {n})")
    re, im = _unit_root(n, k)
    return mode.cplx(re, im)


@dataclass(frozen=True)
class TwiddleTable:
    """W_n^k for k in [0, n/2); the other half is obtained by negation."""

    n: int
    factors: tuple
    mode: NumericMode = FLOAT64

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, k):
        return self.factors[k]

    def factor(self, k: int) -> Cplx:
        """W_n^k for any integer exponent."""
        k %= self.n
        half = self.n // 2
        if k < half:
            return self.factors[k]
        return cplx_neg(self.factors[k - half])


def build_twiddle_table(n: int, mode: NumericMode = FLOAT64) -> TwiddleTable:
    if log2_exact(n) < 1:
        raise ConfigError(f"twiddle table needs n >= 2, got {n}")
    return TwiddleTable(n, tuple(twiddle(n, k, mode) for k in range(n // 2)), mode)
