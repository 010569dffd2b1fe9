"""Cycle-accurate model of an N-point radix-2 multipath delay commutator
(R2MDC) FFT pipeline, N = 2**S.

Datapath, one sample per cycle in, two samples per cycle out::

    x --+-[n/2]-+            A --------------+   +-[n/4]-+
        |       BF1 -> reg                   SW          BF2 -> reg -> ...
        +-------+            B ---[n/4]------+   +-------+

Stage 1 parks the first half of a frame in an N/2-deep delay and then
pairs ``x(m)`` with ``x(m + N/2)``. Every later stage ``j`` has two
``N/2**j`` delays around a 2x2 commutator that toggles every ``N/2**j``
cycles ("bar" first). Each butterfly scales its difference output by a
twiddle factor and drives a one-cycle pipeline register.

Control is frame-synchronous: each stage restarts its local cycle counter
when the first pair of a new frame (slot 0) reaches it, so idle gaps
between frames are harmless.
"""

from __future__ import annotations

import functools
import json
from collections import deque
from importlib import resources
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional

import numpy as np

from .errors import ConfigError, DomainError, StreamError, UsageError
from .numerics import (
    FLOAT64,
    Cplx,
    NumericMode,
    TwiddleTable,
    build_twiddle_table,
    cplx_add,
    cplx_mul,
    cplx_sub,
    log2_exact,
)
from .transforms import Frame, Order, Spectrum, dft_naive

__all__ = [
    "PipelineConfig",
    "DelayLine",
    "Commutator",
    "PipelineState",
    "CycleOutput",
    "stage_delays",
    "new_pipeline",
    "tick",
    "latency",
    "identify_output_map",
    "output_map",
    "run_stream",
    "run_frames",
]


@dataclass(frozen=True)
class PipelineConfig:
    n: int
    mode: NumericMode = FLOAT64

    def __post_init__(self):
        s = log2_exact(self.n)
        if s < 2:
            raise ConfigError(f"R2MDC pipeline needs n >= 4, got {self.n}")

    @property
    def stages(self) -> int:
        return log2_exact(self.n)


def stage_delays(n: int) -> list:
    """Per-stage delay depths: ``[n/2, (n/4, n/4), ..., (1, 1)]``."""
    PipelineConfig(n)
    s = log2_exact(n)
    return [n // 2] + [(n >> j, n >> j) for j in range(2, s + 1)]


class DelayLine:
    """Fixed-depth shift register of complex words."""

    def __init__(self, depth: int, mode: NumericMode = FLOAT64):
        if depth < 1:
            raise ConfigError("delay depth must be >= 1")
        self.depth = depth
        self.slots = deque([mode.zero] * depth, maxlen=depth)

    def shift(self, x: Cplx) -> Cplx:
        out = self.slots[0]
        self.slots.append(x)
        return out

    def __len__(self):
        return len(self.slots)


class Commutator:
    """2x2 switch: "bar" for the first ``period`` cycles, then "cross"."""

    def __init__(self, period: int):
        self.period = period
        self.phase = 0

    @property
    def state(self) -> str:
        return "bar" if self.phase < self.period else "cross"

    def route(self, top: Cplx, bottom: Cplx):
        if self.phase < self.period:
            return top, bottom
        return bottom, top


@dataclass(frozen=True)
class CycleOutput:
    """What the last stage's output register holds after one clock.

    ``path_a``, ``path_b``, ``frame_id`` and ``slot`` are meaningless when
    ``valid`` is false.
    """

    valid: bool
    path_a: Cplx
    path_b: Cplx
    frame_id: int
    slot: int
    cycle: int


class _Stage:
    # butterfly + complex multiplier + output register, shared by both stage kinds
    REAL_MULTS_PER_CMULT = 4
    CMULT_REAL_ADDSUBS = 2
    BUTTERFLY_REAL_ADDSUBS = 4

    def __init__(self, index: int, n: int, table: TwiddleTable):
        self.index = index
        self.n = n
        self.table = table
        self.zero = table.mode.zero
        self.twiddle_stride = 1 << (index - 1)
        self.t = 0
        self.running = False
        self.frame_id = -1
        # output register
        self.reg_a = self.zero
        self.reg_b = self.zero
        self.reg_valid = False
        self.reg_frame = -1
        self.reg_slot = 0
        # probes for traces
        self.bf_a = self.zero
        self.bf_b = self.zero
        self.bf_valid = False
        self.tw_index = 0

    @property
    def delay_lines(self) -> list:
        raise NotImplementedError

    commutator: Optional[Commutator] = None

    def _advance(self, sof: bool, frame_id: int):
        if sof:
            self.t = 0
            self.running = True
            self.frame_id = frame_id
        elif self.running:
            self.t += 1

    def _fire(self, a: Cplx, b: Cplx, slot: int, m: int):
        tw = m * self.twiddle_stride
        self.bf_a, self.bf_b, self.bf_valid, self.tw_index = a, b, True, tw
        self.reg_a = cplx_add(a, b)
        self.reg_b = cplx_mul(cplx_sub(a, b), self.table.factor(tw))
        self.reg_valid = True
        self.reg_frame = self.frame_id
        self.reg_slot = slot

    def _idle(self):
        self.bf_valid = False
        self.tw_index = 0
        self.reg_a = self.reg_b = self.zero
        self.reg_valid = False


class _InputStage(_Stage):
    """Stage 1: one n/2 delay, pairs x(m) with x(m + n/2)."""

    def __init__(self, n: int, table: TwiddleTable):
        super().__init__(1, n, table)
        self.delay = DelayLine(n // 2, table.mode)

    @property
    def delay_lines(self):
        return [self.delay]

    def step(self, x: Optional[Cplx], sof: bool, frame_id: int):
        self._advance(sof, frame_id)
        live = self.zero if x is None else x
        delayed = self.delay.shift(live)
        half = self.n // 2
        if self.running and half <= self.t < self.n:
            m = self.t - half
            self._fire(delayed, live, m, m)
        else:
            self._idle()


class _CommutatorStage(_Stage):
    """Stage j >= 2: delay bottom, switch, delay top, butterfly at distance n/2**j."""

    def __init__(self, index: int, n: int, table: TwiddleTable):
        super().__init__(index, n, table)
        self.span = n >> index
        self.delay_b = DelayLine(self.span, table.mode)
        self.delay_a = DelayLine(self.span, table.mode)
        self.commutator = Commutator(self.span)

    @property
    def delay_lines(self):
        return [self.delay_b, self.delay_a]

    def step(self, a: Cplx, b: Cplx, valid: bool, slot: int, frame_id: int):
        self._advance(valid and slot == 0, frame_id)
        d = self.span
        self.commutator.phase = self.t % (2 * d) if self.running else 0
        top, bottom = self.commutator.route(a, self.delay_b.shift(b))
        top = self.delay_a.shift(top)
        if self.running and d <= self.t < d + self.n // 2:
            k = self.t - d
            self._fire(top, bottom, k, k % d)
        else:
            self._idle()


@dataclass
class PipelineState:
    """Mutable state of one pipeline instance. Drive it with :func:`tick`."""

    config: PipelineConfig
    twiddles: TwiddleTable
    stages: list
    cycle: int = 0
    input_count: int = 0
    frames_started: int = 0
    last_input: Optional[Cplx] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def mode(self) -> NumericMode:
        return self.config.mode

    @property
    def commutators(self) -> list:
        return [s.commutator for s in self.stages if s.commutator is not None]

    @property
    def delay_lines(self) -> list:
        return [d for s in self.stages for d in s.delay_lines]

    @property
    def frame_position(self) -> int:
        """Index within the current frame of the next expected sample."""
        return self.input_count % self.n


def new_pipeline(config) -> PipelineState:
    if isinstance(config, int):
        config = PipelineConfig(config)
    n = config.n
    table = build_twiddle_table(n, config.mode)
    stages = [_InputStage(n, table)]
    stages += [_CommutatorStage(j, n, table) for j in range(2, config.stages + 1)]
    return PipelineState(config, table, stages)


def _coerce_input(state: PipelineState, x) -> Cplx:
    mode = state.mode
    if isinstance(x, Cplx):
        if x.mode != mode:
            raise UsageError(f"sample in mode {x.mode}, pipeline runs {mode}")
        return x
    z = complex(x)
    if mode.fmt is not None and not (
        mode.fmt.contains(z.real) and mode.fmt.contains(z.imag)
    ):
        raise DomainError(f"sample {z} outside {mode} range")
    return mode.cplx(z)


def tick(state: PipelineState, x=None) -> CycleOutput:
    """Advance one clock. ``x`` is the next sample, or ``None`` between frames."""
    pos = state.frame_position
    if x is None:
        if pos != 0:
            raise StreamError(
                f"missing sample {pos} of frame {state.frames_started - 1}; "
                "gaps are only allowed between frames"
            )
        sample = None
    else:
        sample = _coerce_input(state, x)

    stages = state.stages
    for j in range(len(stages) - 1, 0, -1):
        prev = stages[j - 1]
        stages[j].step(prev.reg_a, prev.reg_b, prev.reg_valid, prev.reg_slot, prev.reg_frame)
    sof = sample is not None and pos == 0
    stages[0].step(sample, sof, state.frames_started)

    if sof:
        state.frames_started += 1
    if sample is not None:
        state.input_count += 1
    state.last_input = sample
    last = stages[-1]
    out = CycleOutput(last.reg_valid, last.reg_a, last.reg_b, last.reg_frame,
                      last.reg_slot, state.cycle)
    state.cycle += 1
    return out


def latency(config) -> int:
    """Cycles from a frame's first input tick to its first valid output tick.

    Stage 1 waits n/2 cycles, stage j >= 2 adds n/2**j, and every stage
    boundary adds its one-cycle register (the last register's content is
    what ``tick`` returns, so it does not add).
    """
    if isinstance(config, int):
        config = PipelineConfig(config)
    n, s = config.n, config.stages
    return n // 2 + sum(n >> j for j in range(2, s + 1)) + (s - 1)


def run_stream(state: PipelineState, inputs: Iterable) -> List[CycleOutput]:
    return [tick(state, x) for x in inputs]


def identify_output_map(n: int) -> dict:
    """Find which natural bin each (path, slot) carries.

    Streams the n impulses delta(t - m) back to back through a Float64
    pipeline and matches each output position's response vector against
    the rows of the naive DFT of those impulses.
    """
    config = PipelineConfig(n, FLOAT64)
    state = new_pipeline(config)
    impulses = np.eye(n, dtype=complex)
    stream = [complex(v) for row in impulses for v in row] + [None] * latency(config)
    response = {}
    for out in run_stream(state, stream):
        if out.valid:
            response[("A", out.slot, out.frame_id)] = complex(out.path_a)
            response[("B", out.slot, out.frame_id)] = complex(out.path_b)
    # column m of the DFT matrix = spectrum of impulse m
    oracle = np.array(
        [dft_naive(Frame.from_complex(row)).to_numpy() for row in impulses]
    ).T
    mapping = {}
    for path in ("A", "B"):
        for slot in range(n // 2):
            vec = np.array([response[(path, slot, m)] for m in range(n)])
            err = np.abs(oracle - vec).max(axis=1)
            k = int(np.argmin(err))
            if err[k] > 1e-9:
                raise RuntimeError(f"output ({path}, {slot}) matches no DFT bin")
            mapping[(path, slot)] = k
    if sorted(mapping.values()) != list(range(n)):
        raise RuntimeError("identified output map is not a bijection")
    return mapping


@functools.lru_cache(maxsize=None)
def _golden_maps() -> dict:
    text = resources.files("r2mdc").joinpath("data/output_maps.json").read_text()
    return {int(n): rows for n, rows in json.loads(text).items()}


@functools.lru_cache(maxsize=None)
def _cached_map(n: int) -> tuple:
    rows = _golden_maps().get(n)
    if rows is None:
        return tuple(sorted(identify_output_map(n).items()))
    pairs = [(("A", k), a) for k, (a, _) in enumerate(rows)]
    pairs += [(("B", k), b) for k, (_, b) in enumerate(rows)]
    return tuple(sorted(pairs))


def output_map(n: int) -> dict:
    """(path, slot) -> natural bin index.

    Served from the frozen golden tables (n = 4 .. 1024, produced by
    :func:`identify_output_map`); other sizes are identified on first use.
    """
    PipelineConfig(n)
    return dict(_cached_map(n))


def run_frames(config, frames, on_tick: Optional[Callable] = None) -> List[Spectrum]:
    """Stream frames back to back and return one natural-order spectrum each.

    The run lasts ``n * len(frames) + latency`` cycles: every input cycle
    plus a drain of one latency. ``on_tick(state, sample, out)`` is called
    after every clock, e.g. to record a trace.
    """
    if isinstance(config, int):
        config = PipelineConfig(config)
    frames = list(frames)
    n = config.n
    for f in frames:
        if f.n != n:
            raise UsageError(f"frame of length {f.n} in an n={n} run")
    state = new_pipeline(config)
    mapping = output_map(n)
    bins = [[None] * n for _ in frames]
    # foreign-mode samples go in as plain numbers so tick() range-checks them
    stream = [s if s.mode == config.mode else complex(s)
              for f in frames for s in f.samples]
    stream += [None] * latency(config)
    for sample in stream:
        out = tick(state, sample)
        if on_tick is not None:
            on_tick(state, sample, out)
        if out.valid:
            row = bins[out.frame_id]
            row[mapping[("A", out.slot)]] = out.path_a
            row[mapping[("B", out.slot)]] = out.path_b
    return [Spectrum(tuple(b), Order.NATURAL) for b in bins]
