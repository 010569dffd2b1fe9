"""Sample-file loading, engine runs against the Float64 oracle, and
per-cycle trace capture for the pipeline simulator."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from .errors import DomainError, FrameLengthError, ParseError, UsageError
from .numerics import FLOAT64, Cplx, FixedFormat, NumericMode, log2_exact
from .pipeline import CycleOutput, PipelineConfig, PipelineState, latency, run_frames
from .transforms import Frame, bit_reverse_permute, dft_naive, fft_dif

__all__ = [
    "ENGINES",
    "F64_TOLERANCE",
    "load_frames",
    "fixed_error_bound",
    "RunReport",
    "run_engine",
    "StageProbe",
    "TraceRecord",
    "capture_record",
    "trace_header",
    "emit_trace",
    "read_trace_inputs",
]

ENGINES = ("naive", "fft", "pipeline")
F64_TOLERANCE = 1e-9


def load_frames(path, n: int) -> List[Frame]:
    """Read ``re,im`` lines into consecutive n-sample Float64 frames.

    Lines starting with ``#`` and blank lines are skipped.
    """
    log2_exact(n)
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split(",")
            if len(parts) != 2:
                raise ParseError(f"expected 're,im', got {text!r}", lineno)
            try:
                re, im = float(parts[0]), float(parts[1])
            except ValueError:
                raise ParseError(f"not a number pair: {text!r}", lineno) from None
            if not (math.isfinite(re) and math.isfinite(im)):
                raise ParseError(f"non-finite sample {text!r}", lineno)
            values.append(complex(re, im))
    if not values:
        raise FrameLengthError(f"{path}: no samples")
    if len(values) % n:
        raise FrameLengthError(
            f"{path}: {len(values)} samples is not a multiple of n={n} "
            f"({len(values) % n} left over)"
        )
    return [Frame.from_complex(values[i:i + n]) for i in range(0, len(values), n)]


def fixed_error_bound(fmt: FixedFormat, n: int, peak: float, engine: str = "fft") -> float:
    """Worst-case per-component error of a fixed-point run vs the exact DFT.

    ``peak`` bounds the input magnitude. Assumes nothing saturates; the
    terms are input rounding, twiddle rounding (saturated 1.0 included)
    and rounding of the four products inside every complex multiply.
    """
    q = fmt.lsb
    err = q / math.sqrt(2.0)  # input rounding, both components
    mag = peak + err
    mult_round = math.sqrt(2.0) * q
    if engine == "naive":
        return n * (err * (1 + q) + mag * q + mult_round)
    for _ in range(log2_exact(n)):
        # difference path dominates: |a-b| <= 2*mag, error 2*err, times w_q
        err = 2 * err * (1 + q) + 2 * mag * q + mult_round
        mag = 2 * mag * (1 + q)
    return err


@dataclass
class RunReport:
    n: int
    mode: str
    engine: str
    max_abs_error: float
    snr_db: float
    frames_processed: int
    latency_cycles: int
    total_cycles: int
    tolerance: float
    passed: bool
    spectra: list = field(default_factory=list, repr=False)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1, sort_keys=True) + "\n"


def _snr_db(ref: np.ndarray, got: np.ndarray) -> float:
    noise = float(np.sum(np.abs(got - ref) ** 2))
    signal = float(np.sum(np.abs(ref) ** 2))
    if noise == 0.0:
        return math.inf
    if signal == 0.0:
        return -math.inf
    return 10.0 * math.log10(signal / noise)


def run_engine(
    frames: List[Frame],
    engine: str = "pipeline",
    mode: NumericMode = FLOAT64,
    trace: Optional[list] = None,
) -> RunReport:
    """Run one engine over all frames and compare with the Float64 naive DFT.

    When ``trace`` is a list and the engine is the pipeline, one
    :class:`TraceRecord` per cycle is appended to it.
    """
    if engine not in ENGINES:
        raise UsageError(f"unknown engine {engine!r}")
    if not frames:
        raise UsageError("no frames to process")
    n = frames[0].n
    if any(f.n != n for f in frames):
        raise UsageError("frames of mixed lengths")
    if trace is not None and engine != "pipeline":
        raise UsageError("traces are only produced by the pipeline engine")

    if mode.is_fixed:
        fmt = mode.fmt
        for i, f in enumerate(frames):
            for s in f.samples:
                if not (fmt.contains(s.re) and fmt.contains(s.im)):
                    raise DomainError(f"frame {i}: sample {complex(s)} outside {mode} range")

    lat, total = 0, n * len(frames)
    if engine == "naive":
        spectra = [dft_naive(f, mode) for f in frames]
    elif engine == "fft":
        spectra = [bit_reverse_permute(fft_dif(f, mode)) for f in frames]
    else:
        config = PipelineConfig(n, mode)
        hook = None
        if trace is not None:
            def hook(state, sample, out):
                trace.append(capture_record(state, sample, out))
        spectra = run_frames(config, frames, on_tick=hook)
        lat = latency(config)
        total += lat

    got = np.array([s.to_numpy() for s in spectra])
    ref = np.array([dft_naive(f.astype(FLOAT64)).to_numpy() for f in frames])
    diff = got - ref
    max_err = float(max(np.abs(diff.real).max(), np.abs(diff.imag).max()))
    if mode.is_fixed:
        peak = max(float(np.abs(f.to_numpy()).max()) for f in frames)
        tol = fixed_error_bound(mode.fmt, n, peak, engine)
    else:
        tol = F64_TOLERANCE
    return RunReport(
        n=n,
        mode=str(mode),
        engine=engine,
        max_abs_error=max_err,
        snr_db=_snr_db(ref, got),
        frames_processed=len(frames),
        latency_cycles=lat,
        total_cycles=total,
        tolerance=tol,
        passed=max_err <= tol,
        spectra=[[[z.real, z.imag] for z in row] for row in got],
    )


# --- traces --------------------------------------------------------------


@dataclass(frozen=True)
class StageProbe:
    switch: str  # "bar", "cross", or "-" for the input stage
    twiddle_index: int
    bf_valid: bool
    bf_in_a: Cplx
    bf_in_b: Cplx
    bf_out_a: Cplx
    bf_out_b: Cplx


@dataclass(frozen=True)
class TraceRecord:
    cycle: int
    input: Optional[Cplx]
    stages: tuple
    output: CycleOutput


def capture_record(state: PipelineState, sample, out: CycleOutput) -> TraceRecord:
    probes = tuple(
        StageProbe(
            st.commutator.state if st.commutator is not None else "-",
            st.tw_index,
            st.bf_valid,
            st.bf_a,
            st.bf_b,
            st.reg_a,
            st.reg_b,
        )
        for st in state.stages
    )
    return TraceRecord(out.cycle, state.last_input, probes, out)


def _fmt_value(v: Cplx, fixed: bool) -> list:
    if fixed:
        return [str(v.raw[0]), str(v.raw[1])]
    return [format(v.re, ".17g"), format(v.im, ".17g")]


def trace_header(stages: int, mode: NumericMode) -> str:
    # fixed mode columns carry the format, values are scaled integers
    unit = "" if not mode.is_fixed else f"_{mode}"
    cols = ["cycle", "in_valid", f"in_re{unit}", f"in_im{unit}"]
    for j in range(1, stages + 1):
        p = f"s{j}_"
        cols += [p + "switch", p + "tw", p + "bf_valid"]
        for sig in ("in_a", "in_b", "out_a", "out_b"):
            cols += [f"{p}{sig}_re{unit}", f"{p}{sig}_im{unit}"]
    cols += ["out_valid", "out_frame", "out_slot",
             f"out_a_re{unit}", f"out_a_im{unit}", f"out_b_re{unit}", f"out_b_im{unit}"]
    return ",".join(cols)


def _record_line(rec: TraceRecord, mode: NumericMode) -> str:
    fixed = mode.is_fixed
    zero = mode.zero
    row = [str(rec.cycle), "1" if rec.input is not None else "0"]
    row += _fmt_value(rec.input if rec.input is not None else zero, fixed)
    for p in rec.stages:
        row += [p.switch, str(p.twiddle_index), "1" if p.bf_valid else "0"]
        for v in (p.bf_in_a, p.bf_in_b, p.bf_out_a, p.bf_out_b):
            row += _fmt_value(v, fixed)
    o = rec.output
    row += ["1" if o.valid else "0", str(o.frame_id), str(o.slot)]
    row += _fmt_value(o.path_a, fixed) + _fmt_value(o.path_b, fixed)
    return ",".join(row)


def emit_trace(records, path, mode: NumericMode = FLOAT64, stages: Optional[int] = None) -> None:
    """Write a header line and one CSV line per cycle."""
    records = list(records)
    if stages is None:
        stages = len(records[0].stages) if records else 0
    lines = [trace_header(stages, mode)]
    lines += [_record_line(r, mode) for r in records]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_trace_inputs(path, mode: NumericMode = FLOAT64) -> list:
    """Recover the per-cycle input stream (``None`` for idle cycles) from a trace."""
    out = []
    with open(path, encoding="utf-8") as fh:
        next(fh)
        for line in fh:
            _, valid, re, im = line.split(",", 4)[:4]
            if valid == "0":
                out.append(None)
            elif mode.is_fixed:
                out.append(mode.from_raw(int(re), int(im)))
            else:
                out.append(mode.cplx(float(re), float(im)))
    return out
