"""Radix-2 DIF FFT reference transforms and a cycle-accurate R2MDC
(radix-2 multipath delay commutator) pipeline simulator."""

from .errors import (
    ConfigError,
    DomainError,
    FrameLengthError,
    ModeMismatchError,
    ParseError,
    R2mdcError,
    StreamError,
    UsageError,
)
from .numerics import (
    FLOAT64,
    Q15,
    Cplx,
    FixedFormat,
    NumericMode,
    TwiddleTable,
    build_twiddle_table,
    cplx_add,
    cplx_mul,
    cplx_sub,
    quantize,
    twiddle,
)
from .transforms import (
    Frame,
    OpCount,
    Order,
    Spectrum,
    bit_reverse_permute,
    butterfly,
    dft_naive,
    fft_dif,
    ifft_via_conjugate,
    theoretical_op_counts,
)
from .pipeline import (
    CycleOutput,
    PipelineConfig,
    PipelineState,
    latency,
    new_pipeline,
    output_map,
    run_frames,
    stage_delays,
    tick,
)
from .resources import ResourceReport, audit_pipeline, count_resources

__version__ = "0.1.0"
