import json
import math

import numpy as np
import pytest

from r2mdc.cli import main
from r2mdc.errors import FrameLengthError, ParseError
from r2mdc.harness import (
    emit_trace,
    fixed_error_bound,
    load_frames,
    read_trace_inputs,
    run_engine,
)
from r2mdc.numerics import FLOAT64, Q15, NumericMode
from r2mdc.pipeline import PipelineConfig, latency, new_pipeline, run_frames, tick
from r2mdc.harness import capture_record
from r2mdc.transforms import Frame

from conftest import random_frame

# SNR of the Q1.15 pipeline on the seed-7 frame below (uniform in [-0.5, 0.5],
# n = 8), measured once against the Float64 oracle. The DC growth of 8x
# overflows Q1.15, so the run saturates and fails its tolerance.
Q15_SNR_BASELINE_DB = 13.54


def write_samples(path, values):
    path.write_text("".join(f"{float(z.real)!r},{float(z.imag)!r}\n" for z in values))
    return path


# --- load_frames ----------------------------------------------------------


def test_load_constant_frame(tmp_path):
    p = tmp_path / "dc.csv"
    p.write_text("# stimulus\n" + "2.0,2.0\n" * 8)
    (frame,) = load_frames(p, 8)
    assert all(complex(s) == 2 + 2j for s in frame.samples)


def test_load_two_frames(tmp_path, rng):
    vals = random_frame(rng, 16).to_numpy()
    frames = load_frames(write_samples(tmp_path / "x.csv", vals), 8)
    assert len(frames) == 2
    assert np.array_equal(np.concatenate([f.to_numpy() for f in frames]), vals)


def test_load_partial_frame(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("1,0\n" * 9)
    with pytest.raises(FrameLengthError):
        load_frames(p, 8)


@pytest.mark.parametrize("bad", ["1.0", "1,2,3", "a,b", "nan,0"])
def test_load_malformed_line(tmp_path, bad):
    p = tmp_path / "x.csv"
    p.write_text("1,0\n1,0\n" + bad + "\n1,0\n")
    with pytest.raises(ParseError) as info:
        load_frames(p, 4)
    assert info.value.lineno == 3


# --- run_engine -----------------------------------------------------------


def test_cross_engine_agreement(rng):
    frames = [random_frame(rng, 16) for _ in range(3)]
    reports = {e: run_engine(frames, e) for e in ("naive", "fft", "pipeline")}
    spectra = {e: np.array(r.spectra) for e, r in reports.items()}
    assert np.abs(spectra["fft"] - spectra["naive"]).max() <= 1e-9
    assert np.abs(spectra["pipeline"] - spectra["naive"]).max() <= 1e-9
    r = reports["pipeline"]
    assert r.passed and r.latency_cycles == latency(16)
    assert r.total_cycles == 16 * 3 + latency(16)


def test_fixed_bound_holds_when_nothing_overflows(rng):
    mode = NumericMode.fixed(4, 12)
    frames = [random_frame(rng, 8, amp=0.5) for _ in range(5)]
    for engine in ("naive", "fft", "pipeline"):
        r = run_engine(frames, engine, mode)
        assert r.passed, (engine, r.max_abs_error, r.tolerance)
        assert r.max_abs_error <= r.tolerance


def test_fixed_bound_grows_with_n():
    fmt = Q15.fmt
    bounds = [fixed_error_bound(fmt, n, 0.01) for n in (4, 8, 16, 32)]
    assert bounds == sorted(bounds)
    assert fixed_error_bound(fmt, 8, 0.0) > fmt.lsb


def test_q15_snr_baseline():
    frame = random_frame(np.random.default_rng(7), 8, amp=0.5)
    r = run_engine([frame], "pipeline", Q15)
    assert Q15_SNR_BASELINE_DB <= r.snr_db < Q15_SNR_BASELINE_DB + 0.01
    assert not r.passed


# --- traces ---------------------------------------------------------------


def traced_run(n, frames, mode=FLOAT64):
    records = []
    run_frames(PipelineConfig(n, mode), frames,
               on_tick=lambda st, x, out: records.append(capture_record(st, x, out)))
    return records


def test_empty_trace_is_header_only(tmp_path):
    p = tmp_path / "t.csv"
    emit_trace([], p, stages=3)
    lines = p.read_text().splitlines()
    assert len(lines) == 1 and lines[0].startswith("cycle,in_valid,")


def test_trace_deterministic(tmp_path, rng):
    frames = [random_frame(rng, 8) for _ in range(2)]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_trace(traced_run(8, frames), a)
    emit_trace(traced_run(8, frames), b)
    assert a.read_bytes() == b.read_bytes()


def test_impulse_trace_length(tmp_path):
    records = traced_run(8, [Frame.from_complex([1] + [0] * 7)])
    valid = [r.cycle for r in records if r.output.valid]
    assert valid[-1] + 1 == latency(8) + 4


@pytest.mark.parametrize("mode", [FLOAT64, NumericMode.fixed(4, 12)])
def test_trace_replay_reproduces(tmp_path, rng, mode):
    frames = [random_frame(rng, 8, amp=0.4) for _ in range(2)]
    first = tmp_path / "first.csv"
    emit_trace(traced_run(8, frames, mode), first, mode)
    inputs = read_trace_inputs(first, mode)
    state = new_pipeline(PipelineConfig(8, mode))
    records = [capture_record(state, x, tick(state, x)) for x in inputs]
    again = tmp_path / "again.csv"
    emit_trace(records, again, mode)
    assert first.read_bytes() == again.read_bytes()


def test_fixed_trace_has_scaled_integers(tmp_path):
    mode = NumericMode.fixed(4, 12)
    p = tmp_path / "t.csv"
    emit_trace(traced_run(4, [Frame.from_complex([0.5] * 4)], mode), p, mode)
    header, first = p.read_text().splitlines()[:2]
    assert "in_re_q4.12" in header.split(",")
    assert first.split(",")[:4] == ["0", "1", "2048", "0"]


# --- CLI ------------------------------------------------------------------


def test_cli_pipeline_dc(tmp_path, capsys):
    inp = tmp_path / "dc.csv"
    inp.write_text("2.0,2.0\n" * 8)
    rep = tmp_path / "r.json"
    assert main(["--n", "8", "--input", str(inp), "--report", str(rep)]) == 0
    report = json.loads(rep.read_text())
    assert report["max_abs_error"] <= 1e-9
    assert report["frames_processed"] == 1
    assert report["total_cycles"] == 8 + latency(8)
    assert "PASS" in capsys.readouterr().out


def test_cli_engines_agree(tmp_path, rng):
    inp = write_samples(tmp_path / "x.csv", random_frame(rng, 32).to_numpy())
    spectra = {}
    for engine in ("naive", "fft", "pipeline"):
        rep = tmp_path / f"{engine}.json"
        assert main(["--n", "16", "--engine", engine, "--input", str(inp),
                     "--report", str(rep)]) == 0
        spectra[engine] = np.array(json.loads(rep.read_text())["spectra"])
    assert np.abs(spectra["fft"] - spectra["naive"]).max() <= 1e-9
    assert np.abs(spectra["pipeline"] - spectra["naive"]).max() <= 1e-9


def test_cli_deterministic_outputs(tmp_path, rng):
    inp = write_samples(tmp_path / "x.csv", random_frame(rng, 16).to_numpy())
    outs = []
    for tag in ("a", "b"):
        rep, tr = tmp_path / f"{tag}.json", tmp_path / f"{tag}.csv"
        assert main(["--n", "8", "--input", str(inp), "--report", str(rep),
                     "--trace", str(tr)]) == 0
        outs.append((rep.read_bytes(), tr.read_bytes()))
    assert outs[0] == outs[1]


def test_cli_q15_random_frame(tmp_path):
    frame = random_frame(np.random.default_rng(7), 8, amp=0.5)
    inp = write_samples(tmp_path / "x.csv", frame.to_numpy())
    rep = tmp_path / "r.json"
    code = main(["--n", "8", "--mode", "q1.15", "--input", str(inp), "--report", str(rep)])
    report = json.loads(rep.read_text())
    assert report["snr_db"] >= Q15_SNR_BASELINE_DB
    assert code == (0 if report["max_abs_error"] <= report["tolerance"] else 1)
    assert code == 1  # overflow, see Q15_SNR_BASELINE_DB


def test_cli_q15_small_signal_passes(tmp_path):
    frame = random_frame(np.random.default_rng(7), 8, amp=1 / 16)
    inp = write_samples(tmp_path / "x.csv", frame.to_numpy())
    assert main(["--n", "8", "--mode", "q1.15", "--input", str(inp)]) == 0


def test_cli_tolerance_failure(tmp_path):
    inp = tmp_path / "x.csv"
    inp.write_text("0.9,0.9\n" * 8)  # DC = 7.2 overflows q1.15
    assert main(["--n", "8", "--mode", "q1.15", "--input", str(inp)]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["--n", "8", "--bogus"],
        ["--input", "x.csv"],
        ["--n", "6", "--input", "x.csv"],
        ["--n", "2", "--engine", "pipeline", "--input", "x.csv"],
        ["--n", "8", "--mode", "q9", "--input", "x.csv"],
        ["--n", "8", "--engine", "fft", "--input", "x.csv", "--trace", "t.csv"],
        ["--n", "8"],
        ["--n", "12", "--resources"],
    ],
)
def test_cli_usage_errors(argv):
    assert main(argv) == 2


def test_cli_file_errors(tmp_path):
    assert main(["--n", "8", "--input", str(tmp_path / "missing.csv")]) == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,0\noops\n")
    assert main(["--n", "2", "--engine", "fft", "--input", str(bad)]) == 3
    part = tmp_path / "part.csv"
    part.write_text("1,0\n" * 9)
    assert main(["--n", "8", "--input", str(part)]) == 3
    big = tmp_path / "big.csv"
    big.write_text("2.0,0\n" * 8)
    assert main(["--n", "8", "--mode", "q1.15", "--input", str(big)]) == 3
    ok = tmp_path / "ok.csv"
    ok.write_text("1,0\n" * 8)
    assert main(["--n", "8", "--input", str(ok), "--report", str(tmp_path / "no/dir/r.json")]) == 3


def test_cli_resources_n8(capsys):
    assert main(["--n", "8", "--resources"]) == 0
    out = capsys.readouterr().out
    assert "multipliers: 12 (paper: 12, match)" in out
    assert "delay elements: 10 (paper: 10, match)" in out
    assert "switches: 2 (paper: 2, match)" in out
    assert "out of scope" in out


def test_cli_resources_n32(capsys):
    assert main(["--n", "32", "--resources"]) == 0
    out = capsys.readouterr().out
    assert "multipliers: 20\n" in out
    assert "delay elements: 46\n" in out
    assert "paper" not in out
