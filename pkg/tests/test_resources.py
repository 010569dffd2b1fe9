import pytest

from r2mdc.errors import ConfigError
from r2mdc.pipeline import new_pipeline, run_stream
from r2mdc.resources import audit_pipeline, count_resources


def test_n8_matches_published_architecture():
    r = count_resources(8)
    assert r.real_multipliers == 12
    assert r.delay_registers_complex == 10
    assert r.switches == 2
    assert r.stages == 3


def test_n64_closed_forms():
    r = count_resources(64)
    assert (r.real_multipliers, r.delay_registers_complex, r.switches) == (24, 94, 5)
    assert r.cmult_real_addsubs == 12
    assert r.butterfly_real_addsubs == 24
    assert r.pipeline_registers_complex == 6


@pytest.mark.parametrize("n", [4, 8, 16, 32, 64, 128, 256, 512, 1024, 4096])
def test_audit_equals_closed_form(n):
    assert audit_pipeline(new_pipeline(n)) == count_resources(n)


@pytest.mark.parametrize("n", [4, 8, 16, 256])
def test_delay_recurrence(n):
    # D(n) = 3n/2 - 2, so doubling n adds 3n/2 complex delay registers
    small, big = count_resources(n), count_resources(2 * n)
    assert big.delay_registers_complex == small.delay_registers_complex + 3 * n // 2


def test_audit_static_across_ticks():
    state = new_pipeline(16)
    before = audit_pipeline(state)
    run_stream(state, [0.5] * 40)
    assert audit_pipeline(state) == before


@pytest.mark.parametrize("n", [2, 12, 1])
def test_rejects_bad_n(n):
    with pytest.raises(ConfigError):
        count_resources(n)
