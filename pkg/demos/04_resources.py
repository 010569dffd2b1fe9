"""
Architectural resources
=======================

One butterfly with one complex multiplier (four real multipliers) per
stage, 3N/2 - 2 complex delay registers and log2(N) - 1 switches.
"""

from r2mdc import audit_pipeline, count_resources, new_pipeline
from r2mdc.cli import cmd_resources

print(f"{'N':>6} {'mults':>6} {'delays':>7} {'switches':>9}")
for s in range(2, 11):
    n = 2 ** s
    r = count_resources(n)
    assert audit_pipeline(new_pipeline(n)) == r
    print(f"{n:6d} {r.real_multipliers:6d} {r.delay_registers_complex:7d} {r.switches:9d}")

###############################################################################
# The 8-point design next to the published figures.

cmd_resources(8)
