"""Regenerate src/r2mdc/data/output_maps.json by impulse identification.

Each entry lists, for slot 0..n/2-1, the natural bin index carried on
path A and on path B. n = 1024 takes about a minute.

    python scripts/freeze_output_maps.py [max_n]
"""

import json
import sys
from pathlib import Path

from r2mdc.pipeline import identify_output_map

OUT = Path(__file__).resolve().parents[1] / "src" / "r2mdc" / "data" / "output_maps.json"


def main(max_n=1024):
    tables = {}
    n = 4
    while n <= max_n:
        m = identify_output_map(n)
        tables[str(n)] = [[m[("A", k)], m[("B", k)]] for k in range(n // 2)]
        print(f"n={n}: identified", file=sys.stderr)
        n *= 2
    OUT.write_text(json.dumps(tables, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))
