#!/usr/bin/env python3
"""Dump exact weight distributions for a parameter sweep.

Writes one JSON file per (family, q, m) plus a summary of enumerator
strings to stdout. Example:

    python scripts/weight_tables.py --families rm2 hrm2 --q 2 3 4 --max-m 4 --out-dir out/
"""

import argparse
import json
import pathlib
import sys

from qfrm.codes import distribution, weight_enumerator_text
from qfrm.errors import QfrmError
from qfrm.field import field_from_order


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--families", nargs="+", default=["rm2", "hrm2", "prm2"],
                        choices=("rm2", "hrm2", "prm2"))
    parser.add_argument("--q", nargs="+", type=int, default=[2, 3, 4, 5])
    parser.add_argument("--max-m", type=int, default=4)
    parser.add_argument("--out-dir", default=None, help="directory for JSON dumps")
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    for q in args.q:
        field_from_order(q)
        for m in range(1, args.max_m + 1):
            for family in args.families:
                try:
                    wd = distribution(family, q, m)
                except QfrmError as exc:
                    print(f"{family} q={q} m={m}: skipped ({exc})", file=sys.stderr)
                    continue
                print(f"{family} q={q} m={m} [n={wd.params.n} k={wd.params.k} d={wd.params.d}]")
                print(f"  {weight_enumerator_text(wd)}")
                if out_dir:
                    path = out_dir / f"{family}_q{q}_m{m}.json"
                    path.write_text(json.dumps(wd.to_json_dict(), indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
