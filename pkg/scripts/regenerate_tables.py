"""Regenerate the coefficient and error tables as CSV files.

    python scripts/regenerate_tables.py [--out DIR] [--format csv|pretty]

Writes table1.txt (c_k, d_k polynomials), table2.csv (p_k and the leading
Bleistein coefficients), table3.csv (Bleistein form, k <= 1) and table4.csv
(regrouped form, k <= 3, p-index truncation).
"""
import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

from hyperasym.cli import _TABLE_DEFAULTS, RunSpec, run
from hyperasym.olver import ckdk_symbolic


def poly_text(terms: dict) -> str:
    # terms maps (power of mu, power of chi) -> Fraction
    parts = []
    for (i, j), v in sorted(terms.items(), key=lambda t: (-t[0][0], -t[0][1])):
        mono = "*".join(s for s in (f"mu^{i}" if i else "", f"chi^{j}" if j else "") if s)
        parts.append(f"{v}" + (f"*{mono}" if mono else ""))
    return " + ".join(parts) or "0"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="tables", help="output directory")
    ap.add_argument("--format", choices=("csv", "pretty"), default="csv")
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    with open(out / "table1.txt", "w", encoding="utf-8") as fh:
        for k, (ck, dk) in enumerate(ckdk_symbolic(7)):
            fh.write(f"c_{k} = {poly_text(ck)}\nd_{k} = {poly_text(dk)}\n")
    print(f"wrote {out / 'table1.txt'}")

    status = 0
    for name in ("table2", "table3", "table4"):
        spec = replace(RunSpec(command=name, format=args.format), **_TABLE_DEFAULTS[name])
        t0 = time.perf_counter()
        with open(out / f"{name}.csv", "w", encoding="utf-8", newline="") as fh:
            status = max(status, run(spec, fh))
        print(f"wrote {out / name}.csv in {time.perf_counter() - t0:.2f}s")
    return status


if __name__ == "__main__":
    sys.exit(main())
