"""Regenerate src/clgroups/data/conway.txt.gz from Frank Luebeck's Conway
polynomial tables (as redistributed in the sqlite file shipped by the
``galois`` wheel).

    python tools/extract_conway.py path/to/conway_polys.db

Kept entries: every (p, k) with p**k <= 2**32, plus every prime in the
source with k <= 4.  Each output line is ``p k c_0 c_1 ... c_k`` with
ascending coefficients (the polynomial is monic, c_k = 1).
"""

import gzip
import sqlite3
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "clgroups" / "data" / "conway.txt.gz"


def main(db_path):
    con = sqlite3.connect(db_path)
    rows = con.execute(
        "select characteristic, degree, nonzero_degrees, nonzero_coeffs from polys"
    ).fetchall()
    lines = []
    for p, k, degs, coeffs in sorted(rows):
        if not (p**k <= 2**32 or k <= 4):
            continue
        c = [0] * (k + 1)
        for d, a in zip(degs.split(","), coeffs.split(",")):
            c[int(d)] = int(a) % p
        assert c[k] == 1
        lines.append(" ".join(map(str, [p, k] + c)))
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with gzip.open(OUT, "wt") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} polynomials to {OUT}")


if __name__ == "__main__":
    main(sys.argv[1])
