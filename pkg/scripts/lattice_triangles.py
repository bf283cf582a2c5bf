#!/usr/bin/env python3
"""Where does "empty interior iff unit cross product" break?

Scans integer vectors a, b in a box with <a,b> > 0 and sorts the
disagreements by which triangle edges are primitive.  With all three
edges 0-a, 0-b, a-b primitive the equivalence holds; every failure has a
lattice point strictly inside an edge.
"""

import argparse
import itertools
from collections import Counter
from math import gcd

from newton_dm1.polygons import cross, lattice_interior_empty


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--box", type=int, default=8)
    args = ap.parse_args(argv)

    r = range(-args.box, args.box + 1)
    tally = Counter()
    first = {}
    for a in itertools.product(r, repeat=2):
        for b in itertools.product(r, repeat=2):
            det = cross(a, b)
            if det <= 0:
                continue
            edges = (gcd(*a), gcd(*b), gcd(b[0] - a[0], b[1] - a[1]))
            kind = "all edges primitive" if edges == (1, 1, 1) else (
                "a, b primitive, a-b not" if edges[:2] == (1, 1) else "a or b not primitive"
            )
            agree = lattice_interior_empty(a, b) == (det == 1)
            tally[kind, agree] += 1
            if not agree:
                first.setdefault(kind, (a, b, det))

    print(f"box [-{args.box},{args.box}]")
    for kind in ("all edges primitive", "a, b primitive, a-b not", "a or b not primitive"):
        ok, bad = tally[kind, True], tally[kind, False]
        line = f"  {kind:26s} agree {ok:6d}  disagree {bad:6d}"
        if kind in first:
            a, b, det = first[kind]
            line += f"  e.g. a={a} b={b} <a,b>={det}"
        print(line)


if __name__ == "__main__":
    main()
