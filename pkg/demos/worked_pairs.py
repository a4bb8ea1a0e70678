"""Recompute the published values of both worked pairs, then show a tampered pair caught.

    python3 demos/worked_pairs.py --norm entrywise-l1
"""

import argparse

import numpy as np

from drazinpert.harness.worked import diagonal_pair, reproduce_examples
from drazinpert.matcore import NormKind


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--norm", type=NormKind.parse, default=NormKind.ENTRYWISE_L1)
    args = ap.parse_args()

    rep = reproduce_examples(args.norm)
    print("\n".join(rep.lines()))
    print(f"all pass: {rep.ok}\n")

    a, b = diagonal_pair()
    b = b.copy()
    b[3, 3] = 2.5
    bad = reproduce_examples(args.norm, diagonal=(a, b))
    print("with b[4,4] changed from 2 to 2.5:")
    for x in bad.failures:
        print(f"  caught: {x.name}")
    np.testing.assert_(not bad.ok)


if __name__ == "__main__":
    main()
