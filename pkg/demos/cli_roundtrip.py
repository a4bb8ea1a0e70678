"""Write matrix files and drive the command line on them.

    python3 demos/cli_roundtrip.py
"""

import argparse
import tempfile
from pathlib import Path

from drazinpert.cli import main as cli
from drazinpert.harness.matio import write_matrix
from drazinpert.harness.worked import diagonal_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    extra = ["--json"] if args.json else []

    a, b = diagonal_pair()
    with tempfile.TemporaryDirectory() as d:
        fa, fb = Path(d, "a.json"), Path(d, "b.csv")
        write_matrix(fa, a)
        fb.write_text("0.5,0,0,0\n0,0,0,0\n0,0,0,0\n0,0,0,2\n")
        for argv in (
            ["drazin", str(fa)],
            ["check", "--theorem", "t32", str(fa), str(fb)],
            ["perturb", "--theorem", "t32", str(fa), str(fb)],
            ["bound", "--theorem", "t32", str(fa), str(fb)],
            ["check", "--theorem", "c34", str(fa), str(fb)],
        ):
            print(f"$ drazinpert {' '.join(argv)}")
            code = cli(argv + extra)
            print(f"[exit {code}]\n")


if __name__ == "__main__":
    main()
