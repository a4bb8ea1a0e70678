"""Formula-versus-oracle fuzzing for both theorems with a summary table.

    python3 demos/fuzz_report.py --trials 200 --workers 4
"""

import argparse
import time

from drazinpert.harness.trials import fuzz_specs, run_batch, summarize


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    for th in ("T2.3", "T3.2"):
        t0 = time.perf_counter()
        records = run_batch(fuzz_specs(th, args.trials, args.seed), workers=args.workers)
        s = summarize(records)
        print(f"{th} ({time.perf_counter() - t0:.2f} s)")
        for line in s.lines():
            print("  " + line)
        worst = max((r for r in records if r.exists), key=lambda r: r.formula_vs_oracle_err)
        print(f"  worst trial: {worst.spec}")


if __name__ == "__main__":
    main()
