"""Block-triangular and nilpotent-sum Drazin formulas against the direct route.

    python3 demos/lemma_suite.py --instances 50
"""

import argparse

from drazinpert.geninv import dinv
from drazinpert.harness.generate import block_triangular_instance, nilpotent_sum_instance
from drazinpert.matcore import norm
from drazinpert.perturb import lemma21_block_drazin, lemma31_qnil_sum, qnil_plus_sum_yangliu


def rel(x, y):
    return norm(x - y) / (1 + norm(y))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=50)
    args = ap.parse_args()

    worst = {"lower": 0.0, "upper": 0.0, "orthogonal": 0.0, "commuting": 0.0}
    for i in range(args.instances):
        n = 2 + i % 7
        for side in ("lower", "upper"):
            p, a, b, c = block_triangular_instance(n, i, side)
            worst[side] = max(worst[side], rel(lemma21_block_drazin(p, a, b, c, side), dinv(a + b + c)))
        a, b = nilpotent_sum_instance(n, i, "orthogonal")
        worst["orthogonal"] = max(worst["orthogonal"], rel(qnil_plus_sum_yangliu(a, b), dinv(a + b)))
        a, b = nilpotent_sum_instance(n, i, "commuting")
        worst["commuting"] = max(worst["commuting"], rel(lemma31_qnil_sum(a, b), dinv(a + b)))
    for k, v in worst.items():
        print(f"{k:<12} worst relative error {v:.2e} over {args.instances} instances")


if __name__ == "__main__":
    main()
