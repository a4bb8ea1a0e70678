"""Group inverse of a perturbed matrix: block formula, oracle, bound and Neumann corner.

    python3 demos/perturbation_bounds.py --theorem T3.2 --dim 6 --seeds 8 --family general
"""

import argparse

from drazinpert.geninv import dinv, group_inverse
from drazinpert.harness.generate import GenSpec, generate_pair
from drazinpert.matcore import norm
from drazinpert.perturb import (
    bound_t23,
    bound_t32,
    check_t23,
    check_t32,
    neumann_corner,
    sum_group_t23,
    sum_group_t32,
)

CHECK = {"T2.3": check_t23, "T3.2": check_t32}
FORMULA = {"T2.3": sum_group_t23, "T3.2": sum_group_t32}
BOUND = {"T2.3": bound_t23, "T3.2": bound_t32}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theorem", choices=sorted(CHECK), default="T2.3")
    ap.add_argument("--dim", type=int, default=5)
    ap.add_argument("--core", type=int, default=2)
    ap.add_argument("--seeds", type=int, default=6)
    ap.add_argument("--family", choices=("b4zero", "shift", "general"), default="shift")
    args = ap.parse_args()

    print(f"{'seed':>4} {'kappa':>7} {'formula err':>12} {'actual':>10} {'bound':>10} {'neumann terms':>14}")
    for seed in range(args.seeds):
        spec = GenSpec(args.theorem, args.dim, args.core, seed, family=args.family)
        a, b = generate_pair(spec)
        rep = CHECK[args.theorem](a, b)
        res = FORMULA[args.theorem](a, b)
        if not res.exists:
            print(f"{seed:>4} {rep.norm_value:7.3f}  a + b not group invertible (sum index {res.sum_index})")
            continue
        oracle = group_inverse(a + b)
        err = norm(res.group_inv - oracle) / (1 + norm(oracle))
        actual = norm(oracle - dinv(a))
        bd = BOUND[args.theorem](a, b)
        corner, terms = neumann_corner(a, b)
        assert norm(corner - res.corner_term) <= 1e-8 * (1 + norm(corner))
        total = "Divergent" if bd.divergent else f"{bd.total:10.4g}"
        print(f"{seed:>4} {rep.norm_value:7.3f} {err:12.2e} {actual:10.4g} {total:>10} {terms:>14}")


if __name__ == "__main__":
    main()
