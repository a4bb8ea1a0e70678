"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import io
import time

import numpy as np
import pytest

from drazinpert.cli import main
from drazinpert.geninv import (
    cline_check,
    dinv,
    drazin,
    drazin_residuals,
    group_inverse,
    split_check,
)
from drazinpert.harness.generate import (
    block_triangular_instance,
    nilpotent_sum_instance,
    planted_index_matrix,
    product_instance,
    split_instance,
)
from drazinpert.harness.trials import fuzz_specs, run_batch, summarize
from drazinpert.harness.worked import DIAGONAL_GROUP_INVERSE, diagonal_pair, shift_pair
from drazinpert.matcore import norm
from drazinpert.perturb import (
    bound_t23,
    bound_t32,
    check_t23,
    check_t32,
    lemma21_block_drazin,
    lemma31_qnil_sum,
    qnil_plus_sum_yangliu,
    sum_group_t32,
)

EXACT = 1e-12
ORACLE = 1e-8


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})")
        assert ok, detail

    return emit


def rel(x, oracle):
    return norm(x - oracle) / (1.0 + norm(oracle))


def test_criterion_1_commutative_worked_pair(report):
    t0 = time.perf_counter()
    out = io.StringIO()
    code = main(["examples"], stdout=out)
    a, b = diagonal_pair()
    rep = check_t32(a, b)
    gi = group_inverse(a + b)
    formulas = [sum_group_t32(a, b, m).group_inv for m in ("block", "literal")]
    err = norm(gi - dinv(a))
    bd = bound_t32(a, b)
    elapsed = time.perf_counter() - t0
    checks = {
        "examples exit 0": code == 0,
        "|a^d b a a^d| = 1/2": abs(rep.norm_value - 0.5) <= EXACT,
        "residuals <= 1e-12": rep.all_hold and max(rep.raw.values()) <= EXACT,
        "(a+b)^# printed": np.abs(gi - DIAGONAL_GROUP_INVERSE).max() <= EXACT
        and all(np.abs(f - DIAGONAL_GROUP_INVERSE).max() <= EXACT for f in formulas),
        "error 13/12": abs(err - 13 / 12) <= EXACT,
        "terms 2,0,0,0,1,0,1,0": np.allclose(bd.values(), [2, 0, 0, 0, 1, 0, 1, 0], rtol=0, atol=EXACT),
        "total 4": abs(bd.total - 4) <= EXACT,
        "runtime < 1 s": elapsed < 1.0,
    }
    failed = [k for k, v in checks.items() if not v]
    report(1, "commutative-type worked pair", not failed,
           f"error {err:.15g}, total {bd.total:.15g}, {elapsed:.3f} s" + (f"; failed {failed}" if failed else ""))


def test_criterion_2_orthogonal_worked_pair(report):
    t0 = time.perf_counter()
    a, b = shift_pair()
    res = drazin(a)
    rep = check_t23(a, b)
    apba = res.spectral_idempotent @ b @ a
    gi = group_inverse(a + b)
    total = bound_t23(a, b).total
    elapsed = time.perf_counter() - t0
    expected = np.zeros((3, 3))
    expected[0, 2] = -1.0
    checks = {
        "hypotheses hold": rep.all_hold,
        "a^pi b a has -1 at (1,3) only": np.abs(apba - expected).max() <= EXACT,
        "(a+b)^# = 0 = a^d": np.abs(gi).max() <= EXACT and np.abs(res.inverse).max() <= EXACT,
        "bound total 0": total == 0.0,
        "runtime < 1 s": elapsed < 1.0,
    }
    failed = [k for k, v in checks.items() if not v]
    report(2, "orthogonal-type worked pair", not failed,
           f"total {total}, {elapsed:.3f} s" + (f"; failed {failed}" if failed else ""))


def test_criterion_3_drazin_axioms(report):
    t0 = time.perf_counter()
    worst, wrong_index = 0.0, 0
    for seed in range(500):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 11))
        k = int(rng.integers(0, n + 1))
        m, _ = planted_index_matrix(n, k, seed)
        res = drazin(m)
        wrong_index += res.index != k
        worst = max(worst, max(drazin_residuals(m, res.inverse, res.index).values(), default=0.0))
    elapsed = time.perf_counter() - t0
    ok = worst <= ORACLE and wrong_index == 0 and elapsed < 30
    report(3, "Drazin axioms on 500 planted matrices", ok,
           f"worst residual {worst:.2e}, wrong index {wrong_index}, {elapsed:.2f} s")


@pytest.fixture(scope="module")
def fuzz_records():
    t0 = time.perf_counter()
    records = {th: run_batch(fuzz_specs(th, 250, seed=0)) for th in ("T2.3", "T3.2")}
    return records, time.perf_counter() - t0


def test_criterion_4_formula_oracle_fuzz(report, fuzz_records):
    records, elapsed = fuzz_records
    parts, ok = [], elapsed < 60
    for th, recs in records.items():
        s = summarize(recs)
        ok &= s.trials >= 200 and s.failures == 0 and s.oracle_disagreements == 0
        ok &= s.max_formula_err <= ORACLE and s.bound_violations == 0
        parts.append(f"{th}: {s.trials} trials, max err {s.max_formula_err:.2e}, "
                     f"{s.bound_violations}/{s.finite_bounds} bound violations")
    report(4, "formula-oracle fuzz, both modes", ok, "; ".join(parts) + f"; {elapsed:.2f} s")


def test_criterion_5_existence_equivalence(report, fuzz_records):
    records, _ = fuzz_records
    planted = {th: run_batch(fuzz_specs(th, 60, seed=1, dims=(4, 8), plant_rate=1.0)) for th in records}
    parts, ok = [], True
    for th in records:
        recs = records[th] + planted[th]
        agree = sum(r.equivalence_holds is True for r in recs)
        negatives = [r for r in recs if r.spec.plant_index2]
        neg_ok = all(r.exists is False and r.tail_index >= 2 and r.sum_index >= 2 for r in negatives)
        ok &= agree == len(recs) and neg_ok and len(negatives) >= 50
        parts.append(f"{th}: {agree}/{len(recs)} agree, {len(negatives)} planted index-2")
    report(5, "existence equivalence", ok, "; ".join(parts))


def test_criterion_6_lemma_suite(report):
    n_inst = 120
    errs = {"block-triangular": 0.0, "orthogonal nilpotent sum": 0.0, "commuting nilpotent sum": 0.0}
    for i in range(n_inst):
        n = 2 + i % 7
        orientation = "lower" if i % 2 == 0 else "upper"
        p, a, b, c = block_triangular_instance(n, i, orientation)
        errs["block-triangular"] = max(errs["block-triangular"],
                                       rel(lemma21_block_drazin(p, a, b, c, orientation), dinv(a + b + c)))
        a, b = nilpotent_sum_instance(1 + i % 8, i, "orthogonal")
        errs["orthogonal nilpotent sum"] = max(errs["orthogonal nilpotent sum"],
                                               rel(qnil_plus_sum_yangliu(a, b), dinv(a + b)))
        a, b = nilpotent_sum_instance(1 + i % 8, i, "commuting")
        errs["commuting nilpotent sum"] = max(errs["commuting nilpotent sum"],
                                              rel(lemma31_qnil_sum(a, b), dinv(a + b)))
    split_ok = sum(split_check(*split_instance(2 + i % 7, i)).holds for i in range(n_inst))
    cline_ok = sum(cline_check(*product_instance(2 + i % 7, i)) for i in range(n_inst))
    ok = max(errs.values()) <= ORACLE and split_ok == n_inst and cline_ok == n_inst
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errs.items())
    report(6, f"lemma suite on {n_inst} instances each", ok,
           f"{detail}; split {split_ok}/{n_inst}, cline {cline_ok}/{n_inst}")
