"""Oracle trials: formula versus direct group inverse, plus the error bound.

A trial generates a pair, checks the hypotheses, evaluates the block formula
in both modes, compares each with ``group_inverse(a + b)`` and tests the
bound against the actual distance ``|(a+b)^# - a^d|``.  Module errors are
captured in the record; a batch never aborts on one bad trial.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import DrazinPertError
from ..geninv import drazin, group_inverse
from ..matcore import NormKind, Tolerances, norm
from ..perturb import (
    MODES,
    BoundBreakdown,
    ConditionReport,
    bound_t23,
    bound_t32,
    check_t23,
    check_t32,
    sum_group_t23,
    sum_group_t32,
)
from .generate import FAMILIES, GenSpec, generate_with_retries

HARNESS_TOL = 1e-8
BOUND_SLACK = 1e-9
PLANT_RATE = 0.15

_CHECK = {"T2.3": check_t23, "T3.2": check_t32}
_FORMULA = {"T2.3": sum_group_t23, "T3.2": sum_group_t32}
_BOUND = {"T2.3": bound_t23, "T3.2": bound_t32}


def relative_error(x, oracle) -> float:
    """``|x - oracle| / (1 + |oracle|)`` in the entrywise-l1 norm."""
    return norm(x - oracle) / (1.0 + norm(oracle))


@dataclass
class TrialRecord:
    spec: GenSpec
    conditions: ConditionReport | None = None
    exists: bool | None = None
    formula_vs_oracle_err: float | None = None
    bound: BoundBreakdown | None = None
    # None means not applicable: no group inverse or a divergent bound
    bound_satisfied: bool | None = None
    mode_errors: dict[str, float] = field(default_factory=dict)
    mode_agreement: float | None = None
    equivalence_holds: bool | None = None
    tail_index: int | None = None
    sum_index: int | None = None
    actual_error: float | None = None
    retries: int = 0
    failure: str | None = None

    @property
    def ok(self) -> bool:
        if self.failure is not None or self.equivalence_holds is False or self.bound_satisfied is False:
            return False
        if self.exists:
            return self.formula_vs_oracle_err <= HARNESS_TOL and self.mode_agreement <= HARNESS_TOL
        return True

    @property
    def ratio(self) -> float | None:
        """Bound total over actual error, when both are finite and positive."""
        if self.bound is None or not self.exists or self.actual_error is None:
            return None
        if math.isinf(self.bound.total) or self.actual_error <= 0.0:
            return None
        return self.bound.total / self.actual_error

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "ok": self.ok,
            "conditions": None if self.conditions is None else self.conditions.to_dict(),
            "exists": self.exists,
            "formula_vs_oracle_err": self.formula_vs_oracle_err,
            "mode_errors": self.mode_errors,
            "mode_agreement": self.mode_agreement,
            "equivalence_holds": self.equivalence_holds,
            "tail_index": self.tail_index,
            "sum_index": self.sum_index,
            "actual_error": self.actual_error,
            "bound": None if self.bound is None else self.bound.to_dict(),
            "bound_satisfied": "NotApplicable" if self.bound_satisfied is None else self.bound_satisfied,
            "retries": self.retries,
            "failure": self.failure,
        }


def run_trial(
    spec: GenSpec,
    norm_kind: NormKind | str = NormKind.ENTRYWISE_L1,
    tol: Tolerances | None = None,
    pair: tuple[np.ndarray, np.ndarray] | None = None,
) -> TrialRecord:
    """Run one trial; ``pair`` replaces the generated matrices when given."""
    kind = NormKind.parse(norm_kind)
    tol = tol or Tolerances()
    rec = TrialRecord(spec)
    th = spec.theorem
    try:
        if pair is None:
            a, b, rec.retries = generate_with_retries(spec, tol)
        else:
            a, b = pair
        rec.conditions = _CHECK[th](a, b, kind, tol)
        results = {m: _FORMULA[th](a, b, m, tol) for m in MODES}
        first = results[MODES[0]]
        rec.tail_index, rec.sum_index = first.tail_index, first.sum_index
        rec.exists = first.exists
        rec.equivalence_holds = all(r.equivalence_holds and r.exists == first.exists for r in results.values())
        if rec.exists:
            oracle = group_inverse(a + b, tol)
            rec.mode_errors = {m: relative_error(r.group_inv, oracle) for m, r in results.items()}
            rec.formula_vs_oracle_err = max(rec.mode_errors.values())
            rec.mode_agreement = relative_error(results["literal"].group_inv, results["block"].group_inv)
            rec.actual_error = norm(oracle - drazin(a, tol).inverse, kind)
        rec.bound = _BOUND[th](a, b, kind, tol)
        if rec.exists and not rec.bound.divergent:
            rec.bound_satisfied = rec.actual_error <= rec.bound.total + BOUND_SLACK * (1.0 + rec.bound.total)
    except DrazinPertError as exc:
        rec.failure = f"{type(exc).__name__}: {exc}"
    return rec


def fuzz_specs(
    theorem: str,
    trials: int,
    seed: int = 0,
    dims: tuple[int, int] = (2, 8),
    families: tuple[str, ...] = ("b4zero", "shift", "general"),
    plant_rate: float = PLANT_RATE,
) -> list[GenSpec]:
    """Deterministic batch of specs mixing dimensions, families, conjugation and planted tails."""
    lo, hi = dims
    if not 2 <= lo <= hi <= 16:
        raise ValueError("dims must satisfy 2 <= lo <= hi <= 16")
    for f in families:
        if f not in FAMILIES or f == "worked":
            raise ValueError(f"unsupported fuzz family {f!r}")
    out = []
    for i in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        dim = int(rng.integers(lo, hi + 1))
        core = int(rng.integers(1, dim))
        plant = dim - core >= 2 and rng.random() < plant_rate
        out.append(
            GenSpec(
                theorem=theorem,
                dim=dim,
                core_dim=core,
                seed=int(rng.integers(0, 2**63)),
                conjugate=bool(rng.random() < 0.75),
                family=str(rng.choice(families)),
                plant_index2=bool(plant),
            )
        )
    return out


def _run_packed(args):
    spec, kind, tol = args
    return run_trial(spec, kind, tol)


def run_batch(
    specs: list[GenSpec],
    norm_kind: NormKind | str = NormKind.ENTRYWISE_L1,
    tol: Tolerances | None = None,
    workers: int = 1,
) -> list[TrialRecord]:
    """Run trials in order; ``workers > 1`` spreads them over processes."""
    kind = NormKind.parse(norm_kind)
    tol = tol or Tolerances()
    jobs = [(s, kind, tol) for s in specs]
    if workers <= 1:
        return [_run_packed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_packed, jobs, chunksize=8))


@dataclass
class BatchSummary:
    trials: int
    ok: int
    failures: int
    exists: int
    planted: int
    equivalence_failures: int
    oracle_disagreements: int
    max_formula_err: float
    finite_bounds: int
    bound_violations: int
    ratio_mean: float | None
    ratio_max: float | None
    retries: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    def lines(self) -> list[str]:
        fmt = lambda v: "n/a" if v is None else f"{v:.4g}"
        return [
            f"trials               {self.trials}",
            f"ok                   {self.ok}",
            f"failed (errors)      {self.failures}",
            f"group invertible     {self.exists}",
            f"planted index-2      {self.planted}",
            f"equivalence failures {self.equivalence_failures}",
            f"oracle disagreements {self.oracle_disagreements}",
            f"max formula error    {self.max_formula_err:.3e}",
            f"finite bounds        {self.finite_bounds}",
            f"bound violations     {self.bound_violations}",
            f"bound/actual mean    {fmt(self.ratio_mean)}",
            f"bound/actual max     {fmt(self.ratio_max)}",
            f"generator retries    {self.retries}",
        ]


def summarize(records: list[TrialRecord]) -> BatchSummary:
    ratios = [r.ratio for r in records if r.ratio is not None]
    errs = [r.formula_vs_oracle_err for r in records if r.formula_vs_oracle_err is not None]
    disagree = sum(
        1 for r in records if r.exists and max(r.formula_vs_oracle_err, r.mode_agreement) > HARNESS_TOL
    )
    return BatchSummary(
        trials=len(records),
        ok=sum(r.ok for r in records),
        failures=sum(r.failure is not None for r in records),
        exists=sum(bool(r.exists) for r in records),
        planted=sum(r.spec.plant_index2 for r in records),
        equivalence_failures=sum(r.equivalence_holds is False for r in records),
        oracle_disagreements=disagree,
        max_formula_err=max(errs, default=0.0),
        finite_bounds=sum(r.bound_satisfied is not None for r in records),
        bound_violations=sum(r.bound_satisfied is False for r in records),
        ratio_mean=float(np.mean(ratios)) if ratios else None,
        ratio_max=float(np.max(ratios)) if ratios else None,
        retries=sum(r.retries for r in records),
    )
