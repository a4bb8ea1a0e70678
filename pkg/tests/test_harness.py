import json
import math

import numpy as np
import pytest

from drazinpert.errors import MismatchWithPaper
from drazinpert.geninv import drazin
from drazinpert.harness.generate import (
    FAMILIES,
    THEOREMS,
    GenSpec,
    generate_pair,
    generate_with_retries,
    planted_index_matrix,
)
from drazinpert.harness.matio import (
    matrix_from_dict,
    matrix_to_dict,
    parse_csv,
    parse_entry,
    read_matrix,
    write_matrix,
)
from drazinpert.harness.trials import fuzz_specs, run_batch, run_trial, summarize
from drazinpert.harness.worked import DIAGONAL_GROUP_INVERSE, diagonal_pair, reproduce_examples
from drazinpert.perturb import check_t23, check_t32

CHECK = {"T2.3": check_t23, "T3.2": check_t32}


class TestGenSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"theorem": "T9"},
            {"dim": 1},
            {"dim": 17},
            {"core_dim": 0},
            {"dim": 4, "core_dim": 4},
            {"family": "dense"},
            {"seed": -1},
            {"dim": 3, "core_dim": 2, "plant_index2": True},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            GenSpec(**kwargs)

    def test_round_trip(self):
        spec = GenSpec("T3.2", 6, 2, 2**64 - 1, False, "shift", True)
        assert GenSpec(**spec.to_dict()) == spec
        assert spec.tail_dim == 4


class TestGenerator:
    @pytest.mark.parametrize("theorem", THEOREMS)
    @pytest.mark.parametrize("family", [f for f in FAMILIES if f != "worked"])
    @pytest.mark.parametrize("conjugate", [False, True])
    def test_pairs_pass_their_check(self, theorem, family, conjugate):
        stats = {}
        for seed in range(15):
            for dim, core in ((2, 1), (5, 2), (8, 3)):
                a, b, _ = generate_with_retries(GenSpec(theorem, dim, core, seed, conjugate, family), stats=stats)
                assert CHECK[theorem](a, b).all_hold
        assert stats.get("check", 0) == 0

    def test_deterministic(self):
        spec = GenSpec("T2.3", 7, 3, 99, True, "general", True)
        a1, b1 = generate_pair(spec)
        a2, b2 = generate_pair(spec)
        assert np.array_equal(a1, a2) and np.array_equal(b1, b2)
        other = generate_pair(GenSpec("T2.3", 7, 3, 100, True, "general", True))[0]
        assert not np.array_equal(a1, other)

    def test_contraction_in_range(self):
        for seed in range(20):
            rep = check_t32(*generate_pair(GenSpec("T3.2", 6, 3, seed)))
            assert 0.0 < rep.norm_value < 0.9 + 1e-9

    def test_shift_family_exceeds_older_condition(self):
        # 3x3 shift tails give a^pi b a != 0
        found = 0
        for seed in range(10):
            a, b = generate_pair(GenSpec("T2.3", 5, 2, seed, False, "shift"))
            api = drazin(a).spectral_idempotent
            found += np.abs(api @ b @ a).sum() > 1e-6
        assert found > 0

    def test_worked_family(self):
        a, b = generate_pair(GenSpec("T3.2", 4, 2, 0, False, "worked"))
        assert np.array_equal((a, b)[0], diagonal_pair()[0])
        a, b = generate_pair(GenSpec("T2.3", 4, 1, 0, False, "worked"))
        assert np.array_equal(a + b, np.diag([1.0, 0, 0, 0]))
        with pytest.raises(ValueError):
            generate_pair(GenSpec("T3.2", 5, 2, 0, False, "worked"))

    @pytest.mark.parametrize("theorem", THEOREMS)
    def test_planted_tail_not_group_invertible(self, theorem):
        for seed in range(10):
            a, b = generate_pair(GenSpec(theorem, 6, 3, seed, True, "general", True))
            assert drazin(a + b).index >= 2

    def test_planted_index_matrix(self):
        m, core = planted_index_matrix(6, 3, seed=1, core_dim=2)
        assert core == 2 and m.shape == (6, 6)
        with pytest.raises(ValueError):
            planted_index_matrix(4, 3, seed=0, core_dim=2)


class TestTrials:
    def test_worked_fixed_trial(self):
        rec = run_trial(GenSpec("T3.2", 4, 2, 0, False, "worked"))
        assert rec.ok and rec.exists
        assert rec.bound.total == pytest.approx(4.0, abs=1e-12)
        assert rec.actual_error == pytest.approx(13 / 12, abs=1e-12)
        assert rec.bound_satisfied is True
        assert rec.formula_vs_oracle_err < 1e-14

    def test_planted_trial(self):
        rec = run_trial(GenSpec("T2.3", 6, 2, 5, True, "shift", True))
        assert rec.ok and rec.exists is False
        assert rec.tail_index >= 2 and rec.sum_index >= 2
        assert rec.bound_satisfied is None
        assert rec.to_dict()["bound_satisfied"] == "NotApplicable"

    def test_failure_is_recorded(self):
        a, b = diagonal_pair()
        rec = run_trial(GenSpec("T3.2", 4, 2, 0), pair=(a, 4 * b))
        assert rec.failure.startswith("HypothesisFailed")
        assert not rec.ok

    def test_trial_deterministic(self):
        spec = GenSpec("T3.2", 7, 2, 11)
        assert json.dumps(run_trial(spec).to_dict()) == json.dumps(run_trial(spec).to_dict())

    def test_fuzz_specs(self):
        specs = fuzz_specs("T2.3", 200, seed=3)
        assert specs == fuzz_specs("T2.3", 200, seed=3)
        assert {s.dim for s in specs} == set(range(2, 9))
        assert {s.family for s in specs} == {"b4zero", "shift", "general"}
        assert 10 <= sum(s.plant_index2 for s in specs) <= 60
        assert any(s.conjugate for s in specs) and not all(s.conjugate for s in specs)
        with pytest.raises(ValueError):
            fuzz_specs("T2.3", 5, dims=(1, 4))

    def test_batch_and_summary(self):
        specs = fuzz_specs("T3.2", 24, seed=1)
        serial = run_batch(specs)
        parallel = run_batch(specs, workers=2)
        assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]
        s = summarize(serial)
        assert s.trials == 24 and s.ok == 24
        assert s.bound_violations == 0 and s.oracle_disagreements == 0
        assert s.ratio_max is None or s.ratio_max >= 1.0
        assert len(s.lines()) > 5


class TestMatrixFiles:
    def test_entries(self):
        assert parse_entry("1.5") == 1.5
        assert parse_entry("-2i") == -2j
        assert parse_entry("i") == 1j
        assert parse_entry("3-4.5i") == 3 - 4.5j
        assert parse_entry("1+i") == 1 + 1j
        assert parse_entry(" 1e-3+2e-1i ") == 1e-3 + 0.2j
        with pytest.raises(ValueError):
            parse_entry("")

    def test_json_round_trip(self, tmp_path):
        m = np.array([[1 + 2j, 0], [3, -1j]])
        path = tmp_path / "m.json"
        write_matrix(path, m)
        assert np.array_equal(read_matrix(path), m)
        doc = json.loads(path.read_text())
        assert doc["rows"] == 2 and doc["data"][0] == [1.0, 2.0]

    def test_csv(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("1, 2i\n-1+1i, 0\n")
        assert np.array_equal(read_matrix(path), np.array([[1, 2j], [-1 + 1j, 0]]))
        with pytest.raises(ValueError):
            parse_csv("1,2\n3\n")

    def test_bad_documents(self):
        with pytest.raises(ValueError):
            matrix_from_dict({"rows": 2, "cols": 2, "data": [[1, 0]]})
        with pytest.raises(ValueError):
            matrix_from_dict({"rows": 1})
        assert matrix_to_dict(np.eye(1))["data"] == [[1.0, 0.0]]


class TestReproduction:
    def test_all_pass(self):
        rep = reproduce_examples()
        assert rep.ok and not any(x.passed is None for x in rep.assertions)
        assert len(rep.assertions) >= 15

    def test_other_norm_skips_norm_dependent_values(self):
        rep = reproduce_examples("operator-inf")
        skipped = [x.name for x in rep.assertions if x.passed is None]
        assert rep.ok
        assert any("13/12" in s for s in skipped) and any("total 4" in s for s in skipped)

    def test_perturbed_pair_is_caught(self):
        a, b = diagonal_pair()
        b = b.copy()
        b[3, 3] = 3.0
        rep = reproduce_examples(diagonal=(a, b))
        assert not rep.ok
        assert any("bound terms" in x.name for x in rep.failures)
        with pytest.raises(MismatchWithPaper) as exc:
            reproduce_examples(diagonal=(a, b), strict=True)
        assert exc.value.exit_code == 4

    def test_report_dict(self):
        d = reproduce_examples().to_dict()
        assert d["ok"] and all(x["passed"] for x in d["assertions"])
        np.testing.assert_allclose(DIAGONAL_GROUP_INVERSE[2, 3], 0.25)
