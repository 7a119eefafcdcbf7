import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from wabl.cli import main

DATA = Path(__file__).parent / "data"
DISCRETE = str(DATA / "discrete_example.json")
WEIGHTS = str(DATA / "level_weights.json")
TRAPEZOID = str(DATA / "trapezoid_example.json")
RANK_PAIR = str(DATA / "rank_pair.json")
MIXED = str(DATA / "mixed.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out), err


class TestCompute:
    def test_discrete_value(self, capsys):
        code, out, err = run(
            capsys, "compute", DISCRETE, "--c", "0.2", "--weights", WEIGHTS
        )
        assert code == 0
        assert err == ""
        line = out.splitlines()[1].split()
        assert line[0] == "A"
        assert line[2] == "1.3"
        assert line[3] == "summation"

    def test_discrete_machine(self, capsys):
        code, doc, _ = run_json(
            capsys, "compute", DISCRETE, "--c", "0.2", "--weights", WEIGHTS
        )
        assert code == 0
        record = doc["records"][0]
        assert record["wabl"] == pytest.approx(1.3, abs=1e-12)
        assert record["path"] == "summation"
        assert "breakdown" not in record

    def test_discrete_verbose_breakdown(self, capsys):
        code, doc, _ = run_json(
            capsys, "compute", DISCRETE, "--c", "0.2", "--weights", WEIGHTS,
            "--verbose",
        )
        assert code == 0
        breakdown = doc["records"][0]["breakdown"]
        assert [term["mean"] for term in breakdown] == pytest.approx(
            [-0.6, 1.0, 1.8, 1.6, 2.0], abs=1e-12
        )
        assert [term["level"] for term in breakdown] == [0.1, 0.4, 0.5, 0.7, 1.0]
        assert all(term["native_level"] for term in breakdown)

    def test_verbose_flags_foreign_levels(self, capsys, tmp_path):
        weights = tmp_path / "w.json"
        weights.write_text(json.dumps([[0.3, 0.5], [1.0, 0.5]]))
        code, doc, _ = run_json(
            capsys, "compute", DISCRETE, "--c", "0.2",
            "--weights", str(weights), "--verbose",
        )
        assert code == 0
        breakdown = doc["records"][0]["breakdown"]
        assert [term["native_level"] for term in breakdown] == [False, True]

    def test_trapezoid_uniform(self, capsys):
        code, out, _ = run(
            capsys, "compute", TRAPEZOID, "--c", "0.8", "--k", "0", "--t", "4"
        )
        assert code == 0
        fields = out.splitlines()[1].split()
        assert fields[2] == "17.6"
        assert fields[3] == "closed-constant"

    def test_trapezoid_force_summation(self, capsys):
        code, doc, _ = run_json(
            capsys, "compute", TRAPEZOID, "--c", "0.8", "--k", "0", "--t", "4",
            "--force-summation",
        )
        assert code == 0
        record = doc["records"][0]
        assert record["path"] == "summation"
        assert record["wabl"] == pytest.approx(17.6, abs=1e-12)

    def test_triangle_symmetric_neutral(self, capsys, tmp_path):
        doc_path = tmp_path / "tri.json"
        doc_path.write_text(json.dumps({
            "records": [{"id": "T", "type": "triangle", "params": [0, 1, 2]}]
        }))
        code, doc, _ = run_json(
            capsys, "compute", str(doc_path), "--c", "0.5", "--k", "0", "--t", "4"
        )
        assert code == 0
        assert doc["records"][0]["wabl"] == pytest.approx(1.0, abs=1e-12)

    def test_text_and_machine_carry_same_values(self, capsys):
        _, text_out, _ = run(
            capsys, "compute", RANK_PAIR, "--c", "0.8", "--k", "1", "--t", "4"
        )
        _, doc, _ = run_json(
            capsys, "compute", RANK_PAIR, "--c", "0.8", "--k", "1", "--t", "4"
        )
        text_values = [line.split()[2] for line in text_out.splitlines()[1:]]
        machine_values = [format(r["wabl"], ".10g") for r in doc["records"]]
        assert text_values == machine_values

    def test_round_trip_is_bit_identical(self, capsys, tmp_path):
        args = ("--c", "0.8", "--k", "1", "--t", "4", "--format", "machine")
        code = main(["compute", RANK_PAIR, *args])
        first = capsys.readouterr().out
        echo = tmp_path / "echo.json"
        echo.write_text(first)
        code = main(["compute", str(echo), *args])
        second = capsys.readouterr().out
        assert code == 0
        first_doc = json.loads(first)
        second_doc = json.loads(second)
        assert first_doc == second_doc
        for a, b in zip(first_doc["records"], second_doc["records"]):
            assert math.isclose(a["wabl"], b["wabl"], rel_tol=0.0, abs_tol=0.0)

    def test_partial_failure_reports_all_and_keeps_going(self, capsys, tmp_path):
        doc_path = tmp_path / "broken.json"
        doc_path.write_text(json.dumps({"records": [
            {"id": "ok", "type": "trapezoid", "params": [0, 1, 1, 2]},
            {"id": "bad-params", "type": "trapezoid", "params": [2, 1, 1, 0]},
            {"id": "bad-type", "type": "gaussian", "params": [0, 1]},
        ]}))
        code, out, err = run(
            capsys, "compute", str(doc_path), "--c", "0.5", "--k", "0", "--t", "4"
        )
        assert code == 1
        assert "ok" in out
        assert "bad-params" in err
        assert "bad-type" in err

    def test_empty_cut_is_a_computation_error(self, capsys, tmp_path):
        doc_path = tmp_path / "subnormal.json"
        doc_path.write_text(json.dumps({"records": [
            {"id": "shallow", "type": "discrete", "points": [[1, 0.25], [2, 0.5]]},
        ]}))
        weights = tmp_path / "w.json"
        weights.write_text(json.dumps([[0.9, 1.0]]))
        code, out, err = run(
            capsys, "compute", str(doc_path), "--c", "0.5", "--weights", str(weights)
        )
        assert code == 2
        assert "shallow" in err
        assert "0.9" in err

    def test_discrete_needs_weights(self, capsys):
        code, _, err = run(
            capsys, "compute", DISCRETE, "--c", "0.2", "--k", "0", "--t", "4"
        )
        assert code == 1
        assert "--weights" in err

    def test_trapezoid_needs_pattern(self, capsys):
        code, _, err = run(
            capsys, "compute", TRAPEZOID, "--c", "0.8", "--weights", WEIGHTS
        )
        assert code == 1
        assert "--k" in err


class TestConfigValidation:
    def test_rejects_both_sources(self, capsys):
        code, _, err = run(
            capsys, "compute", TRAPEZOID, "--c", "0.5", "--k", "0", "--t", "4",
            "--weights", WEIGHTS,
        )
        assert code == 1
        assert "not both" in err

    def test_rejects_no_source(self, capsys):
        code, _, err = run(capsys, "compute", TRAPEZOID, "--c", "0.5")
        assert code == 1

    def test_rejects_k_without_t(self, capsys):
        code, _, err = run(capsys, "compute", TRAPEZOID, "--c", "0.5", "--k", "1")
        assert code == 1
        assert "together" in err

    @pytest.mark.parametrize("c", ["-0.1", "1.5", "nan"])
    def test_rejects_c_outside_unit(self, capsys, c):
        code, _, err = run(
            capsys, "compute", TRAPEZOID, "--c", c, "--k", "0", "--t", "4"
        )
        assert code == 1
        assert "--c" in err

    def test_missing_c_is_usage_error(self, capsys):
        code, _, err = run(capsys, "compute", TRAPEZOID, "--k", "0", "--t", "4")
        assert code == 1

    def test_rejects_t_zero(self, capsys):
        code, _, err = run(
            capsys, "compute", TRAPEZOID, "--c", "0.5", "--k", "0", "--t", "0"
        )
        assert code == 1

    def test_invalid_json_reports_position(self, capsys, tmp_path):
        doc_path = tmp_path / "broken.json"
        doc_path.write_text('{"records": [\n  {"id": }\n]}')
        code, _, err = run(
            capsys, "compute", str(doc_path), "--c", "0.5", "--k", "0", "--t", "4"
        )
        assert code == 1
        assert "line 2" in err

    def test_missing_file(self, capsys):
        code, _, err = run(
            capsys, "compute", "no-such-file.json", "--c", "0.5", "--k", "0",
            "--t", "4",
        )
        assert code == 1

    def test_duplicate_ids_rejected(self, capsys, tmp_path):
        doc_path = tmp_path / "dups.json"
        doc_path.write_text(json.dumps({"records": [
            {"id": "A", "type": "trapezoid", "params": [0, 1, 1, 2]},
            {"id": "A", "type": "trapezoid", "params": [0, 1, 1, 2]},
        ]}))
        code, _, err = run(
            capsys, "compute", str(doc_path), "--c", "0.5", "--k", "0", "--t", "4"
        )
        assert code == 1
        assert "duplicate" in err

    def test_weights_file_bad_total(self, capsys, tmp_path):
        weights = tmp_path / "w.json"
        weights.write_text(json.dumps([[0.5, 0.6], [1.0, 0.6]]))
        code, _, err = run(
            capsys, "compute", DISCRETE, "--c", "0.2", "--weights", str(weights)
        )
        assert code == 1
        assert "1.2" in err

    def test_weights_file_unsorted_levels(self, capsys, tmp_path):
        weights = tmp_path / "w.json"
        weights.write_text(json.dumps([[0.9, 0.5], [0.5, 0.5]]))
        code, _, err = run(
            capsys, "compute", DISCRETE, "--c", "0.2", "--weights", str(weights)
        )
        assert code == 1
        assert "increasing" in err


class TestRank:
    def test_pair(self, capsys):
        code, out, _ = run(
            capsys, "rank", RANK_PAIR, "--c", "0.8", "--k", "0", "--t", "4"
        )
        assert code == 0
        lines = [line.split() for line in out.splitlines()[1:]]
        assert [line[1] for line in lines] == ["A", "B"]
        assert [line[0] for line in lines] == ["1", "2"]

    def test_single_record(self, capsys, tmp_path):
        doc_path = tmp_path / "one.json"
        doc_path.write_text(json.dumps({"records": [
            {"id": "only", "type": "trapezoid", "params": [0, 1, 1, 2]},
        ]}))
        code, doc, _ = run_json(
            capsys, "rank", str(doc_path), "--c", "0.5", "--k", "0", "--t", "4"
        )
        assert code == 0
        assert doc["ranking"] == [
            {"rank": 1, "id": "only", "wabl": doc["ranking"][0]["wabl"]}
        ]

    def test_identical_records_share_rank(self, capsys, tmp_path):
        doc_path = tmp_path / "twins.json"
        doc_path.write_text(json.dumps({"records": [
            {"id": "X", "type": "trapezoid", "params": [0, 1, 1, 2]},
            {"id": "Y", "type": "trapezoid", "params": [0, 1, 1, 2]},
        ]}))
        code, doc, _ = run_json(
            capsys, "rank", str(doc_path), "--c", "0.5", "--k", "0", "--t", "4"
        )
        assert code == 0
        assert [(e["rank"], e["id"]) for e in doc["ranking"]] == [(1, "X"), (1, "Y")]

    def test_mixed_document_cannot_rank_in_one_run(self, capsys):
        code, _, err = run(capsys, "rank", MIXED, "--c", "0.5", "--k", "0", "--t", "4")
        assert code == 1
        assert "mixed" in err

    def test_discrete_only_rank(self, capsys, tmp_path):
        doc_path = tmp_path / "discretes.json"
        doc_path.write_text(json.dumps({"records": [
            {"id": "narrow", "type": "discrete", "points": [[1, 0.5], [2, 1.0]]},
            {"id": "high", "type": "discrete", "points": [[8, 0.5], [9, 1.0]]},
        ]}))
        code, doc, _ = run_json(
            capsys, "rank", str(doc_path), "--c", "0.5", "--weights", WEIGHTS
        )
        assert code == 0
        assert [e["id"] for e in doc["ranking"]] == ["high", "narrow"]


class TestVerify:
    def test_uniform_paths_agree(self, capsys):
        code, doc, _ = run_json(
            capsys, "verify", TRAPEZOID, "--c", "0.8", "--k", "0", "--t", "4"
        )
        assert code == 0
        checks = doc["records"][0]["checks"]
        assert checks["closed_form"] == pytest.approx(17.6, abs=1e-12)
        assert checks["summation"] == pytest.approx(17.6, abs=1e-12)
        assert checks["within_tolerance"] is True
        assert "erratum" not in doc["records"][0]

    def test_linear_case_demonstrates_erratum(self, capsys):
        code, doc, _ = run_json(
            capsys, "verify", TRAPEZOID, "--c", "0.8", "--k", "1", "--t", "4"
        )
        assert code == 0
        record = doc["records"][0]
        assert record["checks"]["closed_form"] == pytest.approx(16.2, abs=1e-12)
        assert record["checks"]["summation"] == pytest.approx(16.2, abs=1e-12)
        assert record["erratum"]["published_value"] == 19.9
        assert record["erratum"]["computed_value"] == pytest.approx(16.2, abs=1e-12)

    def test_erratum_note_in_text_mode(self, capsys):
        code, out, _ = run(
            capsys, "verify", TRAPEZOID, "--c", "0.8", "--k", "1", "--t", "4"
        )
        assert code == 0
        assert "19.9" in out
        assert "16.2" in out
        assert "erratum" in out

    def test_no_erratum_note_for_other_configs(self, capsys):
        code, out, _ = run(
            capsys, "verify", TRAPEZOID, "--c", "0.8", "--k", "2", "--t", "4"
        )
        assert code == 0
        assert "erratum" not in out

    def test_crisp_record(self, capsys, tmp_path):
        doc_path = tmp_path / "crisp.json"
        doc_path.write_text(json.dumps({"records": [
            {"id": "five", "type": "trapezoid", "params": [5, 5, 5, 5]},
        ]}))
        code, doc, _ = run_json(
            capsys, "verify", str(doc_path), "--c", "0.3", "--k", "1", "--t", "7"
        )
        assert code == 0
        checks = doc["records"][0]["checks"]
        for key in ("closed_form", "summation", "continuous_closed",
                    "continuous_quadrature"):
            assert checks[key] == pytest.approx(5.0, abs=1e-12)

    def test_rejects_discrete_records(self, capsys):
        code, _, err = run(
            capsys, "verify", DISCRETE, "--c", "0.2", "--k", "0", "--t", "4"
        )
        assert code == 1
        assert "trapezoid" in err

    def test_rejects_explicit_weights(self, capsys):
        code, _, err = run(capsys, "verify", TRAPEZOID, "--c", "0.2",
                           "--weights", WEIGHTS)
        assert code == 1
        assert "pattern" in err

    def test_rejects_large_k(self, capsys):
        code, _, err = run(
            capsys, "verify", TRAPEZOID, "--c", "0.2", "--k", "3", "--t", "4"
        )
        assert code == 1
        assert "k" in err


class TestWeightsCommand:
    def test_linear_table(self, capsys):
        code, out, _ = run(capsys, "weights", "--c", "0.5", "--k", "1", "--t", "4")
        assert code == 0
        assert "Q=10" in out
        masses = [line.split()[3] for line in out.splitlines()[2:]]
        assert masses == ["0", "0.1", "0.2", "0.3", "0.4"]

    def test_uniform_table(self, capsys):
        code, doc, _ = run_json(capsys, "weights", "--c", "0.5", "--k", "0", "--t", "4")
        assert code == 0
        assert doc["q_total"] == 5
        assert [row["mass"] for row in doc["rows"]] == [0.2] * 5

    def test_quadratic_table(self, capsys):
        code, doc, _ = run_json(capsys, "weights", "--c", "0.5", "--k", "2", "--t", "4")
        assert code == 0
        assert doc["q_total"] == 30
        assert [row["mass"] for row in doc["rows"]] == pytest.approx(
            [0.0, 1 / 30, 4 / 30, 9 / 30, 16 / 30], abs=0
        )
        assert [row["q"] for row in doc["rows"]] == [0, 1, 4, 9, 16]

    def test_needs_pattern_source(self, capsys):
        code, _, err = run(capsys, "weights", "--c", "0.5", "--weights", WEIGHTS)
        assert code == 1


class TestProcessInvocation:
    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "wabl", "weights", "--c", "0.5", "--k", "1",
             "--t", "4"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "Q=10" in proc.stdout

    def test_usage_error_exits_one(self):
        proc = subprocess.run(
            [sys.executable, "-m", "wabl", "compute"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 1
