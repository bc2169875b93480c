import json

import pytest

from diagforge.cli import main


def run(tmp_path, problem, *args):
    inp = tmp_path / "problem.json"
    out = tmp_path / "result.json"
    inp.write_text(json.dumps(problem))
    code = main([args[0], "--input", str(inp), "--output", str(out),
                 *args[1:]])
    return code, json.loads(out.read_text()), out.read_text()


class TestClassify:
    def test_narrow_wedge(self, tmp_path):
        code, doc, _ = run(tmp_path, {"spectrum": [5, -1, -2]}, "classify")
        assert code == 0
        assert doc["status"] == "ok"
        assert doc["class"] == "SuleimanovaF"
        assert doc["flags"] == ["F", "F"]
        assert doc["perron"] == 5

    def test_outside_is_still_a_classification(self, tmp_path):
        code, doc, _ = run(tmp_path, {"spectrum": [5, -1, 2]}, "classify")
        assert code == 0
        assert doc["class"] == "Outside"

    def test_complex_entries(self, tmp_path):
        problem = {"spectrum": [7, -1, [-2, 3], [-2, -3]]}
        code, doc, _ = run(tmp_path, problem, "classify")
        assert code == 0
        assert doc["class"] == "Mixed"
        assert doc["flags"] == ["F", "G-F", "G-F"]

    def test_dominance_failure_is_infeasible(self, tmp_path):
        problem = {"spectrum": [3, [-2, 3], [-2, -3]]}
        code, doc, _ = run(tmp_path, problem, "classify")
        assert code == 3
        assert doc["status"] == "infeasible"
        assert doc["condition"] == "perron-dominance"


class TestRealizeNonnegative:
    PROBLEM = {
        "spectrum": [7, -1, [-2, 3], [-2, -3]],
        "diagonal": [1, 1, 0, 0],
    }

    def test_exact_output_uses_rational_strings(self, tmp_path):
        code, doc, text = run(
            tmp_path, self.PROBLEM, "realize", "--order", "keep", "--exact"
        )
        assert code == 0
        assert doc["status"] == "ok"
        assert doc["matrix"][0] == [1, "54/29", "60/29", "60/29"]
        assert doc["matrix"][2] == [2, "18/5", 0, "7/5"]
        assert doc["plan"]["bridges"] == [5]
        assert doc["certificate"]["ok"] is True
        assert '"54/29"' in text

    def test_float_output_by_default(self, tmp_path):
        code, doc, _ = run(tmp_path, self.PROBLEM, "realize", "--order", "keep")
        assert code == 0
        assert doc["matrix"][0][1] == pytest.approx(54 / 29)

    def test_matrix_key_rejected(self, tmp_path):
        bad = {"matrix": [[1]], "diagonal": [1]}
        code, doc, _ = run(tmp_path, bad, "realize")
        assert code == 2
        assert doc["status"] == "error"

    def test_trace_mismatch_is_invalid_input(self, tmp_path):
        bad = dict(self.PROBLEM, diagonal=[1, 1, 1, 1])
        code, doc, _ = run(tmp_path, bad, "realize")
        assert code == 2

    def test_outside_spectrum_is_infeasible(self, tmp_path):
        bad = {"spectrum": [4, [-1, 3], [-1, -3]], "diagonal": [1, 1, 0]}
        code, doc, _ = run(tmp_path, bad, "realize")
        assert code == 3
        assert doc["condition"] == "outside-class"

    def test_exact_flag_rejects_floats(self, tmp_path):
        bad = dict(self.PROBLEM, diagonal=[1.0, 1, 0, 0])
        code, doc, _ = run(tmp_path, bad, "realize", "--exact")
        assert code == 2
        assert "not allowed with --exact" in doc["error"]

    def test_order_from_file_overridden_by_flag(self, tmp_path):
        # the file asks for caller order; the flag switches the planner,
        # visible in the recorded assignment and bridge
        problem = {
            "spectrum": [7, -1, [-2, 3], [-2, -3]],
            "diagonal": [0, 1, 0, 1],
            "order": "keep",
        }
        code, doc, _ = run(tmp_path, problem, "realize")
        assert code == 0
        assert doc["plan"]["assignment"] == [0, 1, 2, 3]
        assert doc["plan"]["bridges"] == [6.0]
        code, doc, _ = run(tmp_path, problem, "realize", "--order", "auto")
        assert code == 0
        assert doc["plan"]["assignment"] == [1, 3, 0, 2]
        assert doc["plan"]["bridges"] == [5.0]
        assert doc["diagonal"] == [0, 1, 0, 1]
        assert [doc["matrix"][i][i] for i in range(4)] == [0, 1, 0, 1]


class TestRealizeGeneral:
    def test_diagonal_matrix_correction(self, tmp_path):
        problem = {
            "mode": "general",
            "matrix": [[1, 0, 0], [0, 2, 0], [0, 0, 3]],
            "diagonal": [2, 2, 2],
        }
        code, doc, _ = run(tmp_path, problem, "realize", "--exact")
        assert code == 0
        assert doc["matrix"] == [[2, 0, -1], [0, 2, -1], [-1, 0, 2]]
        assert [s["op"] for s in doc["trace"]] == ["embed", "scale", "rank_one"]
        assert doc["certificate"]["ok"] is True

    def test_spectrum_key_rejected(self, tmp_path):
        bad = {"mode": "general", "spectrum": [1], "diagonal": [1]}
        code, _, _ = run(tmp_path, bad, "realize")
        assert code == 2

    def test_unknown_mode(self, tmp_path):
        bad = {"mode": "fast", "matrix": [[1]], "diagonal": [1]}
        code, _, _ = run(tmp_path, bad, "realize")
        assert code == 2


class TestSimilar:
    def test_general_matrix(self, tmp_path):
        problem = {
            "matrix": [[4, 1, 0], [2, -1, 3], [0, 5, 2]],
            "diagonal": [5, 1, -1],
        }
        code, doc, _ = run(tmp_path, problem, "similar")
        assert code == 0
        assert [doc["matrix"][i][i] for i in range(3)] == [5, 1, -1]
        assert doc["certificate"]["ok"] is True

    def test_missing_matrix(self, tmp_path):
        code, _, _ = run(tmp_path, {"diagonal": [1]}, "similar")
        assert code == 2


class TestVerify:
    GOOD = [[1, 2, 2], [2, 1, 2], [3, 2, 0]]  # spectrum {5,-1,-2}, CS 5

    def test_pass(self, tmp_path):
        problem = {
            "matrix": self.GOOD,
            "spectrum": [5, -1, -2],
            "diagonal": [1, 1, 0],
            "nonneg": True,
            "constant_row_sums": True,
        }
        code, doc, _ = run(tmp_path, problem, "verify")
        assert code == 0
        assert doc["status"] == "pass"
        assert all(doc["certificate"]["checks"].values())

    def test_fail_is_exit_one(self, tmp_path):
        problem = {"matrix": self.GOOD, "spectrum": [5, -1, -1]}
        code, doc, _ = run(tmp_path, problem, "verify")
        assert code == 1
        assert doc["status"] == "fail"

    def test_needs_a_target(self, tmp_path):
        code, _, _ = run(tmp_path, {"matrix": self.GOOD}, "verify")
        assert code == 2


class TestRoundTrip:
    def test_realize_then_verify(self, tmp_path):
        problem = {
            "spectrum": [7, -1, [-2, 3], [-2, -3]],
            "diagonal": [1, 1, 0, 0],
        }
        code, doc, _ = run(tmp_path, problem, "realize", "--order", "keep")
        assert code == 0
        check = {
            "matrix": doc["matrix"],
            "spectrum": problem["spectrum"],
            "diagonal": problem["diagonal"],
            "nonneg": True,
            "constant_row_sums": True,
        }
        code, doc2, _ = run(tmp_path, check, "verify")
        assert code == 0
        assert doc2["status"] == "pass"


class TestParsing:
    def test_bad_rational_string(self, tmp_path):
        code, doc, _ = run(tmp_path, {"spectrum": [5, "x/y"]}, "classify")
        assert code == 2

    def test_nonsquare_matrix(self, tmp_path):
        bad = {"matrix": [[1, 2], [3]], "diagonal": [1, 2]}
        code, _, _ = run(tmp_path, bad, "similar")
        assert code == 2

    def test_missing_input_file(self, tmp_path):
        out = tmp_path / "result.json"
        code = main(["classify", "--input", str(tmp_path / "nope.json"),
                     "--output", str(out)])
        assert code == 2

    def test_stdout_default(self, tmp_path, capsys):
        inp = tmp_path / "p.json"
        inp.write_text(json.dumps({"spectrum": [5, -1, -2]}))
        code = main(["classify", "--input", str(inp)])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["class"] == "SuleimanovaF"

    def test_rational_strings_accepted_in_input(self, tmp_path):
        problem = {"spectrum": [5, "-1/2", "-3/2"]}
        code, doc, _ = run(tmp_path, problem, "classify", "--exact")
        assert code == 0
        assert doc["tail"] == ["-1/2", "-3/2"]
