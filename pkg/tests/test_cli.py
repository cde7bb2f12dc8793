import json

import pytest

from permwit.cli import main
from permwit.groupfile import format_groups
from permwit.witness import construct_witness


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    return code, payload, captured.err


def witness_file(tmp_path, n, p, mutate=None):
    w = construct_witness(n, p)
    groups = [w.G, w.N1, w.N2]
    if mutate:
        groups = mutate(w, groups)
    path = tmp_path / f"w{n}.grp"
    path.write_text(format_groups(groups))
    return str(path)


class TestWitnessCommand:
    def test_degree_nine_auto_prime(self, capsys):
        code, payload, err = run_cli(capsys, "witness", "9")
        assert code == 0
        assert payload["p"] == 3 and payload["i"] == 4
        assert payload["report"]["passed"] is True
        assert "all clauses pass" in err

    def test_explicit_prime(self, capsys):
        code, payload, _ = run_cli(capsys, "witness", "100", "--prime", "5")
        assert code == 0 and payload["p"] == 5

    def test_no_valid_prime_is_input_error(self, capsys):
        code, payload, err = run_cli(capsys, "witness", "15")
        assert code == 2 and payload is None
        assert "no witness of degree 15 exists" in err

    def test_unknown_degree_message(self, capsys):
        code, _, err = run_cli(capsys, "witness", "7")
        assert code == 2
        assert "unknown" in err

    def test_invalid_prime_is_input_error(self, capsys):
        code, _, err = run_cli(capsys, "witness", "9", "--prime", "5")
        assert code == 2 and "hypothesis fails" in err


class TestVerifyCommand:
    def test_valid_triple(self, capsys, tmp_path):
        path = witness_file(tmp_path, 6, 2)
        code, payload, _ = run_cli(capsys, "verify", path)
        assert code == 0
        assert payload["report"]["passed"] is True
        assert payload["orders"] == {"G": 12, "N1": 6, "N2": 6}

    def test_n2_equal_n1_fails_clause_c(self, capsys, tmp_path):
        path = witness_file(tmp_path, 6, 2,
                            mutate=lambda w, groups: [w.G, w.N1, w.N1])
        code, payload, _ = run_cli(capsys, "verify", path)
        assert code == 1
        assert payload["report"]["clauses"]["c"]["ok"] is False

    def test_malformed_file_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "bad.grp"
        path.write_text("degree: 6\n(1 2\n---\ndegree: 6\n---\ndegree: 6\n")
        code, payload, err = run_cli(capsys, "verify", str(path))
        assert code == 2 and payload is None
        assert "line 2" in err

    def test_missing_file(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "/nonexistent/file.grp")
        assert code == 2


class TestCensusCommand:
    def test_degree_five(self, capsys):
        code, payload, err = run_cli(capsys, "census", "5")
        assert code == 0
        assert payload["entry_count"] == 5
        assert payload["orders"] == [5, 10, 20, 60, 120]
        assert payload["passed"] is True
        assert "5 classes" in err

    def test_out_of_budget(self, capsys):
        code, _, err = run_cli(capsys, "census", "11")
        assert code == 2 and "deep" in err


class TestEmbedCommand:
    def test_degree_21(self, capsys, tmp_path):
        path = witness_file(tmp_path, 21, 3)
        code, payload, _ = run_cli(capsys, "embed", path)
        assert code == 0
        assert payload["p"] == 3 and payload["q"] == 7
        conds = payload["conditions"]
        assert conds["n1_transitive_on_pairs"] is True
        assert conds["n2_in_top_kernel"] is True
        assert conds["n2_projections_transitive"] == [True, True, True]
        first_image = payload["generator_images"][0]["image"]
        assert first_image.startswith("top=(") and "base=[" in first_image

    def test_bad_shape_is_input_error(self, capsys, tmp_path):
        path = witness_file(tmp_path, 8, 2)  # 2 blocks of composite size 4
        code, _, err = run_cli(capsys, "embed", path)
        assert code == 2 and "prime" in err


class TestRefuteCommand:
    def test_small_run_consistent(self, capsys):
        code, payload, err = run_cli(
            capsys, "refute", "3", "5", "--samples", "200", "--seed", "1")
        assert code == 0
        assert payload["verdict"] == "consistent"
        assert payload["counterexamples_found"] == 0
        assert payload["samples_tested"] == 200
        assert payload["seed"] == 1
        assert all(payload["census_verdicts"].values())
        assert "consistent" in err

    def test_hypothesis_error_points_to_witness(self, capsys):
        code, _, err = run_cli(capsys, "refute", "2", "5")
        assert code == 2
        assert "witness 10" in err

    def test_deterministic_output_byte_for_byte(self, capsys):
        code1 = main(["refute", "3", "5", "--samples", "150", "--seed", "9"])
        out1 = capsys.readouterr().out
        code2 = main(["refute", "3", "5", "--samples", "150", "--seed", "9"])
        out2 = capsys.readouterr().out
        assert code1 == code2 == 0
        assert out1 == out2
        assert "elapsed" not in out1  # timing goes to stderr only

    def test_out_of_budget_q(self, capsys):
        code, _, _ = run_cli(capsys, "refute", "3", "11")
        assert code == 2


class TestExitCodeSeparation:
    def test_math_failure_vs_input_error(self, capsys, tmp_path):
        bad_math = witness_file(tmp_path, 6, 2,
                                mutate=lambda w, groups: [w.G, w.N1, w.N1])
        assert run_cli(capsys, "verify", bad_math)[0] == 1
        bad_input = tmp_path / "broken.grp"
        bad_input.write_text("degree: -1\n")
        assert run_cli(capsys, "verify", str(bad_input))[0] == 2
