import json

import pytest

from tensorstable.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestClassify:
    def test_boundary_map(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--lambda", "1,0.707107,0,0.707107"
        )
        assert code == 0
        data = json.loads(out)
        assert data["report"]["positive"] is True
        assert data["report"]["cp"] is False
        # the rounded input sits within 1e-6 of the stability boundary
        assert abs(data["criteria"]["2tsp"]["worst_slack"]) < 1e-5
        assert data["criteria"]["3tsp"]["satisfied"] is False

    def test_three_component_lambda(self, capsys):
        code, out, _ = run(capsys, "classify", "--lambda", "0.5,0.5,0.5")
        data = json.loads(out)
        assert code == 0
        assert data["map"]["lambda"] == [1.0, 0.5, 0.5, 0.5]
        assert data["report"]["cp"] is True

    def test_translated_family(self, capsys):
        code, out, _ = run(capsys, "classify", "--lambda", "0,0,0", "--t", "0.8")
        data = json.loads(out)
        assert code == 0
        assert data["map"]["t"] == [0.0, 0.0, 0.8]
        assert data["criteria"]["positive_family"]["satisfied"] is True
        assert data["criteria"]["2tsp"]["satisfied"] is True
        assert data["criteria"]["ghz_output"]["satisfied"] is True

    def test_map_file(self, capsys, tmp_path):
        path = tmp_path / "map.json"
        path.write_text('{"lambda": [1.0, 0.2, 0.2, 0.2]}')
        code, out, _ = run(capsys, "classify", "--map", str(path))
        assert code == 0
        assert json.loads(out)["report"]["eb"] is True

    def test_map_file_with_translation(self, capsys, tmp_path):
        path = tmp_path / "map.json"
        path.write_text('{"lambda": [1.0, 0.1, 0.1, 0.1], "t": [0.0, 0.0, 0.5]}')
        code, out, _ = run(capsys, "classify", "--map", str(path))
        assert code == 0
        data = json.loads(out)
        assert data["map"]["t"] == [0.0, 0.0, 0.5]
        assert data["criteria"]["positive_family"]["satisfied"] is True
        assert data["report"]["positivity_method"] == "nonunital-closed-form"

    def test_map_file_general_translation_skips_family_criteria(self, capsys, tmp_path):
        path = tmp_path / "map.json"
        path.write_text('{"lambda": [1.0, 0.1, 0.1, 0.1], "t": [0.2, 0.0, 0.1]}')
        code, out, _ = run(capsys, "classify", "--map", str(path))
        assert code == 0
        data = json.loads(out)
        assert "positive_family" not in data["criteria"]
        assert data["report"]["positivity_method"] == "numeric-block-positivity"

    def test_missing_input_is_domain_error(self, capsys):
        code, _, err = run(capsys, "classify")
        assert code == 2
        assert "domain error" in err

    def test_malformed_lambda(self, capsys):
        code, _, err = run(capsys, "classify", "--lambda", "1,2")
        assert code == 1

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(
            capsys, "classify", "--lambda", "0.5,0.5,0.5", "--out", str(target)
        )
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["report"]["cp"] is True


class TestRegion:
    def test_csv_output(self, capsys, tmp_path):
        target = tmp_path / "region.csv"
        code, _, _ = run(
            capsys,
            "region",
            "--criterion",
            "depolarizing",
            "--grid",
            "9",
            "--format",
            "csv",
            "--out",
            str(target),
        )
        assert code == 0
        lines = target.read_text().strip().split("\n")
        assert lines[0] == "q1,q2,analytic,oracle,flag"
        assert len(lines) == 82
        for line in lines[1:]:
            q1, q2, analytic, _, _ = line.split(",")
            assert (float(q1) * float(q2) >= -1 / 3) == (analytic == "1")

    def test_byte_identical_reruns(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["region", "--criterion", "depolarizing", "--grid", "7",
                "--format", "csv", "--seed", "5"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        capsys.readouterr()
        assert out1.read_bytes() == out2.read_bytes()

    def test_env_seed_override(self, capsys, tmp_path, monkeypatch):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        args = ["region", "--criterion", "depolarizing", "--grid", "5"]
        monkeypatch.setenv("TSP_SEED", "9")
        assert main(args + ["--seed", "1", "--out", str(out1)]) == 0
        monkeypatch.delenv("TSP_SEED")
        assert main(args + ["--seed", "9", "--out", str(out2)]) == 0
        capsys.readouterr()
        assert out1.read_text() == out2.read_text()

    def test_unknown_criterion_is_usage_error(self, capsys):
        code, _, err = run(capsys, "region", "--criterion", "nope")
        assert code == 1


class TestVerify:
    def test_summary(self, capsys):
        code, out, _ = run(capsys, "verify", "--criterion", "depolarizing", "--grid", "9")
        assert code == 0
        data = json.loads(out)
        assert data["summary"]["disagree"] == 0
        assert sum(data["summary"].values()) == 81


class TestLift:
    def test_known_constant(self, capsys):
        code, out, _ = run(capsys, "lift", "--lambda", "1,0,1", "--n", "1")
        assert code == 0
        data = json.loads(out)
        assert data["lambda_tilde"][0] == pytest.approx(0.63, abs=0.005)
        assert data["x_max"] == pytest.approx(0.35355, abs=1e-4)

    def test_domain_error_exit(self, capsys):
        code, _, err = run(capsys, "lift", "--lambda", "0.1,0.1,0.1", "--n", "1")
        assert code == 2
        assert "domain error" in err


class TestReduce:
    def test_unital_ratios(self, capsys):
        code, out, _ = run(capsys, "reduce", "--lambda", "0.3,-0.5,0.7", "--t", "0")
        assert code == 0
        data = json.loads(out)
        assert data["tilde_ratio"] == pytest.approx([0.3, -0.5, 0.7], abs=1e-12)

    def test_exterior_is_domain_error(self, capsys):
        code, _, err = run(capsys, "reduce", "--lambda", "0,0,0.5", "--t", "0.9")
        assert code == 2


class TestWitness:
    def test_ghz_depth_two(self, capsys):
        code, out, _ = run(
            capsys, "witness", "--family", "ghz", "--n", "1", "--steps", "11"
        )
        assert code == 0
        data = json.loads(out)
        assert data["q_star"] == pytest.approx(0.25, abs=0.02)
        assert data["witness"] is not None

    def test_usage_error(self, capsys):
        code, _, _ = run(capsys, "witness", "--family", "ghz", "--n", "5")
        assert code == 1
