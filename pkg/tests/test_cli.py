import json

import pytest

from localcorrect import cli


def run(argv, capsys):
    rc = cli.main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


class TestCorrect:
    def test_clean_cube_run(self, tmp_path, capsys):
        out = tmp_path / "report.jsonl"
        rc, stdout, _ = run(
            ["correct", "--algo", "cube", "--k", "2", "--n", "8",
             "--trials", "25", "--seed", "1", "--out", str(out)],
            capsys,
        )
        assert rc == 0
        summary = json.loads(stdout)["summary"]
        assert summary["success_rate"] == 1.0
        assert len(out.read_text().splitlines()) == 26

    def test_config_error_exit_2(self, tmp_path, capsys):
        rc, _, err = run(
            ["correct", "--algo", "cube", "--k", "2", "--n", "8",
             "--corruption", "bogus", "--trials", "5", "--seed", "1",
             "--out", str(tmp_path / "x")],
            capsys,
        )
        assert rc == 2
        assert "corruption" in err

    def test_even_repeat_t_exit_2(self, tmp_path, capsys):
        rc, _, err = run(
            ["correct", "--algo", "cube", "--k", "2", "--n", "8",
             "--trials", "5", "--seed", "1", "--repeat-t", "4",
             "--out", str(tmp_path / "x")],
            capsys,
        )
        assert rc == 2
        assert "repeat_t" in err

    def test_unwritable_out_exit_1(self, tmp_path, capsys):
        rc, _, err = run(
            ["correct", "--algo", "cube", "--k", "2", "--n", "8",
             "--trials", "5", "--seed", "1",
             "--out", str(tmp_path / "missing" / "x.jsonl")],
            capsys,
        )
        assert rc == 1

    def test_unknown_algo_argparse_error(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["correct", "--algo", "quantum", "--k", "2", "--n", "8",
                      "--trials", "5", "--seed", "1", "--out", str(tmp_path / "x")])
        assert exc.value.code == 2


class TestLowerbound:
    def test_uniform_run(self, tmp_path, capsys):
        out = tmp_path / "lb.json"
        rc, stdout, _ = run(
            ["lowerbound", "--strategy", "uniform-random-queries", "--n", "40",
             "--k", "4", "--queries", "20", "--trials", "100", "--seed", "3",
             "--out", str(out)],
            capsys,
        )
        assert rc == 0
        rep = json.loads(out.read_text())
        assert rep["strategy"] == "uniform-random-queries"
        assert rep["trials"] == 100

    def test_unknown_strategy_exit_2(self, tmp_path, capsys):
        rc, _, err = run(
            ["lowerbound", "--strategy", "psychic", "--n", "40", "--k", "4",
             "--queries", "20", "--trials", "10", "--seed", "3",
             "--out", str(tmp_path / "x")],
            capsys,
        )
        assert rc == 2


class TestInfluence:
    def test_reports_fraction(self, capsys):
        rc, stdout, _ = run(["influence", "--k", "1", "--samples", "400",
                             "--seed", "5"], capsys)
        assert rc == 0
        data = json.loads(stdout)
        assert 0.4 < data["low_influence_fraction"] < 0.6


class TestAmbiguity:
    def test_n8(self, capsys):
        rc, stdout, _ = run(["ambiguity", "--n", "8"], capsys)
        assert rc == 0
        data = json.loads(stdout)
        assert data["truncated_all_identical"] is True
        assert data["layer_fraction"] == "35/128"

    def test_odd_n_exit_2(self, capsys):
        rc, _, _ = run(["ambiguity", "--n", "7"], capsys)
        assert rc == 2
