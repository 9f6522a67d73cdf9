"""Tests for the command-line interface of g2kit package."""

import json

import pytest

from g2kit.cli import RunConfig, UsageError, run, tolerance_from_env


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestConfiguration:
    """Tests for flags and environment handling."""

    def test_tolerance_default(self):
        assert tolerance_from_env({}) == 1e-7

    def test_tolerance_override(self):
        assert tolerance_from_env({"G2KIT_TOLERANCE": "1e-6"}) == 1e-6

    @pytest.mark.parametrize("raw", ["abc", "0", "-1e-7"])
    def test_bad_tolerance(self, raw):
        with pytest.raises(UsageError, match="G2KIT_TOLERANCE"):
            tolerance_from_env({"G2KIT_TOLERANCE": raw})

    def test_bad_tolerance_exits_with_usage(self, capsys):
        assert run(["table"], environ={"G2KIT_TOLERANCE": "abc"}) == 2
        assert "not a number" in capsys.readouterr().err

    def test_trials_default(self):
        assert RunConfig("sample").trials_or(100) == 100
        assert RunConfig("sample", trials=3).trials_or(100) == 3

    @pytest.mark.parametrize(
        "argv",
        [
            ["frobnicate"],
            ["sample", "--seed", "-1"],
            ["sample", "-n", "0"],
            ["verify", "rp", "--p", "1,0,0,0,0"],
            ["verify", "rp", "--p", "1/0"],
            ["axioms", "--exact", "--backend", "float"],
            ["representative", "Torus"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert run(argv, environ={}) == 2

    def test_missing_input_file(self, tmp_path, capsys):
        assert run(["classify", str(tmp_path / "absent.json")], environ={}) == 2
        assert "not found" in capsys.readouterr().err

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        assert run(["classify", str(path)], environ={}) == 2


class TestCommands:
    """Tests for the subcommands end to end."""

    def test_derivations_exact(self, tmp_path, capsys):
        out = tmp_path / "der.json"
        argv = ["derivations", "--backend", "exact", "--out", str(out)]
        assert run(argv, environ={}) == 0
        data = json.loads(out.read_text())
        assert data["dimension"] == 14
        assert data["ok"] is True
        assert "dim Der(C) = 14" in capsys.readouterr().out

    def test_axioms_exact(self, capsys):
        assert run(["axioms", "--exact", "-n", "5", "--seed", "3"], environ={}) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["context"]["backend"] == "exact"
        assert data["checks"] == 5 * len(data["laws"])

    def test_table(self, capsys):
        assert run(["table"], environ={}) == 0
        out = capsys.readouterr().out
        assert "U(2) x| Z/2" in out
        assert len(out.strip().splitlines()) == 8

    def test_representative_then_classify(self, tmp_path, capsys):
        rep = tmp_path / "rep.json"
        assert run(["representative", "TorusExt", "--out", str(rep)], environ={}) == 0
        capsys.readouterr()
        assert run(["classify", str(rep)], environ={}) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["type"] == "TorusExt"
        assert (data["measured_dim"], data["full_dim"]) == (2, 4)
        assert data["witness"] is not None

    def test_classify_su3_input(self, tmp_path, capsys):
        rep = tmp_path / "rep.json"
        assert run(["representative", "U2Type", "--out", str(rep)], environ={}) == 0
        capsys.readouterr()
        su3 = json.loads(rep.read_text())["su3"]
        assert len(su3) == 3
        path = write_json(tmp_path / "su3.json", {"su3": su3})
        assert run(["classify", path], environ={}) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["type"] == "U2Type"
        assert data["measured_dim"] == 4

    def test_centralizer(self, tmp_path, capsys):
        rep = tmp_path / "rep.json"
        run(["representative", "SU3Type", "--out", str(rep)], environ={})
        capsys.readouterr()
        assert run(["centralizer", str(rep)], environ={}) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["measured_dim"] == data["expected_dim"] == 8
        assert data["centralizer"] == "SU(3)"

    def test_non_automorphism_fails_the_check(self, tmp_path, capsys):
        matrix = [[int(i == j) for j in range(8)] for i in range(8)]
        matrix[2][2] = 3
        path = write_json(tmp_path / "bad.json", {"matrix": matrix})
        assert run(["classify", path], environ={}) == 1
        captured = capsys.readouterr()
        assert json.loads(captured.out)["error"] == "NotAutomorphism"
        assert "Check failed" in captured.err

    def test_verify_rp(self, capsys):
        assert run(["verify", "rp", "-n", "60", "--seed", "2"], environ={}) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["commuting"] > 0
        assert data["non_commuting"] > 0

    def test_verify_rp_norm_not_one(self, capsys):
        assert run(["verify", "rp", "--p", "1,1"], environ={}) == 1
        assert json.loads(capsys.readouterr().out)["error"] == "NormNotOne"

    def test_verify_involution(self, capsys):
        assert run(["verify", "involution", "-n", "5"], environ={}) == 0
        data = json.loads(capsys.readouterr().out)
        assert (data["measured_dim"], data["full_dim"]) == (4, 6)
        assert data["product_commute"] == data["trials"] == 5

    def test_sample_is_reproducible(self, tmp_path, capsys):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        for out in (first, second):
            argv = ["sample", "-n", "3", "--seed", "4", "--out", str(out)]
            assert run(argv, environ={}) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_extend_iso(self, tmp_path, capsys):
        e = [[int(i == k) for i in range(8)] for k in range(8)]
        path = write_json(
            tmp_path / "iso.json",
            {
                "context": {"backend": "exact"},
                "source_basis": [e[0], e[3]],
                "target_basis": [e[0], e[5]],
                "map": [[1, 0], [0, 1]],
            },
        )
        assert run(["extend-iso", path], environ={}) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["certified"] is True
        assert data["iso"]["map"] == [["1", "0"], ["0", "1"]]
        assert [row[3] for row in data["matrix"]] == [
            "0",
            "0",
            "0",
            "0",
            "0",
            "1",
            "0",
            "0",
        ]
