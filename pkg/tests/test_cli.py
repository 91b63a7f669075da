import json
import subprocess
import sys

import pytest

from tropvol import errors
from tropvol.cli import ERROR_NAMES, main, render, run

TATE = {"g": 1, "pol": {"g": 1, "entries": [[1]]}, "base": "1 <= x <= 2",
        "lattice_map": [[{"coeffs": [1], "const": "0"}]]}


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, "--format", "json", *argv)
    return code, json.loads(out)


@pytest.fixture
def tate_file(tmp_path):
    p = tmp_path / "tate.json"
    p.write_text(json.dumps(TATE))
    return str(p)


class TestExamples:
    def test_chi_file(self, capsys, tmp_path):
        p = tmp_path / "f.txt"
        p.write_text("0 <= x\nx < 1\n")
        assert call(capsys, "chi", str(p)) == (0, "0\n", "")

    def test_rank(self, capsys):
        assert call(capsys, "rank", "[[2,1],[1,2]]") == (0, "3\n", "")

    def test_verify_tate(self, capsys, tate_file):
        code, out, err = call(capsys, "verify", tate_file)
        assert code == 0 and err == ""
        assert "vanishes: true" in out and "agree: true" in out


class TestSubcommands:
    def test_chi_dim_and_stdin(self, capsys, monkeypatch):
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO("x1 >= 0"))
        code, rep = call_json(capsys, "chi", "-", "--dim", "2")
        assert code == 0 and rep["results"]["chi"] == 1 and rep["results"]["n"] == 2

    def test_rank_hilbert_variants(self, capsys):
        _, rep = call_json(capsys, "rank", "[[2,1],[1,2]]")
        assert rep["results"]["hilbert_variant"] == "paper"
        _, rep2 = call_json(capsys, "rank", "[[2,1],[1,2]]", "--hilbert-variant", "rigidified")
        assert rep2["results"]["hilbert_polynomial"] == [0, 0, 108]
        assert rep["results"]["hilbert_polynomial"] != rep2["results"]["hilbert_polynomial"]

    def test_smith(self, capsys):
        code, out, _ = call(capsys, "smith", "[[2,4],[6,8]]")
        assert code == 0 and out.splitlines()[0] == "diagonal: 2 4"
        _, rep = call_json(capsys, "smith", "[[2,4],[6,8]]")
        r = rep["results"]
        U, A, V = r["U"], [[2, 4], [6, 8]], r["V"]
        UA = [[sum(U[i][k] * A[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        UAV = [[sum(UA[i][k] * V[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
        assert UAV == r["D"]

    def test_reduce_and_transpose(self, capsys):
        inp = json.dumps({"lattice": {"entries": [[{"coeff": "1", "exp": "2"},
                                                   {"coeff": "1", "exp": "1"}],
                                                  [{"coeff": "1", "exp": "1"},
                                                   {"coeff": "1", "exp": "1"}]]}})
        code, rep = call_json(capsys, "reduce", inp)
        assert code == 0
        res = rep["results"]
        assert set(res) >= {"E_red", "omega", "steps", "Q_red"}
        assert res["convention"] == "rows"
        _, rep_t = call_json(capsys, "reduce", inp, "--transpose-action")
        om = res["omega"]
        assert rep_t["results"]["omega"] == [list(r) for r in zip(*om)]
        assert rep_t["results"]["Q_red"] == res["Q_red"]

    def test_check_polarization(self, capsys):
        sym = json.dumps({"lattice": {"entries": [[{"coeff": "1", "exp": "1"}]]}})
        assert call(capsys, "check-polarization", sym)[:2] == (0, "true\n")
        asym = json.dumps({"lattice": {"entries": [
            [{"coeff": "1", "exp": "1"}, {"coeff": "1", "exp": "0"}],
            [{"coeff": "1", "exp": "1"}, {"coeff": "1", "exp": "1"}]]}})
        assert call(capsys, "check-polarization", asym)[:2] == (0, "false\n")

    def test_theta_reps(self, capsys):
        code, out, _ = call(capsys, "theta-reps", "[[2,0],[0,1]]", "--m", "6")
        assert code == 0 and out.splitlines()[0] == "72"
        _, rep = call_json(capsys, "theta-reps", "[[2,0],[0,1]]",
                           "--hilbert-variant", "rigidified")
        assert rep["results"]["m"] == 6 and rep["results"]["count"] == 72
        _, rep = call_json(capsys, "theta-reps", "[[2,0],[0,1]]")
        assert rep["results"]["count"] == rep["results"]["expected"] == 2

    def test_volume(self, capsys, tate_file):
        code, out, _ = call(capsys, "volume", tate_file)
        assert code == 0 and out == "direct: 0\nfubini: 0\n"
        closed = dict(TATE, fiber="closed")
        _, rep = call_json(capsys, "volume", json.dumps(closed))
        # chi'([1,2]) = 1, closed fibre chi' = 1
        assert rep["results"]["direct"] == {"poly": [1, -2, 1]}
        assert rep["results"]["agree"]


class TestErrors:
    def test_domain_error(self, capsys):
        code, out, err = call(capsys, "rank", "[[1,2],[2,4]]")
        assert code == 1 and out == ""
        assert err.startswith("error: NonInjectivePolarization")
        _, rep = call_json(capsys, "rank", "[[1,2],[2,4]]")
        assert rep["exit_code"] == 1
        assert rep["errors"][0]["name"] == "NonInjectivePolarization"

    def test_verify_failure(self, capsys):
        bad = dict(TATE, base="-1 <= x <= 1")
        code, rep = call_json(capsys, "verify", json.dumps(bad))
        assert code == 1
        assert rep["errors"][0]["name"] == "NotPositiveDefiniteAt"
        closed = dict(TATE, fiber="closed")
        code, rep = call_json(capsys, "verify", json.dumps(closed))
        assert code == 1 and rep["errors"][0]["name"] == "VanishingFailed"

    def test_malformed_json_position(self, capsys):
        code, rep = call_json(capsys, "rank", "[[2,1],\n [1 2]]")
        assert code == 2
        e = rep["errors"][0]
        assert e["name"] == "MalformedInput" and e["line"] == 2 and e["col"] == 5

    def test_malformed_formula_position(self, capsys):
        code, rep = call_json(capsys, "chi", "x1 <= 1\nx1 $ 2")
        assert code == 2 and rep["errors"][0]["line"] == 2

    def test_missing_file(self, capsys):
        code, _, err = call(capsys, "chi", "no_such_file.txt")
        assert code == 2 and "MalformedInput" in err

    def test_names_cover_errors(self):
        names = {cls.name for cls in vars(errors).values()
                 if isinstance(cls, type) and issubclass(cls, errors.TropvolError)
                 and cls is not errors.TropvolError}
        assert names <= set(ERROR_NAMES)
        assert len(set(ERROR_NAMES)) == len(ERROR_NAMES)


class TestReports:
    def test_deterministic(self, tate_file):
        a = render(*_strip(run(["--format", "json", "verify", tate_file])))
        b = render(*_strip(run(["verify", tate_file, "--format", "json"])))
        assert a[0] == b[0]

    def test_identical_runs_are_byte_identical(self, capsys, tate_file):
        first = call(capsys, "--format", "json", "volume", tate_file)
        second = call(capsys, "--format", "json", "volume", tate_file)
        assert first == second

    def test_digest_and_rationals(self, capsys):
        _, rep = call_json(capsys, "check-polarization", json.dumps(
            {"lattice": {"entries": [[{"coeff": "1", "exp": "3/2"}]]}}))
        assert len(rep["input_sha256"]) == 64
        assert rep["results"]["form"] == [["3/2"]]

    def test_timing(self, capsys):
        _, rep = call_json(capsys, "rank", "[[1]]")
        assert "timing" not in rep
        _, rep = call_json(capsys, "rank", "[[1]]", "--timing")
        assert rep["timing"]["seconds"] >= 0
        code, out, _ = call(capsys, "--timing", "rank", "[[1]]")
        assert out.splitlines()[1].startswith("time: ")

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "tropvol", "rank", "[[2,1],[1,2]]"],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout == "3\n"


def _strip(result):
    code, report, lines = result
    # argv order differs between the two runs; everything else must match
    report = dict(report, argv=None)
    return report, lines
