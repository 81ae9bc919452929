######################
# Test the command line front end
######################
import map_ties as mt
from map_ties.cli import EXIT_INPUT, EXIT_OK, run
import json
import pytest


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example1.json"
    mt.dump_instance(mt.example_one(), path)
    return str(path)


class Test_analyze:
    def test_one(self, example_file, capsys):
        assert run(["analyze", example_file, "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["bound_ok"] is True and data["ratio_delta_b"] == "176/147"
        assert mt.instance_from_json(data["instance"]) == mt.example_one()

    def test_two(self, example_file, capsys):
        assert run(["analyze", example_file]) == EXIT_OK
        out = capsys.readouterr().out
        assert "| delta | 176/675 |" in out and "| bound_2qn | 16 |" in out

    def test_three(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n": 2, "codewords": ["00", "11"], "p": "3/4"}))
        assert run(["analyze", str(path)]) == EXIT_INPUT
        assert "map-ties: error:" in capsys.readouterr().err

    def test_four(self, tmp_path):
        assert run(["analyze", str(tmp_path / "missing.json")]) == EXIT_INPUT


class Test_classify:
    def test_one(self, example_file, capsys):
        assert run(["classify", example_file, "--i", "1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "| 0111 | 1 | 1 | 1 | 2 | TIE | {2,3} |" in out

    def test_two(self, example_file, capsys):
        assert run(["classify", example_file, "--csv"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 17

    def test_three(self, example_file):
        assert run(["classify", example_file, "--i", "5"]) == EXIT_INPUT


class Test_partitions:
    def test_one(self, example_file, capsys):
        assert run(["partitions", example_file, "--i", "2", "--j", "1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "## atoms (i, j) = (2, 1)" in out

    def test_two(self, example_file, capsys):
        assert run(["partitions", example_file, "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert all(pair["passed"] for pair in data["pairs"])

    def test_three(self, example_file):
        assert run(["partitions", example_file, "--i", "2", "--j", "2"]) == EXIT_INPUT


class Test_verify:
    def test_one(self, example_file, capsys):
        assert run(["verify", example_file]) == EXIT_OK
        assert "harness.oracle" in capsys.readouterr().out

    def test_two(self, example_file, capsys):
        assert run(["verify", example_file, "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["passed"] is True


class Test_fuzz:
    def test_one(self, tmp_path, capsys):
        assert run(["fuzz", "--seed", "7", "--trials", "20", "--dump", str(tmp_path / "out"), "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["trials"] == 20 and data["failures"] == []

    def test_two(self):
        assert run(["fuzz", "--max-n", "20"]) == EXIT_INPUT


class Test_montecarlo:
    def test_one(self, example_file, capsys):
        assert run(["montecarlo", example_file, "--samples", "5000", "--seed", "3", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert [e["metric"] for e in data["estimates"]] == ["a", "b", "delta"]
        assert all(e["samples"] == 5000 and e["seed"] == 3 for e in data["estimates"])

    def test_two(self, example_file):
        assert run(["montecarlo", example_file, "--samples", "0"]) == EXIT_INPUT


class Test_parser:
    def test_one(self):
        assert run(["decode"]) == EXIT_INPUT

    def test_two(self):
        assert run([]) == EXIT_INPUT

    def test_three(self, capsys):
        assert run(["--version"]) == EXIT_OK
        assert mt.__version__ in capsys.readouterr().out
