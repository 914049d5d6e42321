import json

import pytest

import drlcsp as d
from drlcsp.cli import main


@pytest.fixture()
def w10_file(tmp_path):
    path = tmp_path / "w10.json"
    path.write_text(d.save_algebra(d.weighted(10)))
    return path


@pytest.fixture()
def weighted_problem_file(tmp_path, w10_file):
    path = tmp_path / "prob.json"
    path.write_text(json.dumps({
        "algebra": w10_file.name,
        "domains": [2, 2],
        "constraints": [
            {"scope": [0], "values": [0, 1]},
            {"scope": [0, 1], "values": [2, 5, 0, 3]},
        ],
    }))
    return path


class TestAlgebraCommands:
    def test_make_and_classify(self, tmp_path, capsys):
        out = tmp_path / "g4.json"
        assert main(["algebra", "make", "--kind", "godel", "--n", "4", "-o", str(out)]) == 0
        assert d.read_algebra(out) == d.godel_chain(4)
        assert main(["algebra", "classify", str(out), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert payload["variety"] == "Godel" and payload["chain"] is True

    def test_make_product(self, tmp_path):
        left = tmp_path / "b.json"
        left.write_text(d.save_algebra(d.boolean()))
        out = tmp_path / "bb.json"
        code = main(["algebra", "make", "--kind", "product",
                     "--left", str(left), "--right", str(left), "-o", str(out)])
        assert code == 0
        assert d.read_algebra(out).size == 4

    def test_make_heyting_from_lattice_file(self, tmp_path):
        lattice = tmp_path / "diamond.json"
        lattice.write_text(json.dumps({"leq": [
            [1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1],
        ]}))
        out = tmp_path / "h.json"
        assert main(["algebra", "make", "--kind", "heyting",
                     "--lattice", str(lattice), "-o", str(out)]) == 0
        assert d.read_algebra(out).otimes == d.read_algebra(out).meet

    def test_check_passes(self, w10_file, capsys):
        assert main(["algebra", "check", str(w10_file)]) == 0
        assert "FAIL" not in capsys.readouterr().out

    def test_check_corrupt_monoid_exits_3_with_counterexample(self, tmp_path, capsys):
        obj = json.loads(d.save_algebra(d.godel_chain(3)))
        obj["otimes"][0][1] = 1
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(obj))
        assert main(["algebra", "check", str(path)]) == 3
        out = capsys.readouterr().out
        assert "FAIL otimes-commutative at (0, 1, 0)" in out

    def test_check_profiles(self, tmp_path, capsys):
        path = tmp_path / "luk.json"
        path.write_text(d.save_algebra(d.lukasiewicz_chain(3)))
        assert main(["algebra", "check", str(path), "--profile", "derived"]) == 0
        assert main(["algebra", "check", str(path), "--profile", "cis-reduct"]) == 3
        assert "otimes-idempotent" in capsys.readouterr().out

    def test_missing_file_exits_1(self, tmp_path):
        assert main(["algebra", "check", str(tmp_path / "nope.json")]) == 1


class TestPipeline:
    def test_enforce_then_consistency_then_equiv(self, tmp_path, weighted_problem_file, capsys):
        out = tmp_path / "enforced.json"
        assert main(["enforce", "--problem", str(weighted_problem_file),
                     "--k", "2", "--counters", "-o", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "project_calls=2" in stdout
        assert main(["consistency", "--problem", str(out), "--k", "2"]) == 0
        assert main(["consistency", "--problem", str(weighted_problem_file), "--k", "2"]) == 2
        assert main(["equiv", "--a", str(weighted_problem_file), "--b", str(out)]) == 0

    def test_enforce_inconsistent_instance_exits_2(self, tmp_path, w10_file):
        # the only variable has a constant-bottom unary constraint
        prob = tmp_path / "dead.json"
        prob.write_text(json.dumps({
            "algebra": w10_file.name,
            "domains": [2],
            "constraints": [{"scope": [0], "values": [10, 10]}],
        }))
        out = tmp_path / "out.json"
        assert main(["enforce", "--problem", str(prob), "--k", "2", "-o", str(out)]) == 2
        assert not out.exists()

    def test_enforce_strategies_accepted(self, tmp_path, weighted_problem_file):
        for strategy in ("maximal-lex", "maximal-seeded:9", "join"):
            out = tmp_path / f"out-{strategy.replace(':', '-')}.json"
            assert main(["enforce", "--problem", str(weighted_problem_file),
                         "--k", "2", "--strategy", strategy, "-o", str(out)]) == 0

    def test_equiv_detects_difference(self, tmp_path, w10_file, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        base = {"algebra": w10_file.name, "domains": [2]}
        a.write_text(json.dumps({**base, "constraints": [{"scope": [0], "values": [0, 1]}]}))
        b.write_text(json.dumps({**base, "constraints": [{"scope": [0], "values": [0, 2]}]}))
        assert main(["equiv", "--a", str(a), "--b", str(b), "--json"]) == 2
        payload = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert payload == {"assignment": [1], "equal": False, "value_a": 1, "value_b": 2}

    def test_solve_output(self, weighted_problem_file, capsys):
        assert main(["solve", "--problem", str(weighted_problem_file), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert payload == {"inconsistent": False, "optimal_values": [1], "solutions": [[1, 0]]}

    def test_gen_output_loads_and_enforces(self, tmp_path, w10_file):
        prob = tmp_path / "gen.json"
        assert main(["gen", "--algebra", str(w10_file), "--vars", "4", "--dom", "3",
                     "--constraints", "7", "--max-arity", "3", "--seed", "11",
                     "-o", str(prob)]) == 0
        assert d.read_problem(prob) == d.gen_random_problem(d.weighted(10), 4, 3, 7, 3, 11)

    def test_matches_library_results(self, tmp_path, weighted_problem_file, capsys):
        out = tmp_path / "enf.json"
        main(["enforce", "--problem", str(weighted_problem_file), "--k", "2", "-o", str(out)])
        capsys.readouterr()
        library = d.enforce_k_hyperarc(d.read_problem(weighted_problem_file), 2)
        assert d.read_problem(out) == library.problem


class TestUsageErrors:
    def test_unknown_subcommand(self):
        assert main(["frobnicate"]) == 1

    def test_missing_required_argument(self):
        assert main(["enforce", "--k", "2", "-o", "x.json"]) == 1

    def test_bad_strategy_string(self, weighted_problem_file, tmp_path):
        assert main(["enforce", "--problem", str(weighted_problem_file), "--k", "2",
                     "--strategy", "bogus", "-o", str(tmp_path / "o.json")]) == 1

    def test_help_exits_0(self):
        assert main(["--help"]) == 0
