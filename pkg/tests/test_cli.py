from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from hyperzf.batch import COLUMNS, SpecError, parse_spec, run_batch
from hyperzf.cli import main
from hyperzf.hypergraph import Hypergraph, write_hypergraph
from hyperzf.verify import CASES, run_case, run_verify, select_cases

H2 = Hypergraph(4, 3, [[1, 2, 3], [2, 3, 4]])
TREE10 = Hypergraph(10, 3, [[1, 2, 3], [2, 3, 4], [2, 5, 6], [3, 7, 8], [4, 9, 10]])


@pytest.fixture
def h2_file(tmp_path):
    path = tmp_path / "h2.uhg"
    write_hypergraph(H2, path)
    return str(path)


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCommands:
    def test_gen(self, capsys):
        code, out, _ = run(capsys, "gen", "special_interval", "d=3", "s=1")
        assert code == 0 and out.splitlines()[1:] == ["3 4 2", "1 2 3", "2 3 4"]

    def test_gen_random_echoes_seed(self, capsys):
        code, out, _ = run(capsys, "--seed", "9", "gen", "random", "n=6", "d=3", "prob=1/2")
        assert code == 0 and "seed=9" in out.splitlines()[0]

    def test_gen_json(self, capsys, tmp_path):
        target = tmp_path / "s.json"
        assert run(capsys, "gen", "star", "p=2", "d=3", "-o", str(target))[0] == 0
        assert json.loads(target.read_text())["edges"] == [[1, 2, 5], [3, 4, 5]]

    def test_gen_errors(self, capsys):
        code, _, err = run(capsys, "gen", "star", "p=1", "d=3")
        assert code == 2 and "p >= 2" in err
        assert run(capsys, "gen", "wheel", "n=5")[0] == 2
        assert run(capsys, "gen", "star", "p3")[0] == 2

    def test_closure_trace(self, capsys, h2_file):
        code, out, _ = run(capsys, "closure", h2_file, "--rule", "zf", "--initial", "1", "--trace")
        assert code == 0
        assert out.splitlines() == ["{1,2} -> 3", "{1,3} -> 2", "{2,3} -> 4", "derived: {1,2,3,4}"]

    def test_closure_json(self, capsys, h2_file):
        code, out, _ = run(capsys, "--json", "closure", h2_file, "--rule", "infect", "--initial", "1")
        assert json.loads(out) == {"rule": "infect", "initial": [1], "derived": [1, 2, 3, 4], "complete": True}

    def test_closure_bad_vertex(self, capsys, h2_file):
        assert run(capsys, "closure", h2_file, "--initial", "9")[0] == 2
        assert run(capsys, "closure", h2_file, "--initial", "a")[0] == 2

    def test_param(self, capsys, tmp_path):
        path = tmp_path / "tree10.json"
        write_hypergraph(TREE10, path)
        code, out, _ = run(capsys, "param", "zpd", str(path), "--json")
        payload = json.loads(out)
        assert code == 0 and payload["value"] == 2 and set(payload) == {
            "parameter", "value", "witness", "subsets_examined"}
        code, out, _ = run(capsys, "param", "z0", str(path), "--witness")
        assert out.startswith("Z0 = 0")

    def test_nullity(self, capsys, h2_file):
        code, out, _ = run(capsys, "nullity", h2_file, "--mode", "exhaustive", "--field", "3", "--json")
        payload = json.loads(out)
        assert code == 0 and payload["value"] == 1 and payload["field"] == 3
        assert payload["kernel_basis"] in ([[1, 0, 0, 2]], [[2, 0, 0, 1]])
        code, out, _ = run(capsys, "nullity", h2_file, "--mode", "generic", "--json", "--seed", "4")
        assert json.loads(out) == {"mode": "generic", "field": 1000003, "value": 1, "trials": 5, "seed": 4}

    def test_nullity_budget(self, capsys, tmp_path):
        path = tmp_path / "k.uhg"
        from hyperzf.families import complete

        write_hypergraph(complete(6, 3), path)
        code, out, _ = run(capsys, "--budget", "10", "nullity", str(path), "--json")
        payload = json.loads(out)
        assert code == 0 and payload["value"] is None and payload["Z0_upper_bound"] == 3

    def test_nullity_non_prime(self, capsys, h2_file):
        assert run(capsys, "nullity", h2_file, "--field", "4")[0] == 2

    def test_missing_file(self, capsys):
        assert run(capsys, "param", "z0", "/nonexistent.uhg")[0] == 2

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["param", "chromatic", "x.uhg"])
        assert info.value.code == 2

    def test_verify(self, capsys):
        code, out, _ = run(capsys, "verify", "h1_h2,tree10")
        assert code == 0 and out.count("PASS") == 2
        assert run(capsys, "verify", "nope")[0] == 2
        code, out, _ = run(capsys, "verify", "--list")
        assert code == 0 and len(out.splitlines()) == len(CASES)

    def test_verify_failure_exit(self, capsys):
        code, out, _ = run(capsys, "verify", "knd_m", "--json")
        payload = json.loads(out)
        assert code == 1 and payload["ok"] is False
        assert all(f["hypergraph"] for f in payload["cases"][0]["failures"])

    def test_batch(self, capsys, tmp_path, h2_file):
        spec = tmp_path / "spec.txt"
        spec.write_text(f"# stars\nstar p=2 d=3\nstar p=3 d=3\n\n{h2_file}\n")
        code, out, err = run(capsys, "batch", str(spec))
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and "seed" in err
        assert [r["I"] for r in rows] == ["1", "2", "1"]

    def test_probe(self, capsys):
        code, out, _ = run(capsys, "probe-cartesian", "--trials", "10", "--seed", "3", "--json")
        payload = json.loads(out)
        assert code == 0 and payload["counts"]["pairs"] == 10 and payload["seed"] == 3

    def test_module_entry_point(self, h2_file):
        proc = subprocess.run([sys.executable, "-m", "hyperzf", "param", "z0", h2_file],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout.strip() == "Z0 = 1"


class TestBatch:
    def test_star_infection_column(self):
        text = "\n".join(f"star p={p} d=3" for p in range(2, 6))
        rows = list(csv.DictReader(io.StringIO(run_batch(text))))
        assert [r["I"] for r in rows] == ["1", "2", "3", "4"]

    def test_special_interval_column(self):
        text = "\n".join(f"special_interval d=3 s={s}" for s in range(1, 4))
        rows = list(csv.DictReader(io.StringIO(run_batch(text))))
        assert [r["Z0"] for r in rows] == ["1", "1", "1"]
        assert [r["M"] for r in rows] == ["1", "1", "1"]

    def test_empty_spec(self):
        assert run_batch("# nothing\n\n") == ",".join(COLUMNS) + "\n"

    def test_budget_leaves_cells_empty(self):
        rows = list(csv.DictReader(io.StringIO(run_batch("complete n=6 d=3", budget=10))))
        assert rows[0]["M"] == "" and rows[0]["M_field"] == "" and rows[0]["Z0"] == "3"

    def test_deterministic_and_parallel(self):
        text = "random n=7 d=3 prob=0.3 seed=4\nspecial_circular_arc d=3 s=2\ninterval n=7 d=3 L=1,3,5"
        strip = lambda t: [r[:-2] for r in csv.reader(io.StringIO(t))]  # noqa: E731
        assert strip(run_batch(text)) == strip(run_batch(text, threads=2))

    @pytest.mark.parametrize(
        "text,line",
        [("star p=2 d=3\nstar p=2\n", 2), ("\n\nbogus\n", 3), ("interval n=5 d=3 L=1,4\n", 1),
         ("missing.uhg\n", 1), ("random n=5 d=3 prob=x seed=1\n", 1), ("complete n=5 d=3 n=6\n", 1)],
    )
    def test_malformed(self, text, line):
        with pytest.raises(SpecError, match=f"line {line}:"):
            parse_spec(text)


class TestVerify:
    def test_select(self):
        assert select_cases("cart*") == ["cart_le", "cart_eq1", "cart_eq3"]
        assert select_cases(None) == list(CASES)
        with pytest.raises(KeyError):
            select_cases("nothing")

    @pytest.mark.parametrize("name", ["h1_h2", "tree10", "knd_z", "knd_i_zpd", "star", "tight_z",
                                      "tight_i", "tight_zpd", "skew_d2"])
    def test_fast_cases_pass(self, name):
        result = run_case(name)
        assert result.ok and result.checked > 0

    def test_reduced_ensembles_pass(self):
        results = run_verify("deletion,superhypergraph,cart*", ops_count=10)
        assert all(r.ok for r in results)

    def test_knd_m_reports_characteristic_two(self):
        result = run_case("knd_m")
        details = [f["detail"] for f in result.failures]
        assert details and all("GF(2)" in d for d in details)
        assert any("K_4^(3)" in d for d in details)
