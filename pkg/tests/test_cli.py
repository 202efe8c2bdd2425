import json

import pytest

from pebbling.cert import comparable
from pebbling.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solvable_cone16(capsys):
    code, out, _ = run(capsys, "solvable", "--graph", "b1", "--root", "4", "--dist", "10:16")
    assert code == 0
    assert out.strip().endswith("solvable") and "15 moves replayed" in out


def test_solvable_witness_both_oracles(capsys):
    code, out, _ = run(capsys, "solvable", "--graph", "b2", "--root", "6",
                       "--dist", "10:15,3:1,4:1,12:1,13:1,15:1,16:1,17:1")
    assert code == 0 and "bfs: unsolvable" in out and "milp: unsolvable" in out


def test_info_and_orbits(capsys):
    code, out, _ = run(capsys, "info", "--graph", "b2")
    assert code == 0 and "diameter 4" in out and "girth 5" in out and "automorphisms 4" in out
    code, out, _ = run(capsys, "orbits", "--graph", "b1")
    assert code == 0 and "|Aut| = 8" in out and "sizes [2, 4, 4, 4, 4]" in out


def test_strategies_dump(tmp_path, capsys):
    path = tmp_path / "s.json"
    code, out, _ = run(capsys, "strategies", "--graph", "petersen", "--root", "0", "--max-size", "4",
                       "--dump", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert str(len(data)) in out
    assert set(data[0]) == {"root", "tree_edges", "weights", "weight_total"}


def test_upper_and_verify(tmp_path, capsys):
    cert = tmp_path / "c.json"
    code, out, _ = run(capsys, "upper", "--graph", "petersen", "--root", "3", "--cert", str(cert))
    assert code == 0 and "pi(petersen, 3) <= 10" in out
    code, out, _ = run(capsys, "verify", "--graph", "petersen", "--cert", str(cert))
    assert code == 0 and "certificate ok" in out
    data = json.loads(cert.read_text())
    data["entries"][0]["multiplier_den"] *= 2
    cert.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--graph", "petersen", "--cert", str(cert))
    assert code == 1 and "coverage" in out


def test_lower_b2(capsys):
    code, out, _ = run(capsys, "lower", "--graph", "b2", "--root", "6")
    assert code == 0 and "best witness: 22 pebbles" in out and ">= 23" in out


def test_export(tmp_path, capsys):
    code, out, _ = run(capsys, "export-milp", "--graph", "petersen", "--root", "0", "--dist", "1:2")
    assert code == 0 and out.startswith("\\ pebbling") and "Binaries" in out


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--graph", "petersen", "--count", "40", "--seed", "2")
    assert code == 0 and "0 disagreements" in out


def test_run_all_petersen_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code, out, _ = run(capsys, "run-all", "--graph", "petersen", "--out", str(a))
    assert code == 0 and "interval: [10, 10]" in out
    run(capsys, "run-all", "--graph", "petersen", "--out", str(b))
    assert comparable(json.loads(a.read_text())) == comparable(json.loads(b.read_text()))
    assert a.read_text() != "" and "run_info" in json.loads(a.read_text())
    code, out, _ = run(capsys, "verify-bundle", str(a))
    assert code == 0


@pytest.mark.parametrize(
    "argv,code",
    [
        (["solvable", "--graph", "nope", "--root", "0", "--dist", "1:1"], 3),
        (["solvable", "--graph", "b1", "--root", "4", "--dist", "99:1"], 3),
        (["solvable", "--graph", "b1", "--root", "4", "--dist", "10:15,1:1,7:1,12:1,13:1,14:1,15:1,16:1",
          "--oracle", "bfs", "--max-states", "50"], 2),
        (["verify-bundle", "/nonexistent/bundle.json"], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_bad_graph_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("3 3\n0 1\n1 2\n2 2\n")
    code, _, err = run(capsys, "info", "--graph", str(path))
    assert code == 3 and "MalformedEdge" in err
