import json

import pytest

from gravchords import cohomology
from gravchords.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_basis(capsys):
    data = report(capsys, "basis", "5", "--degree", "2")
    assert data["count"] == 6 and len(data["diagrams"]) == 6
    assert data["seed"] == 0 and data["command"] == "basis"


def test_prime_basis(capsys):
    assert report(capsys, "basis", "6", "--prime", "--degree", "3")["count"] == 4


def test_betti(capsys):
    assert report(capsys, "betti-delta", "--weights", "1,1,1,1,1,1")["poincare"] == [1, 0, 5, 4]
    assert report(capsys, "betti-open", "6")["poincare"] == [1, 9, 26, 24]


def test_betti_with_rationals(capsys):
    data = report(capsys, "betti-delta", "--weights", "1/2,1/2,1/2,1,1")
    assert data["poincare"][0] == 1
    assert "memo" in data


def test_reduce_arc_with_certificate(capsys):
    element = json.dumps({"n": 5, "basis": "omega", "terms": [{"coeff": "1", "chords": [[1, 2], [2, 3]]}]})
    data = report(capsys, "reduce", element, "--certificate")
    assert {tuple(map(tuple, t["chords"])): t["coeff"] for t in data["result"]["terms"]} == {
        ((1, 3), (2, 3)): "1", ((1, 3), (1, 2)): "-1"}
    assert data["certificate"]["steps"]


def test_reduce_chord_both_routes(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"n": 6, "terms": [{"coeff": "2/3", "chords": [[1, 2], [2, 3]]}]}))
    data = report(capsys, "reduce", str(path), "--both")
    assert data["result"]["basis"] == "gravity"


def test_residue(capsys):
    element = json.dumps({"n": 4, "basis": "gravity", "terms": [{"coeff": "1", "chords": [[1, 2]]}]})
    data = report(capsys, "residue", element, "--chord", "1,2")
    assert data["residue"]["terms"] == [{"coeff": "1", "inner": [], "outer": []}]


def test_graft_and_cut(capsys):
    outer = json.dumps({"n": 4, "chords": [[1, 2]]})
    inner = json.dumps({"n": 6, "chords": [[1, 4], [3, 5]]})
    grafted = report(capsys, "graft", outer, "3", inner)
    assert grafted["diagram"]["n"] == 8 and len(grafted["diagram"]["chords"]) == 4
    back = report(capsys, "cut", json.dumps(grafted["diagram"]), "--chord", "3,7")
    assert back["slot"] == 3 and back["outer"] == json.loads(outer)


def test_factor(capsys):
    diagram = json.dumps({"n": 8, "chords": [[1, 2], [3, 6], [5, 7], [3, 7]]})
    data = report(capsys, "factor", diagram)
    assert data["vertices"] == 3 and data["sign"] == -1
    # the arity-nine example needs a 10-gon, which the size guard refuses
    code, _, _ = run(capsys, "factor", json.dumps({"n": 10, "chords": [[1, 8], [7, 9]]}))
    assert code == 12


def test_trace(capsys):
    assert abs(int(report(capsys, "trace", "6", "3")["trace"])) == 1


def test_walls_and_blowups(capsys):
    walls = report(capsys, "walls", "--weights", "1,1,1,1,1")
    assert len(walls["walls"]) == 5
    steps = report(capsys, "blowups", "--weights", "1,1,1,1,1")["steps"]
    assert [s["center"] for s in steps if s["removed"]] == ["z2=z3=0", "z2=z3=1"]


def test_check_inverse(capsys):
    assert report(capsys, "check-inverse", "6")["holds"] is True


def test_cobar(capsys):
    data = report(capsys, "cobar", "5", "--ranks")
    assert data["d_squared_zero"] and data["homology_ranks"] == [1, 0, 1]


def test_global_flags_either_side(capsys):
    a = run(capsys, "--format", "table", "trace", "6", "3")
    b = run(capsys, "trace", "6", "3", "--format", "table")
    assert a == b and a[0] == 0 and "trace:" in a[1]


def test_output_is_deterministic(capsys):
    first = run(capsys, "--seed", "7", "basis", "6", "--degree", "2")
    second = run(capsys, "--seed", "7", "basis", "6", "--degree", "2")
    assert first == second
    assert json.loads(first[1])["seed"] == 7


def test_cache_dir_flag(capsys, tmp_path):
    element = json.dumps({"n": 6, "terms": [{"coeff": "1", "chords": [[1, 2], [2, 3]]}]})
    cohomology.clear_caches()
    first = run(capsys, "--cache-dir", str(tmp_path), "reduce", element)
    assert list(tmp_path.rglob("*.json"))
    assert run(capsys, "--cache-dir", str(tmp_path), "reduce", element) == first


@pytest.mark.parametrize("argv, code", [
    (["cut", '{"n": 5, "chords": [[1, 3], [2, 4]]}', "--chord", "1,3"], 7),
    (["basis", "12"], 12),
    (["--max-n", "5", "basis", "6"], 12),
    (["reduce", "{broken"], 13),
    (["betti-delta", "--weights", "0.9,0.9,0.9"], 10),
    (["betti-delta", "--weights", "1,1"], 9),
    (["basis", "2"], 3),
    (["cut", '{"n": 5, "chords": [[1, 4]]}', "--chord", "1,4"], 4),
    (["graft", '{"n": 5, "chords": [[1, 2], [2, 3]]}', "1", '{"n": 3, "chords": []}'], 6),
    (["check-inverse", "10"], 12),
])
def test_error_exit_codes(capsys, argv, code):
    status, out, err = run(capsys, *argv)
    assert status == code
    assert out == "" and "error" in json.loads(err)


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    capsys.readouterr()


def test_verify_all_small(capsys):
    status, out, _ = run(capsys, "--format", "table", "verify-all", "--max-n", "6")
    assert status == 0
    assert out.count("PASS") == 9
