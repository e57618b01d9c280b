from __future__ import annotations

import json

import pytest

from symtab.cli import main
from symtab.tables import bundled_fixture, load_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_is_byte_stable(tmp_path, capsys):
    out = tmp_path / "a6.json"
    assert run(capsys, "gen", "--group", "A", "--n", "6", "--out", str(out))[0] == 0
    text = out.read_text()
    again = tmp_path / "again.json"
    assert run(capsys, "scramble", "--in", str(out), "--seed", "1", "--out", str(again))[0] == 0
    code, stdout, _ = run(capsys, "gen", "--group", "A", "--n", "6")
    assert stdout == text


def test_gen_a5_has_golden_ratio(capsys):
    code, out, _ = run(capsys, "gen", "--group", "A", "--n", "5")
    assert code == 0
    assert '{"a": 1, "b": 1, "D": 5}' in out and '{"a": 1, "b": -1, "D": 5}' in out


def test_gen_brauer(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--group", "S", "--n", "4", "--p", "2")
    table = load_table(out)
    assert table.values == ((1, 1), (-1, 2))


def test_scramble_deterministic_with_sidecar(tmp_path, capsys):
    src = tmp_path / "s5.json"
    main(["gen", "--group", "S", "--n", "5", "--out", str(src)])
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["scramble", "--in", str(src), "--seed", "9", "--out", str(a)])
    main(["scramble", "--in", str(src), "--seed", "9", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    side = json.loads((tmp_path / "a.json.perm.json").read_text())
    assert sorted(side["rowPerm"]) == list(range(7))
    assert "rowLabels" not in a.read_text()
    code, out, _ = run(capsys, "relabel", "--in", str(a), "--group", "S", "--n", "5")
    assert code == 0
    report = json.loads(out)
    assert report["labellings"] == [side["labelling"]]


def test_scramble_one_by_one(tmp_path, capsys):
    src = tmp_path / "s1.json"
    main(["gen", "--group", "S", "--n", "1", "--out", str(src)])
    code, out, _ = run(capsys, "scramble", "--in", str(src), "--seed", "0")
    assert code == 0 and load_table(out).values == ((1,),)


@pytest.mark.parametrize("group,n,count", [("S", 6, 2), ("A", 6, 4)])
def test_relabel_counts(tmp_path, capsys, group, n, count):
    src, scr = tmp_path / "t.json", tmp_path / "x.json"
    main(["gen", "--group", group, "--n", str(n), "--out", str(src)])
    main(["scramble", "--in", str(src), "--seed", "4", "--out", str(scr)])
    code, out, _ = run(capsys, "relabel", "--in", str(scr), "--group", group, "--n", str(n))
    assert code == 0 and json.loads(out)["count"] == count


def test_relabel_brauer_with_decomp_dir(tmp_path, capsys):
    import symtab.data.decomposition as pkg
    from pathlib import Path

    ddir = Path(pkg.__file__).parent
    src, scr = tmp_path / "t.json", tmp_path / "x.json"
    main(["gen", "--group", "S", "--n", "8", "--p", "3", "--out", str(src)])
    main(["scramble", "--in", str(src), "--seed", "4", "--out", str(scr)])
    code, out, _ = run(capsys, "relabel", "--in", str(scr), "--group", "S", "--n", "8", "--p", "3", "--decomp", str(ddir))
    assert code == 0 and json.loads(out)["count"] == 1


def test_relabel_random_matrix_exit_4(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": "S", "n": 3, "values": [["1", "2", "3"], ["4", "5", "6"], ["7", "8", "9"]]}))
    assert run(capsys, "relabel", "--in", str(bad), "--group", "S", "--n", "3")[0] == 4


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--group", "Q", "--n", "3"])
    assert exc.value.code == 2
    assert run(capsys, "gen", "--group", "S", "--n", "99")[0] == 2
    assert run(capsys, "gen", "--group", "S", "--n", "4", "--p", "4")[0] == 2
    garbage = tmp_path / "g.json"
    garbage.write_text("{not json")
    assert run(capsys, "scramble", "--in", str(garbage), "--seed", "1")[0] == 2


def test_aut_on_c2xd8(tmp_path, capsys):
    path = tmp_path / "c.json"
    from symtab.tables import dump_table

    path.write_text(dump_table(bundled_fixture("c2xd8")))
    code, out, _ = run(capsys, "aut", "--in", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 48
    assert doc["cAut"]["orbitSizes"] == [4, 3, 2, 1]
    assert doc["clAut"]["orbitSizes"] == [6, 2, 1, 1]


def test_orders(tmp_path, capsys):
    src, scr = tmp_path / "t.json", tmp_path / "x.json"
    main(["gen", "--group", "S", "--n", "7", "--out", str(src)])
    main(["scramble", "--in", str(src), "--seed", "2", "--out", str(scr)])
    side = json.loads((tmp_path / "x.json.perm.json").read_text())
    code, out, _ = run(capsys, "orders", "--in", str(scr), "--n", "7")
    from math import lcm

    want = [lcm(*c) for c in side["labelling"]["cols"]]
    assert code == 0 and json.loads(out)["orders"] == want


def test_validate_corrupted_decomposition(tmp_path, capsys):
    from symtab.brauer import bundled_decomposition

    doc = bundled_decomposition(4, 2).to_document()
    doc["entries"][0][1] = 1
    path = tmp_path / "d.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", "--decomp", str(path))
    assert code == 3
    assert any("does not dominate" in v for v in json.loads(out)["decomposition"]["violations"])


def test_validate_good_table(tmp_path, capsys):
    src = tmp_path / "t.json"
    main(["gen", "--group", "A", "--n", "7", "--out", str(src)])
    code, out, _ = run(capsys, "validate", "--in", str(src))
    assert code == 0 and json.loads(out)["table"]["valid"]


def test_brauer_gen(capsys):
    code, out, _ = run(capsys, "brauer-gen", "--n", "5", "--p", "3")
    assert code == 0 and json.loads(out)["p"] == 3
