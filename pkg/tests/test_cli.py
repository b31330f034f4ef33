import csv
import io
import json

import pytest

from bialgprop import algebra as A
from bialgprop.cli import run
from bialgprop.differential import d0_generator, recorded_full_differential
from bialgprop.serialize import element_from_json
from bialgprop.term import parse_element


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_basis_22():
    code, out, _ = call("basis", "2", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    elems = [parse_element(ln, (2, 2)) for ln in lines]
    assert all(len(e) == 1 for e in elems)


def test_basis_filters():
    _, out, _ = call("basis", "2", "3", "--degree", "0", "--genus", "2")
    assert len(out.splitlines()) == 4
    code, out, _ = call("basis", "2", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["degree", "genus", "element"] and len(rows) == 4
    _, out, _ = call("basis", "2", "2", "--format", "json")
    assert len(json.loads(out)) == 3


def test_dims():
    code, out, _ = call("dims", "--max-m", "2", "--max-n", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    dims = {(int(r["m"]), int(r["n"])): int(r["dim"]) for r in rows}
    assert dims[(2, 2)] == 3 and dims[(2, 3)] == 19
    _, out, _ = call("dims", "--max-m", "2", "--max-n", "2", "--format", "json")
    assert json.loads(out)[-1]["dim"] == 3
    _, out, _ = call("dims", "--max-m", "2", "--max-n", "2", "--strata")
    assert "S(2,2) 3" in out


def test_grade_butterfly():
    code, out, _ = call("grade", "frac[xi(1,2) xi(1,2) / xi(2,1) xi(2,1)]")
    assert code == 0
    assert out.strip() == "degree 0, genus 1, pth 4, vertices 4"


def test_d0_and_dfull_round_trip():
    code, out, _ = call("d0", "xi(1,4)")
    assert code == 0
    assert parse_element(out) == d0_generator(1, 4)
    _, out, _ = call("dfull", "xi(3,3)")
    assert parse_element(out) == recorded_full_differential()[(3, 3)]
    _, out, _ = call("dfull", "xi(2,2)", "--format", "json")
    assert element_from_json(out) == A.upsilon() - A.butterfly()


def test_dfull_with_emitted_table(tmp_path):
    path = tmp_path / "table.json"
    code, _, _ = call("solve-pert", "--max-arity", "6", "--emit", str(path))
    assert code == 0
    code, out, _ = call("dfull", "xi(2,4)", "--table", str(path))
    assert code == 0 and len(parse_element(out)) > 0
    code, out, _ = call("verify", "--square-zero", "--max-arity", "6", "--table", str(path))
    assert code == 0


def test_verify():
    code, out, _ = call("verify", "--square-zero", "--max-arity", "6")
    assert code == 0
    assert "FAIL" not in out


def test_verify_reports_failure(tmp_path):
    from bialgprop.serialize import element_to_json_obj

    table = recorded_full_differential()
    entries = []
    for mn, e in table.entries.items():
        if mn == (2, 3):
            e = d0_generator(2, 3)  # drop the perturbation
        entries.append({"generator": list(mn), "provenance": "test", "differential": element_to_json_obj(e)})
    broken = {"format": "bialgprop-differential-table", "version": 1, "entries": entries}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(broken))
    code, out, _ = call("verify", "--square-zero", "--max-arity", "5", "--table", str(path))
    assert code == 1
    assert "FAIL" in out


def test_fvector():
    code, out, _ = call("fvector")
    assert code == 0
    counts = dict(line.split() for line in out.splitlines())
    assert counts["xi(2,3)"] == "7" and counts["xi(3,3)"] == "30" and counts["xi(2,4)"] == "21"
    assert counts["xi(1,3)"] == "2" and counts["xi(1,4)"] == "5"


def test_export_dot():
    code, out, _ = call("export-dot", "xi(2,1) . xi(1,2)")
    assert code == 0
    assert out.splitlines()[0] == "graph 2 2"
    _, out, _ = call("export-dot", "xi(1,2) o_1 xi(1,2) - xi(1,2) o_2 xi(1,2)")
    assert out.startswith("bialgprop-element 1")


def test_homology():
    code, out, _ = call("homology", "2", "2")
    assert code == 0
    assert "degree 0 genus 1: dim C = 1, dim H = 1" in out
    assert "acyclic in positive degrees" in out


def test_solve_pert_refuses_large_arity():
    code, out, _ = call("solve-pert", "--max-arity", "9")
    assert code == 2
    assert "S(1,8) >= 4279" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["grade", "xi(2,"],
        ["grade", "xi(2,1) . xi(2,1)"],
        ["verify"],
        ["basis", "two", "2"],
        ["no-such-command"],
    ],
)
def test_usage_errors(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_syntax_error_message():
    _, _, err = call("d0", "xi(1,2) . ?")
    assert "line 1, column 11" in err
