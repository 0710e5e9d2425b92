import json
import shutil
import subprocess
import sys

import pytest

from charblock.cli import main

from _support import DATA


@pytest.fixture
def s3_files(tmp_path):
    grp = tmp_path / "s3.grp"
    grp.write_text((DATA / "groups" / "s3.grp").read_text(encoding="utf-8"), encoding="utf-8")
    tbl = tmp_path / "s3.tbl"
    tbl.write_text((DATA / "tables" / "s3.json").read_text(encoding="utf-8"), encoding="utf-8")
    return grp, tbl


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_chartab_text(capsys, s3_files):
    grp, _ = s3_files
    code, out, _ = run(capsys, "chartab", grp)
    assert code == 0
    lines = out.splitlines()
    assert lines[1].split() == ["K", "1a", "2a", "3a"]
    assert lines[3].split() == ["|K|", "1", "3", "2"]
    assert lines[4].split() == ["|C(x)|", "6", "2", "3"]
    assert [l.split()[1:] for l in lines[5:]] == [["1", "1", "1"], ["1", "-1", "1"], ["2", ".", "-1"]]


def test_chartab_then_verify(capsys, tmp_path):
    out_file = tmp_path / "psl.json"
    assert run(capsys, "chartab", "psl2_7", "-o", out_file)[0] == 0
    code, out, _ = run(capsys, "verify", out_file)
    assert code == 0 and "ok" in out


def test_blocks_on_table_file(capsys, s3_files):
    _, tbl = s3_files
    code, out, _ = run(capsys, "--format", "json", "blocks", tbl, "-p", 2)
    assert code == 0
    res = json.loads(out)
    assert [b["defect"] for b in res["blocks"]] == [1, 0]
    assert [b["irr"] for b in res["blocks"]] == [[0, 1], [2]]


def test_verify_bad_table(capsys, tmp_path):
    d = json.loads((DATA / "tables" / "s3.json").read_text(encoding="utf-8"))
    d["irr"][1] = d["irr"][0]
    bad = tmp_path / "bad.tbl"
    bad.write_text(json.dumps(d), encoding="utf-8")
    code, out, _ = run(capsys, "verify", bad)
    assert code == 2 and "FAILED" in out


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "verify", tmp_path / "nope.json")[0] == 1
    assert run(capsys, "blocks", "s3", "-p", 4)[0] == 1
    trunc = tmp_path / "t.json"
    trunc.write_text((DATA / "tables" / "a5.json").read_text(encoding="utf-8")[:200], encoding="utf-8")
    code, _, err = run(capsys, "verify", trunc)
    assert code == 1 and "line" in err


def test_classes(capsys):
    code, out, _ = run(capsys, "--format", "json", "classes", "a4")
    assert code == 0
    assert [c["size"] for c in json.loads(out)["classes"]] == [1, 3, 4, 4]


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "a5", "a5_2", "--format", "json")
    assert code == 0
    res = json.loads(out)
    assert res["det_C"] == res["det_expected"] == 4
    assert res["principal_indecomposables_ok"]


def test_decompose_mismatched_prime(capsys):
    assert run(capsys, "decompose", "a5", "s3_2")[0] == 2


def test_blocks_with_group_and_brauer(capsys):
    code, out, _ = run(capsys, "blocks", "a5", "-p", 2, "--group", "a5", "--brauer", "a5_2", "--format", "json")
    assert code == 0
    res = json.loads(out)
    assert [b["defect_group_order"] for b in res["blocks"]] == [4, 1]
    assert sorted(len(b["ibr"]) for b in res["blocks"]) == [1, 3]


def test_induce(capsys, tmp_path):
    f = tmp_path / "triv.json"
    f.write_text("[1, 1, 1]", encoding="utf-8")
    code, out, _ = run(capsys, "--format", "json", "induce", "s3", "a3_in_s3", f)
    assert code == 0
    res = json.loads(out)
    assert res["values"] == ["2", "0", "2"] and res["decomposition"] == ["1", "1", "0"]
    f.write_text("[1, 1]", encoding="utf-8")
    assert run(capsys, "induce", "s3", "a3_in_s3", f)[0] == 1


def test_induced_block(capsys):
    code, out, _ = run(capsys, "--format", "json", "induced-block", "s3", "a3_in_s3", "-p", 2)
    res = json.loads(out)
    principal = next(b for b in res["blocks"] if b["block"] == 0)
    assert code == 0 and not principal["defined"]
    code, out, _ = run(capsys, "--format", "json", "induced-block", "a5", "a4_in_a5", "-p", 2)
    res = json.loads(out)
    # values live in F_16, serialized as coefficient vectors
    one, zero = [1, 0, 0, 0], [0, 0, 0, 0]
    assert res["blocks"][0]["principal"] and res["blocks"][0]["values"] == [one, one, zero, zero, zero]


def test_brauer_hom(capsys):
    code, out, _ = run(capsys, "--format", "json", "brauer-hom", "s3", "a3_in_s3")
    res = json.loads(out)
    assert code == 0 and res["multiplicative"]
    assert [r["image"] for r in res["images"]] == [{"1a": 1}, {}, {"3a": 1}]
    assert run(capsys, "brauer-hom", "s3", "s3")[0] == 1


def test_robinson(capsys):
    code, out, _ = run(capsys, "--format", "json", "robinson", "s3", "-p", 3, "-D", "(1,2,3)")
    assert code == 0 and json.loads(out)["count"] == 1
    code, out, _ = run(capsys, "robinson", "a4", "-p", 2, "-D", "(1,2)(3,4);(1,3)(2,4)")
    assert code == 0 and out.strip().endswith(": 1")
    assert run(capsys, "robinson", "s3", "-p", 2, "-D", "(1,2)")[0] == 1


def test_frobenius_kernel(capsys):
    code, out, _ = run(capsys, "frobenius-kernel", "a4", "c3_in_a4")
    assert code == 0 and "order 4" in out
    assert run(capsys, "frobenius-kernel", "s3", "a3_in_s3")[0] == 2


def test_oracle(capsys):
    code, out, _ = run(capsys, "--format", "json", "oracle", "a5", "-p", 5)
    res = json.loads(out)
    assert code == 0 and res["ok"] and res["blocks"] == 2


def test_report(capsys):
    code, out, _ = run(capsys, "--format", "json", "report", "s3")
    res = json.loads(out)
    assert code == 0 and res["commutator_counts"] == [18, 0, 9] and res["derived_order"] == 3


def test_seed_flag(capsys):
    a = run(capsys, "--format", "json", "chartab", "a5", "--seed", 3)[1]
    b = run(capsys, "--format", "json", "chartab", "a5")[1]
    assert json.loads(a)["irr"] == json.loads(b)["irr"]


@pytest.mark.skipif(shutil.which("charblock") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["charblock", "verify", "a5"], capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "charblock", "nosuch"], capture_output=True, text=True)
    assert proc.returncode == 1
