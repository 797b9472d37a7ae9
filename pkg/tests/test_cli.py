import json

import pytest

from char3 import serialize
from char3.cli import build_spec, main
from char3.jternary import check_hein


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_tensor_writes_involution(capsys):
    code, out, _ = run(capsys, "construct", "tensor(8,1)")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "structurable" and d["dim"] == 8 and len(d["inv"]) == 8


def test_construct_smirnov(capsys):
    code, out, _ = run(capsys, "construct", "smirnov")
    assert code == 0 and json.loads(out)["dim"] == 35


def test_construct_kantor_graded(capsys):
    code, out, _ = run(capsys, "construct", "kantor", "tensor(8,1)")
    d = json.loads(out)
    assert code == 0 and d["kind"] == "graded" and d["dim"] == 52 and "sl2" in d


def test_check_structurable_passes(capsys):
    code, out, _ = run(capsys, "check", "tensor(8,2)", "--suite", "structurable")
    assert code == 0 and "FAIL" not in out


def test_check_weak_cube_witness(capsys):
    code, out, _ = run(capsys, "check", "lss", "weak-counterexample", "--suite", "super-cube")
    assert code == 1 and "FAIL" in out and "-y" in out


def test_check_failing_hein(capsys):
    code, out, _ = run(capsys, "check", "pathological(2)", "--suite", "hein")
    assert code == 1 and "hein1" in out


@pytest.mark.parametrize("argv", [["check", "unknown-spec"], ["construct", "tensor(3,1)"], ["frobnicate"],
                                  ["magic-square", "--p", "5"], ["identity", "no_such_identity"]])
def test_usage_errors(capsys, argv):
    if argv[0] == "magic-square":
        argv = ["--p", "5", "magic-square"]
    assert run(capsys, *argv)[0] == 2


def test_construct_file_then_check_matches_memory(tmp_path, capsys):
    path = tmp_path / "t.json"
    assert run(capsys, "construct", "jternary", "tensor(2,2)", "--out", str(path))[0] == 0
    code, from_file, _ = run(capsys, "check", str(path), "--suite", "hein")
    code2, from_spec, _ = run(capsys, "check", "jternary", "tensor(2,2)", "--suite", "hein")
    assert code == code2 == 0 and from_file == from_spec
    T = serialize.load_file(path)
    mem = build_spec("jternary tensor(2,2)").obj
    assert check_hein(T).summary() == check_hein(mem).summary()


def test_lt_semisimplify_fingerprint(tmp_path, capsys):
    lt = tmp_path / "lt.json"
    ss = tmp_path / "ss.json"
    assert run(capsys, "construct", "lt", "weak-counterexample", "--out", str(lt))[0] == 0
    code, out, _ = run(capsys, "semisimplify", str(lt), "--out", str(ss))
    assert code == 0 and "(1|2)" in out
    code, out, _ = run(capsys, "fingerprint", str(ss), "--format", "json")
    fp = json.loads(out)
    assert code == 0 and fp["superdim"] == [1, 2] and fp["cube_ideal"] == 1


def test_identity_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "identity", "--list")
    assert code == 0 and "hein1" in out.split()
    assert run(capsys, "identity", "super_jacobi", "osp(3|2)")[0] == 0
    src = tmp_path / "skew.idt"
    src.write_text("op B : L, L -> L\nB(x, y) + B(y, x) = 0\n", encoding="utf-8")
    code, out, _ = run(capsys, "identity", "--identity", str(src), "kantor", "tensor(8,1)")
    assert code == 0
    code, out, _ = run(capsys, "identity", "fk1", "weak-counterexample", "--param", "eps=1", "--param", "delta=1")
    assert code == 0


def test_magic_square_single_cell(capsys):
    code, out, _ = run(capsys, "magic-square", "--cell", "4,4", "--format", "json")
    d = json.loads(out)
    cell = d["cells"][0]
    assert code == 0 and cell["label"] == "osp(4|4)" and cell["superdim"] == [16, 16]
    code, out, _ = run(capsys, "magic-square", "--cell", "1,1")
    assert code == 0 and "∅" in out
