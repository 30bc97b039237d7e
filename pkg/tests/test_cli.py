import json


from arrlie.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_flats_normals(capsys):
    code, out, _ = run(capsys, "flats", "1033-normals")
    assert code == 0
    blocks = [line.split(":")[1].split() for line in out.splitlines() if line.startswith("block")]
    assert sorted(b for b in blocks if len(b) == 3) == sorted(
        [["1", "2", "3"], ["1", "4", "5"], ["2", "4", "6"], ["3", "5", "6"], ["1", "7", "8"],
         ["2", "7", "10"], ["3", "7", "9"], ["4", "8", "10"], ["5", "9", "10"], ["6", "8", "9"]])


def test_flats_two_hyperplanes(capsys, tmp_path):
    f = tmp_path / "two.arr"
    f.write_text("normal a: 1 0\nnormal b: 1 1\n")
    code, out, _ = run(capsys, "flats", str(f))
    assert code == 0 and [ln for ln in out.splitlines() if ln.startswith("block")] == ["block F1: a b"]


def test_flats_fixpoint(capsys, tmp_path):
    code, first, _ = run(capsys, "flats", "1033")
    f = tmp_path / "flats.arr"
    f.write_text(first)
    code2, second, _ = run(capsys, "flats", str(f))
    assert code == code2 == 0 and first == second


def test_dims_ten(capsys):
    code, out, _ = run(capsys, "dims", "1033", "-d", "4", "--format", "json")
    data = json.loads(out)["fields"]["q"]
    assert code == 0
    assert [data[str(d)]["derived"] for d in range(1, 5)] == [0, 10, 22, 39]


def test_dims_all_fields(capsys):
    code, out, _ = run(capsys, "dims", "k4", "-d", "3", "--all-fields", "q,2,101")
    assert code == 0 and "p:101" in out and "disagree" not in out


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "1033", "--partition", "B1=1,2,3,4", "--singletons-rest", "-d", "3")[0] == 0
    code, out, _ = run(capsys, "check", "1033", "--singletons", "-d", "3")
    assert code == 1 and "witness" in out
    assert run(capsys, "check", "ex1", "--singletons")[0] == 0
    assert run(capsys, "check", "ex1", "--singletons", "-d", "4")[0] == 3


def test_check_json_stable(capsys):
    args = ("check", "ex1", "--format", "json", "--jobs", "3")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    data = json.loads(a)
    assert data["triples"]["checked"] == 11 and data["verdict"] == "decomposes"


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "dims", str(tmp_path / "nope.arr"))[0] == 2
    bad = tmp_path / "bad.arr"
    bad.write_text("ground: a b\nblock A: a c\n")
    code, _, err = run(capsys, "dims", str(bad))
    assert code == 2 and "line 2" in err
    assert run(capsys, "check", "1033", "--partition", "B=1,5", "--singletons-rest")[0] == 2
    assert run(capsys, "check", "1033", "--partition", "B=99")[0] == 2
    assert run(capsys, "dims", "1033", "-d", "1")[0] == 2
    assert run(capsys, "dims", "1033", "--field", "p:4")[0] == 2


def test_partial(capsys):
    code, out, _ = run(capsys, "partial", "1033", "--sub", "B1=1,2,3,4", "-d", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["consistent"] and data["triples"]["checked"] == 16
    assert run(capsys, "partial", "1033", "--sub", "1,5")[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "arrlie", "dims", "k4", "-d", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "dim L'" in r.stdout
