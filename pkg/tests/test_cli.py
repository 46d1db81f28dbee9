import json

import pytest

from bananadt import __version__
from bananadt.cli import GOLDEN_4N, GOLDEN_4N_MINUS_1, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_c_table_json(capsys):
    code, out, _ = run(capsys, "c-table", "--amax", "0", "--kwindow", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["version"] == __version__
    assert doc["config"]["amax"] == 0 and doc["config"]["kwindow"] == 4
    rows = {(r["a"], r["k"]): r["c"] for r in doc["rows"]}
    assert rows[(-1, 1)] == "-1" and rows[(0, 0)] == "1" and rows[(0, 3)] == "6"
    assert (-1, 0) not in rows


def test_c_table_csv(capsys):
    code, out, _ = run(capsys, "c-table", "--amax", "3", "--kwindow", "3", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == f"# bananadt {__version__}"
    assert lines[1].startswith("# config ")
    assert lines[2] == "a,k,c"
    assert "-1,1,-1" in lines


def test_byte_determinism(capsys, tmp_path):
    args = ["c-table", "--amax", "8", "--kwindow", "6", "--format", "csv"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    path = tmp_path / "t.csv"
    assert main(args + ["--out", str(path)]) == 0
    assert path.read_text() == first


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["c-table", "--kwindow", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["dt-expand", "--dmax", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_gv_table_two_table_layout(capsys):
    code, out, _ = run(capsys, "gv-table", "--amax", "20", "--paper-layout", "--format", "csv")
    assert code == 0
    lines = out.splitlines()[2:]
    first = lines[2:8]
    second = lines[11:17]
    for n, (row, want) in enumerate(zip(first, GOLDEN_4N_MINUS_1)):
        vals = [int(x) for x in row.split(",")[1:]]
        assert vals[: len(want)] == want and not any(vals[len(want):])
        assert row.startswith(f"{n},")
    for row, want in zip(second, GOLDEN_4N):
        vals = [int(x) for x in row.split(",")[1:]]
        assert vals[: len(want)] == want


def test_gv_table_json(capsys):
    code, out, _ = run(capsys, "gv-table", "--amax", "7")
    doc = json.loads(out)
    entries = {(e["a"], e["g"]): e["n"] for e in doc["entries"]}
    assert code == 0 and entries[(7, 2)] == 204 and entries[(3, 1)] == -72


def test_dt_expand(capsys):
    code, out, _ = run(capsys, "dt-expand", "--dmax", "0", "--pmax", "4")
    doc = json.loads(out)
    assert code == 0
    coeffs = doc["slices"][0]["coeffs"]
    assert coeffs["0"] == "1" and coeffs["1"] == "24"
    _, out, _ = run(capsys, "dt-expand", "--dmax", "0", "--pmax", "4", "--fibers", "1")
    coeffs = json.loads(out)["slices"][0]["coeffs"]
    assert [coeffs[str(k)] for k in range(5)] == ["1", "2", "7", "18", "47"]


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "ctable", "--amax", "6", "--kwindow", "8")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert {c["check"] for c in doc["checks"]} >= {"closed rows c(-1,k), c(0,k)"}


def test_verify_failure_exit_code(capsys, monkeypatch):
    import bananadt.cli as cli
    monkeypatch.setitem(cli._SUITE_FUNCS, "schur", lambda args: [("forced", lambda: (False, "x"))])
    code, out, _ = run(capsys, "verify", "schur", "--format", "csv")
    assert code == 1
    assert "schur,forced,FAIL,x" in out.splitlines()


def test_arithmetic_error_exit_code(capsys, monkeypatch):
    import bananadt.banana_dt as bd

    def boom(*a, **k):
        raise ArithmeticError("window too small")
    monkeypatch.setattr(bd, "c_table", boom)
    code, _, err = run(capsys, "c-table", "--amax", "2")
    assert code == 1 and "window too small" in err


def test_dt_expand_linear_slice(capsys):
    from bananadt.banana_dt import q_slice, z_banana_product
    code, out, _ = run(capsys, "dt-expand", "--dmax", "1", "--pmax", "3")
    doc = json.loads(out)
    got = {tuple(s["d"]): s["coeffs"] for s in doc["slices"]}
    z = z_banana_product(1, 3)
    want = {str(int(e)): str(c) for e, c in sorted(q_slice(z, (1, 0, 0)).items())}
    assert code == 0 and got[(1, 0, 0)] == want
    assert got[(1, 0, 0)]["1"] == "-12"


def test_verify_vertex_small(capsys):
    code, out, _ = run(capsys, "verify", "vertex", "--dmax", "1", "--pmax", "6")
    assert code == 0 and json.loads(out)["passed"]
