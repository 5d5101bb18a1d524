from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from altdiam import GridPermutation, SparsePermutation
from altdiam import formats
from altdiam.cli import run

FIX = Path(__file__).parent / "fixtures"
GOLD = FIX / "golden"


def call(*argv, stdin: str | None = None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv,golden", [
    (["decompose", "--json", FIX / "identity_2x2.txt"], "decompose_identity.json"),
    (["decompose", "--json", "--order", "lrl", FIX / "mixed_3x3.txt"], "decompose_mixed_lrl.json"),
    (["decompose-multi", "--json", FIX / "shift_2x2x2.json"], "multi_shift.json"),
    (["decompose-sparse", "--json", FIX / "sparse_swap.json"], "sparse_swap.json"),
    (["decompose-linear", "--json", "--split", "1,1", FIX / "swap_f2.txt"], "linear_swap.json"),
    (["census", "2", "2", "--json"], "census_2x2.json"),
    (["census", "2", "2"], "census_2x2.txt"),
    (["census", "2", "3", "--csv"], "census_2x3.csv"),
    (["lower-bound", "2,2,2", "3,2,1,2", "--json"], "lower_bound.json"),
    (["poset", "--diamond", "--json"], "poset_diamond.json"),
])
def test_golden(argv, golden):
    code, out, err = call(*argv)
    assert code == 0, err
    assert out == (GOLD / golden).read_text()


def test_identity_gives_identity_stages():
    code, out, _ = call("decompose", "--order", "rlr", FIX / "identity_2x2.txt")
    assert code == 0
    obj = json.loads((GOLD / "decompose_identity.json").read_text())
    assert [s["kind"] for s in obj["stages"]] == ["R", "L", "R"]
    assert all(q == [0, 1] for s in obj["stages"] for q in s["perms"])
    assert out.startswith("RLR on the 2x2 grid")


def test_verify_mismatch():
    code, out, _ = call("verify", FIX / "identity_stages_2x2.json", FIX / "flip_2x2.txt")
    assert code == 1
    assert "(0, 1)" in out
    code, out, _ = call("verify", "--json", FIX / "identity_stages_2x2.json", FIX / "flip_2x2.txt")
    assert code == 1 and out == (GOLD / "verify_flip.json").read_text()


def test_census_sizes():
    obj = json.loads(call("census", "2", "2", "--json")[1])
    assert obj["sizes"]["LR"] == 16 and obj["sizes"]["LRL"] == 24


@pytest.mark.parametrize("cmd,target", [
    (["decompose", "--json"], "mixed_3x3.txt"),
    (["decompose", "--json", "--order", "lrl"], "mixed_3x3.txt"),
    (["decompose", "--json"], "flip_2x2.txt"),
    (["decompose-multi", "--json"], "shift_2x2x2.json"),
    (["decompose-sparse", "--json"], "sparse_swap.json"),
    (["decompose-linear", "--json", "--split", "2,2"], "m4_f3.txt"),
    (["decompose-linear", "--json", "--split", "2,2", "--order", "rlr"], "m4_f3.txt"),
])
def test_pipe_into_verify(cmd, target, monkeypatch):
    code, out, _ = call(*cmd, FIX / target)
    assert code == 0
    code, res, err = call("verify", "-", FIX / target, stdin=out, monkeypatch=monkeypatch)
    assert (code, res) == (0, "OK\n"), err


def test_stdin_input(monkeypatch):
    text = formats.grid_to_text(GridPermutation.flip(3))
    code, out, _ = call("decompose", "--json", "-", stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["m"] == 3


def test_byte_stable_json():
    runs = {call("decompose", "--json", FIX / "mixed_3x3.txt")[1] for _ in range(3)}
    assert len(runs) == 1
    runs = {call("census", "2", "3", "--json")[1] for _ in range(2)}
    assert len(runs) == 1


def test_threads_do_not_change_output(monkeypatch):
    base = call("census", "2", "3", "--json")[1]
    assert call("census", "2", "3", "--json", "--threads", "3")[1] == base
    monkeypatch.setenv("ALTDIAM_THREADS", "2")
    assert call("census", "2", "3", "--json")[1] == base
    monkeypatch.setenv("ALTDIAM_THREADS", "zero")
    assert call("census", "2", "3")[0] == 2


def test_classify():
    code, out, _ = call("classify", "--json", FIX / "flip_2x2.txt")
    obj = json.loads(out)
    assert obj["kind"] == "Neither"
    assert obj["words"]["RL"] is False and obj["words"]["RLR"] is True
    code, out, _ = call("classify", "--split", "1,1", FIX / "swap_f2.txt")
    assert out == "Neither\n"


def test_poset_commands(tmp_path):
    assert json.loads(call("poset", "--chain", "2", "--json")[1])["flip_in_closure"] is False
    assert json.loads(call("poset", "--antichain", "2", "--json")[1])["flip_in_closure"] is True
    code, out, _ = call("poset", "--json", FIX / "diamond.txt")
    assert code == 0 and out == (GOLD / "poset_diamond.json").read_text()
    code, out, _ = call("poset", "--sweep", "2")
    assert code == 0 and out.endswith("3 posets, 0 exceptions\n")


def test_linear_log():
    code, out, _ = call("decompose-linear", "--split", "1,1", "--log", FIX / "swap_f2.txt")
    assert code == 0 and "operations:" in out


@pytest.mark.parametrize("argv", [
    ["decompose", FIX / "bad_duplicate.txt"],
    ["decompose-linear", "--split", "1,1", FIX / "singular_f2.txt"],
    ["decompose-linear", "--split", "2,2", FIX / "swap_f2.txt"],
    ["census", "3", "4"],
])
def test_domain_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err.startswith("altdiam: ")


@pytest.mark.parametrize("argv", [
    [],
    ["decompose"],
    ["decompose", "--order", "xyz", FIX / "identity_2x2.txt"],
    ["decompose", FIX / "no_such_file.txt"],
    ["decompose-linear", "--split", "1", FIX / "swap_f2.txt"],
    ["lower-bound", "2,2", "1,3"],
    ["census", "2", "2", "--threads", "0"],
    ["poset"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    code, out, _ = call(*argv)
    assert code == 2 and out == ""


def test_sparse_roundtrip_format():
    p = SparsePermutation({(0, 0): (1, 1), (1, 1): (2, 0), (2, 0): (0, 0)})
    assert formats.sparse_from_json(formats.sparse_to_json(p)) == p
    g = GridPermutation.from_table(2, 3, [3, 0, 5, 1, 4, 2])
    assert formats.read_grid(formats.grid_to_text(g)) == g
    assert formats.read_grid(formats.dumps(formats.grid_to_json(g))) == g


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "altdiam", "census", "1", "2", "--json"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["total"] == 2
