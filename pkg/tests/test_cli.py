from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fixgame.catalog import builtin_manifest
from fixgame.cli import main

CAT = builtin_manifest().parent


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fixable_depth_report(capsys):
    code, out, _ = run(capsys, "fixable", CAT / "C1.cfg", "--k", 4, "--mode", "near", "--depths")
    assert code == 0
    assert out.splitlines() == ["fixable", "18 total boards: In increasing depths (14, 1, 1, 1, 1)"]


def test_board_query_not_fixable(capsys):
    code, out, _ = run(capsys, "fixable", CAT / "goldberg_a.cfg", "--board", CAT / "goldberg_a.board")
    assert code == 1 and out.strip() == "not fixable"


def test_reducible_message(capsys):
    code, out, _ = run(capsys, "fixable", CAT / "C34.cfg", "--mode", "near-union")
    assert code == 1
    assert "every near board is won" in out


def test_k_below_max_degree(capsys):
    code, _, err = run(capsys, "fixable", CAT / "C1.cfg", "--k", 1, "--mode", "near")
    assert code == 2 and err.startswith("error:")


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "fixable", tmp_path / "none.cfg")
    assert code == 2 and "error" in err


def test_universe_cap(capsys):
    code, _, err = run(capsys, "fixable", CAT / "C1.cfg", "--mode", "at-least", "--cap", 3)
    assert code == 2 and "error" in err


def test_boards_count(capsys):
    code, out, _ = run(capsys, "boards", CAT / "C2.cfg", "--mode", "near", "--count")
    assert code == 0 and out.strip() == "26"


def test_proof_written(capsys, tmp_path):
    proof = tmp_path / "c1.tex"
    code, _, _ = run(capsys, "fixable", CAT / "C1.cfg", "--mode", "near", "--proof", proof)
    assert code == 0 and proof.read_text().startswith("\\begin{enumerate}")


def _board(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


STAR = "vertex z\nvertex u\nvertex w\nedge z u\nedge z w\nboard k=2\n"


def test_superabundance(capsys, tmp_path):
    code, out, _ = run(capsys, "superabundance", CAT / "goldberg_b.board", "--config", CAT / "goldberg_b.cfg")
    assert code == 0 and out.splitlines()[-1] == "superabundant"
    bad = _board(tmp_path, "bad.board", STAR + "list z 1,2\nlist u 1\nlist w 1\n")
    code, out, _ = run(capsys, "superabundance", bad)
    assert code == 1 and out.splitlines()[-1] == "not superabundant; witness {z, u, w}"
    empty = _board(tmp_path, "empty.board", STAR + "list z 1,2\nlist u 1\nlist w\n")
    assert run(capsys, "superabundance", empty)[0] == 2


def test_multistar(capsys, tmp_path):
    good = _board(tmp_path, "good.board", STAR + "list z 1,2\nlist u 1\nlist w 2\n")
    code, out, _ = run(capsys, "multistar", good)
    assert code == 0 and out.startswith("fixable")
    bad = _board(tmp_path, "bad.board", STAR + "list z 1,2\nlist u 1\nlist w 1\n")
    code, out, _ = run(capsys, "multistar", bad)
    assert code == 1 and out.strip() == "not fixable: not superabundant on {z, u, w}"
    assert run(capsys, "multistar", CAT / "goldberg_a.board", "--config", CAT / "goldberg_a.cfg")[0] == 2


def test_ktv(capsys, tmp_path):
    text = ("vertex x\nvertex y\nvertex z\nedge x y\nedge y z\nboard k=3\nlist x 1,2\nlist y 1,2\nlist z 2,3\n"
            "special x y\norder x y z\npi y z 2\n")
    code, out, _ = run(capsys, "ktv", _board(tmp_path, "p3.ktv", text))
    assert code == 0
    assert out.splitlines()[-1] == "KTV assignment: yes; superabundant: yes"
    code, out, _ = run(capsys, "ktv", _board(tmp_path, "bad.ktv", text.replace("pi y z 2", "pi y z 3")))
    assert code == 1 and "property 1: fails" in out


def test_degree(capsys, tmp_path):
    cyc = _board(tmp_path, "c4.cfg", "vertex a\nvertex b\nvertex c\nvertex d\nedge a b\nedge b c\nedge c d\nedge d a\n")
    code, out, _ = run(capsys, "degree", cyc, "--pot-cap", 3)
    assert code == 0 and "0 not fixable" in out


def test_verify_catalog(capsys, tmp_path):
    good = {"name": "C1", "config": str(CAT / "C1.cfg"), "k": 4, "mode": "near", "expected_verdict": "fixable",
            "expected_total": 17}
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"entries": [good]}))
    code, out, _ = run(capsys, "verify-catalog", m)
    assert code == 0 and out.startswith("WARN")
    good["config"] = "missing.cfg"
    m.write_text(json.dumps({"entries": [good]}))
    assert run(capsys, "verify-catalog", m)[0] == 2
    m.write_text("{")
    assert run(capsys, "verify-catalog", m)[0] == 2


def test_verify_builtin_subset(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--only", "C1", "C13")
    assert code == 0 and out.splitlines()[-1] == "2 entries: 2 pass, 0 warn, 0 fail"


def test_worker_count_does_not_change_output(capsys):
    outs = {run(capsys, "fixable", CAT / "C3.cfg", "--mode", "near", "--depths", "--workers", w)[1] for w in (1, 3)}
    assert len(outs) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fixgame", "boards", str(CAT / "C1.cfg"), "--mode", "near",
                          "--count"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "18"


@pytest.mark.parametrize("argv", [["fixable"], ["nosuch"], ["fixable", "x.cfg", "--workers", "0"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
