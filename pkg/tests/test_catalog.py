from __future__ import annotations

import json

import pytest

from fixgame.catalog import (
    CatalogEntry,
    Manifest,
    ManifestError,
    builtin_config,
    builtin_manifest,
    catalog_ok,
    load_manifest,
    run_catalog,
    run_entry,
)
from fixgame.engine import reducing_edges, solve
from fixgame.multigraph import serialize_config


def test_builtin_manifest_loads():
    entries, base = load_manifest(builtin_manifest())
    names = [e.name for e in entries]
    assert names[:39] == [f"C{i}" for i in range(1, 40)]
    assert {"goldberg_a", "goldberg_b", "hz_a", "critical3_tree"} <= set(names)
    for e in entries:
        assert (base / e.config).exists()
        if e.board:
            assert (base / e.board).exists()


def test_small_entries_pass():
    entries, base = load_manifest(builtin_manifest())
    res = run_catalog(entries, base, only=["C1", "C2", "C6", "C13", "goldberg_a"])
    assert [r.status for r in res] == ["pass"] * 5
    assert catalog_ok(res)
    conv = {r.name: r.convention for r in res}
    assert conv["C6"] == "near-union" and conv["goldberg_a"] == "board"


def test_wrong_verdict_fails(tmp_path):
    (tmp_path / "C1.cfg").write_text(serialize_config(builtin_config("C1")))
    e = CatalogEntry("C1", "C1.cfg", 4, "near", "not-fixable")
    res = run_entry(e, tmp_path)
    assert res.status == "fail" and not catalog_ok([res])


def test_count_mismatch_warns(tmp_path):
    (tmp_path / "C1.cfg").write_text(serialize_config(builtin_config("C1")))
    e = CatalogEntry("C1", "C1.cfg", 4, "near", "fixable", 19, (15, 1, 1, 1, 1))
    res = run_entry(e, tmp_path)
    assert res.status == "warn" and catalog_ok([res])
    assert "counts differ" in res.message


def test_missing_config(tmp_path):
    with pytest.raises(FileNotFoundError):
        run_entry(CatalogEntry("X", "nope.cfg", 4, "near", "fixable"), tmp_path)


@pytest.mark.parametrize("raw", ["not json", json.dumps({"entries": 3}),
                                 json.dumps({"entries": [{"name": "x"}]}),
                                 json.dumps({"entries": [{"name": "x", "config": "a", "k": 4, "mode": "bogus",
                                                          "expected_verdict": "fixable"}]})])
def test_malformed_manifests(tmp_path, raw):
    p = tmp_path / "m.json"
    p.write_text(raw)
    with pytest.raises(ManifestError):
        load_manifest(p)


def test_manifest_round_trip(tmp_path):
    entries, _ = load_manifest(builtin_manifest())
    p = tmp_path / "m.json"
    p.write_text(Manifest(entries).dumps())
    assert load_manifest(p)[0] == entries


def test_c34_is_reducible():
    c = builtin_config("C34")
    r = solve(c, 4, "near-union")
    assert not r.fixable
    assert len(r) == 3026
    assert reducing_edges(c, r) == (0, 1, 2, 3, 4)
