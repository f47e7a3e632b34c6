import io
import json
import subprocess
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from exactcat.cli import main
from exactcat.documents import (
    document_from_jsonable,
    document_to_jsonable,
    load_document,
)

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


GOLDEN_CASES = [
    (("--json", "ext", "4", "6", "1"), "ext_4_6_1.out"),
    (("--json", "tor", "4", "6", "1"), "tor_4_6_1.out"),
    (("--json", "snake", str(GOLDEN / "snake_doc.json"), "m"), "snake_m.out"),
    (("--json", "homology", str(GOLDEN / "snake_doc.json"), "X"), "homology_X.out"),
    (("--json", "homology", str(GOLDEN / "snake_doc.json"), "acyclic"),
     "homology_acyclic.out"),
    (("--json", "resolve", str(GOLDEN / "snake_doc.json"), "Z4"), "resolve_Z4.out"),
    (("--json", "complete", str(GOLDEN / "complete_doc.json"), "E", "q"),
     "complete_E_q.out"),
    (("--json", "check", "--model", "fgab", "--suite", "obscure",
      "--iters", "5", "--seed", "7"), "check_obscure.out"),
]


@pytest.mark.parametrize("argv,golden", GOLDEN_CASES)
def test_golden_outputs(argv, golden):
    code, out = run_cli(*argv)
    assert code == 0
    expected = (GOLDEN / golden).read_text(encoding="utf-8")
    assert out == expected


def test_golden_values_sanity():
    data = json.loads((GOLDEN / "ext_4_6_1.out").read_text())
    assert data["invariant_factors"] == {"free_rank": 0, "torsion": [2]}
    data = json.loads((GOLDEN / "snake_m.out").read_text())
    assert data["delta"]["entries"] == [[1]]
    data = json.loads((GOLDEN / "homology_acyclic.out").read_text())
    assert all(v["invariants"] == {"free_rank": 0, "torsion": []}
               for v in data["values"])


def test_gcd_oracle_via_cli_sample():
    code, out = run_cli("--json", "ext", "9", "12", "1")
    assert code == 0
    assert json.loads(out)["invariant_factors"]["torsion"] == [3]


def test_exit_code_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _ = run_cli("homology", str(bad), "X")
    assert code == 2
    missing = tmp_path / "missing_ref.json"
    missing.write_text(json.dumps({
        "version": "exactcat/1", "model": "fgab",
        "objects": {}, "morphisms": {
            "f": {"dom": "nope", "cod": "nope",
                  "matrix": {"rows": 0, "cols": 0, "entries": []}}},
    }), encoding="utf-8")
    code, _ = run_cli("homology", str(missing), "X")
    assert code == 2


def test_exit_code_precondition(tmp_path):
    # quasi-iso-style gating: snake on a non-WIC-flagged model is exit 3;
    # here: complete with a non-idempotent morphism
    doc = {
        "version": "exactcat/1",
        "model": "fgab",
        "objects": {"Z": {"ngens": 1,
                          "relations": {"rows": 1, "cols": 0, "entries": [[]]}}},
        "morphisms": {"f": {"dom": "Z", "cod": "Z",
                            "matrix": {"rows": 1, "cols": 1, "entries": [[2]]}}},
    }
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, _ = run_cli("complete", str(path), "Z", "f")
    assert code == 3


def test_exit_code_law_failure():
    code, out = run_cli("--json", "check", "--model", "even_rank_split",
                        "--suite", "nh_acyclic", "--iters", "3")
    assert code == 1
    data = json.loads(out)
    assert not data["passed"]


def test_roundtrip_documents():
    for name in ("snake_doc.json", "complete_doc.json"):
        doc = load_document(str(GOLDEN / name))
        again = document_from_jsonable(document_to_jsonable(doc))
        assert document_to_jsonable(again) == document_to_jsonable(doc)


def test_human_rendering_runs():
    code, out = run_cli("ext", "4", "6", "1")
    assert code == 0
    assert "Ext^1(Z/4, Z/6) = Z/2" in out
    code, out = run_cli("snake", str(GOLDEN / "snake_doc.json"), "m")
    assert code == 0
    assert "delta" in out


def test_check_determinism_byte_identical():
    argv = ("--json", "check", "--model", "fgab", "--suite", "summands",
            "--iters", "4", "--seed", "3")
    _, out1 = run_cli(*argv)
    _, out2 = run_cli(*argv)
    assert out1 == out2


def test_seed_env_var(monkeypatch):
    monkeypatch.setenv("EXACTCAT_SEED", "99")
    _, out1 = run_cli("--json", "check", "--model", "fgab", "--suite",
                      "obscure", "--iters", "3")
    _, out2 = run_cli("--json", "check", "--model", "fgab", "--suite",
                      "obscure", "--iters", "3", "--seed", "99")
    assert json.loads(out1) == json.loads(out2)


def test_console_script_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "exactcat.cli", "--json", "tor", "6", "4", "1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["invariant_factors"]["torsion"] == [2]


def test_horseshoe_diagram_roundtrip(tmp_path):
    # the document format names horseshoes: a ses plus resolutions of the
    # outer terms, validated at load time
    doc = {
        "version": "exactcat/1",
        "model": "fgab",
        "objects": {
            "Z": {"ngens": 1, "relations": {"rows": 1, "cols": 0, "entries": [[]]}},
            "Z2": {"ngens": 1, "relations": {"rows": 1, "cols": 1, "entries": [[2]]}},
        },
        "morphisms": {
            "times2": {"dom": "Z", "cod": "Z",
                       "matrix": {"rows": 1, "cols": 1, "entries": [[2]]}},
            "quot": {"dom": "Z", "cod": "Z2",
                     "matrix": {"rows": 1, "cols": 1, "entries": [[1]]}},
            "aug_sub": {"dom": "Z", "cod": "Z",
                        "matrix": {"rows": 1, "cols": 1, "entries": [[1]]}},
            "aug_quot": {"dom": "Z", "cod": "Z2",
                         "matrix": {"rows": 1, "cols": 1, "entries": [[1]]}},
        },
        "complexes": {
            "P_sub": {"lo": 0, "components": ["Z"], "differentials": []},
            "P_quot": {"lo": -1, "components": ["Z", "Z"],
                       "differentials": [{"rows": 1, "cols": 1, "entries": [[2]]}]},
        },
        "diagrams": {
            "h": {"kind": "horseshoe", "i": "times2", "p": "quot",
                  "sub_complex": "P_sub", "sub_augmentation": "aug_sub",
                  "quot_complex": "P_quot", "quot_augmentation": "aug_quot"},
        },
    }
    path = tmp_path / "horseshoe.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    loaded = load_document(str(path))
    again = document_from_jsonable(document_to_jsonable(loaded))
    assert document_to_jsonable(again) == document_to_jsonable(loaded)
    # the named horseshoe actually fills in
    from exactcat.documents import HorseshoeDiagram
    from exactcat.resolutions import horseshoe
    h = loaded.diagrams["h"]
    assert isinstance(h, HorseshoeDiagram)
    res = horseshoe(h.sequence, h.sub, h.quot)
    assert res.middle.length == 1
