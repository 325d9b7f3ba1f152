import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from gclab.cli import run
from gclab.cohomology import Cochain, differential
from gclab.morita import linking_groupoid, validate_bitorsor
from gclab.specfile import load_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


def test_validate_ok():
    code, text = call("validate", SPECS / "z2_cocycle.yaml")
    assert code == 0
    assert "bad: cochain ok (degree 2, not a cocycle)" in text


def test_validate_broken_table():
    code, data = call_json("validate", SPECS / "broken_cayley.yaml")
    assert code == 1
    assert data["error"]["type"] == "NotAssociative"
    assert data["error"]["witness"] == [1, 1, 1]


def test_cohomology_text():
    code, text = call("cohomology", "--degree", "2", SPECS / "z2_cocycle.yaml")
    assert code == 0
    assert text.splitlines()[0] == "H² ≅ ℤ/2"


def test_cohomology_check_mode():
    code, data = call_json("cohomology", "--degree", "1", "--check", SPECS / "z2_cocycle.yaml")
    assert code == 0 and data["invariant_factors"] == [2]


def test_extension_and_non_cocycle():
    code, data = call_json("extension", "--cocycle", "h", SPECS / "z2_cocycle.yaml")
    assert code == 0 and data["order"] == 4 and data["abelian"]
    code, data = call_json("extension", "--cocycle", "bad", SPECS / "z2_cocycle.yaml")
    assert code == 2 and data["witness"] == [0, 0, 1]


def test_cocycle_from_section():
    code, data = call_json("cocycle", "--extension", "E", "--section", "s",
                           SPECS / "z2_cocycle.yaml")
    assert code == 0
    assert data["class"] == [1]


def test_morita_json_certificate_revalidates():
    code, data = call_json("morita", SPECS / "pair3.yaml", SPECS / "point.yaml")
    assert code == 0 and data["equivalent"]
    X = load_spec(SPECS / "pair3.yaml").only("groupoid")
    Y = load_spec(SPECS / "point.yaml").only("groupoid")
    b = data["bitorsor"]
    n = len(b["aX"])
    L = np.full((X.n_morphisms, n), -1, dtype=np.int64)
    R = np.full((n, Y.n_morphisms), -1, dtype=np.int64)
    for f, q, r in b["left"]:
        L[f, q] = r
    for q, g, r in b["right"]:
        R[q, g] = r
    B = validate_bitorsor(X, Y, b["aX"], b["aY"], L, R)
    linking_groupoid(B)


def test_morita_negative():
    code, data = call_json("morita", SPECS / "z2_object.yaml", SPECS / "z3_object.yaml")
    assert code == 2 and not data["equivalent"]


def test_eliminable_certificate_revalidates():
    code, data = call_json("eliminable", SPECS / "explicit_equivariant.yaml")
    assert code == 0 and data["eliminable"] and data["search_agrees"]
    ctx, _, _ = load_spec(SPECS / "explicit_equivariant.yaml").only("equivariant")
    h = Cochain.from_records(ctx.coeff, 2, {tuple(a): v for a, v in data["cocycle"]})
    g = Cochain.from_records(ctx.coeff, 1, {tuple(a): v for a, v in data["coboundary"]})
    assert differential(g) == h


def test_eliminable_negative():
    code, text = call("eliminable", SPECS / "heisenberg_n2.yaml")
    assert code == 2
    assert "class = (0,1,1) nontrivial; NOT eliminable" in text


def test_baer_sum_classes_add():
    code, data = call_json("baer", SPECS / "torsor_z22_a.yaml", SPECS / "torsor_z22_b.yaml")
    assert code == 0 and data["match"]
    assert data["classes"]["sum"] == [1, 1, 0]


def test_demos():
    code, data = call_json("demo", "quantum-torus", "--n", "3", "--p", "7")
    assert code == 0 and data["class"] == [1, 2, 1] and data["points_checked"] == 36
    code, data = call_json("demo", "dxg", "--orbits", "1", "--ext", "Z4")
    assert code == 0 and data["size"] == 4 and data["isomorphism"] is not None
    code, data = call_json("demo", "heisenberg", "--n", "3")
    assert code == 0 and data["order"] == 27 and not data["abelian"]


def test_bad_congruence_is_invalid_input():
    code, text = call("demo", "quantum-torus", "--n", "3", "--p", "5")
    assert code == 1
    assert "BadCongruence" in text and "witness" in text


def test_missing_file_is_io_error():
    code, data = call_json("validate", SPECS / "does_not_exist.yaml")
    assert code == 3 and data["error"]["type"] == "IOError"


def test_output_is_deterministic():
    a = call("demo", "heisenberg", "--n", "2")
    b = call("demo", "heisenberg", "--n", "2")
    assert a == b


def test_out_directory(tmp_path):
    code, _ = call("demo", "heisenberg", "--n", "2", "--out", tmp_path)
    assert code == 0
    tsv = (tmp_path / "report.tsv").read_text(encoding="utf-8")
    assert tsv.startswith("# summary\n")
    assert "# cayley" in tsv
    png = (tmp_path / "cayley.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    first = png
    call("demo", "heisenberg", "--n", "2", "--out", tmp_path)
    assert (tmp_path / "cayley.png").read_bytes() == first


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gclab.cli", "cohomology", "--degree", "2",
                           str(SPECS / "z2_cocycle.yaml")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "ℤ/2" in proc.stdout


def test_usage_error_exits_nonzero():
    with pytest.raises(SystemExit) as err:
        run(["cohomology"], stdout=io.StringIO(), stderr=io.StringIO())
    assert err.value.code == 2
