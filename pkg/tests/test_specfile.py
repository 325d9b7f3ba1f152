from pathlib import Path

import pytest

from gclab.errors import InvalidInput, NotAssociative
from gclab.specfile import SpecDocument, SpecError, load_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"


@pytest.mark.parametrize("name", sorted(p.name for p in SPECS.glob("*.yaml")
                                        if p.name != "broken_cayley.yaml"))
def test_bundled_specs_build(name):
    doc = load_spec(SPECS / name)
    built = doc.build_all()
    assert set(built) == set(doc.records)


def test_broken_table_reports_witness():
    with pytest.raises(NotAssociative) as err:
        load_spec(SPECS / "broken_cayley.yaml").build_all()
    assert err.value.witness is not None


@pytest.mark.parametrize("text,fragment", [
    ("G: {kind: group, cyclic: [2], colour: red}", "unknown key"),
    ("G: {kind: grup, cyclic: [2]}", "unknown kind"),
    ("A: {kind: abelian}", "missing key"),
    ("G: {kind: group, cyclic: [2], table: [[0]]}", "exactly one"),
    ("M: {kind: module, group: G, coeffs: A, action: trivial}", "undefined record"),
    ("[1, 2]", "mapping"),
    ("G: {kind: group, cyclic: [2]\n", "YAML"),
])
def test_malformed_documents(text, fragment):
    with pytest.raises(SpecError) as err:
        SpecDocument.from_text(text).build_all()
    assert fragment in str(err.value)


def test_wrong_reference_kind():
    text = """
G: {kind: group, cyclic: [2]}
M: {kind: module, group: G, coeffs: G, action: trivial}
"""
    with pytest.raises(SpecError):
        SpecDocument.from_text(text).build_all()


def test_circular_reference():
    text = """
E: {kind: extension, cocycle: h}
h: {kind: cochain, module: E, degree: 2}
"""
    with pytest.raises(SpecError):
        SpecDocument.from_text(text).build_all()


def test_cochain_keys_need_right_arity():
    text = """
G: {kind: group, cyclic: [2]}
A: {kind: abelian, moduli: [2]}
M: {kind: module, group: G, coeffs: A, action: trivial}
h: {kind: cochain, module: M, degree: 2, values: {"1": 1}}
"""
    with pytest.raises(SpecError):
        SpecDocument.from_text(text).build_all()


def test_only_and_get():
    doc = load_spec(SPECS / "z2_cocycle.yaml")
    assert doc.only("module").group.order == 2
    h = doc.get("h", "cochain")
    assert h.to_records() == {(1, 1): (1,)}
    with pytest.raises(SpecError):
        doc.only("cochain")
    with pytest.raises(InvalidInput):
        doc.get("h", "group")
