import pytest

from toricell.inputs import (
    InputError,
    load_document,
    parse_document,
    quiver_document,
)

from conftest import fixture_documents, input_path


def test_all_fixture_documents_load():
    for name, raw in fixture_documents():
        doc = parse_document(raw)
        assert doc.kind == raw["kind"]
        if name == "fourfold.json":
            # building this quiver takes minutes; covered by its own tests
            continue
        Q = doc.quiver()
        assert Q.n_vertices >= 1


def test_unknown_kind_rejected():
    with pytest.raises(InputError):
        parse_document({"kind": "nonsense"})
    with pytest.raises(InputError):
        parse_document([1, 2, 3])


def test_unknown_option_rejected():
    raw = {"kind": "toric",
           "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
           "collection": [[0, 0, 0]],
           "options": {"bogus": 1}}
    with pytest.raises(InputError):
        parse_document(raw)


def test_cyclic_quotient_document():
    doc = load_document(input_path("mckay_z6_123.json"))
    assert doc.group.order() == 6
    assert doc.quiver().n_vertices == 6


def test_dimer_quiver_roundtrip(quiver_four_sheaves):
    raw = quiver_document(quiver_four_sheaves)
    doc = parse_document(raw)
    Q = doc.quiver()
    assert Q.n_vertices == quiver_four_sheaves.n_vertices
    assert [(a.tail, a.head, a.label) for a in Q.arrows] == \
        [(a.tail, a.head, a.label) for a in quiver_four_sheaves.arrows]


def test_malformed_arrow_rejected():
    raw = {"kind": "dimer_quiver", "vertices": 2,
           "arrows": [[0, 1, "x"]]}
    with pytest.raises(InputError):
        parse_document(raw)
