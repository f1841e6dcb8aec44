import json

import pytest
from hypothesis import given

from domdual.errors import ParseError, ValidationError
from domdual.fixtures import chain2, diamond, l8
from domdual.io import (StructureDocument, load_structure, parse_map, parse_structure,
                        serialize_structure, structure_document, to_dot)

from conftest import posets
import oracles

DIAMOND_JSON = ('{"kind":"lattice","labels":["0","a","b","1"],'
                '"covers":[["0","a"],["0","b"],["a","1"],["b","1"]]}')


def test_parse_diamond():
    doc = parse_structure(DIAMOND_JSON)
    assert doc.kind == "lattice"
    assert oracles.isomorphic(doc.to_poset(), diamond())


def test_serialize_fixed_order_and_sorted_covers():
    doc = StructureDocument("poset", ("b", "a"), (("b", "a"), ("b", "a")), name="x")
    text = serialize_structure(doc)
    assert list(json.loads(text)) == ["kind", "name", "labels", "covers"]
    assert json.loads(text)["covers"] == [["b", "a"]]


def test_roundtrip_canonical_document():
    doc = parse_structure(DIAMOND_JSON)
    again = parse_structure(serialize_structure(doc))
    assert again == doc.canonical()
    assert serialize_structure(again) == serialize_structure(doc)


@given(posets())
def test_roundtrip_generated(P):
    doc = structure_document(P, name="P")
    assert parse_structure(serialize_structure(doc)) == doc
    assert (parse_structure(serialize_structure(doc)).to_poset().leq == P.leq).all()


def test_duplicate_label():
    with pytest.raises(ValidationError):
        parse_structure('{"labels":["a","a"],"covers":[]}')


def test_cycle_carries_path():
    with pytest.raises(ValidationError) as info:
        parse_structure('{"labels":["a","b"],"covers":[["a","b"],["b","a"]]}')
    assert info.value.cycle in (("a", "b", "a"), ("b", "a", "b"))


@pytest.mark.parametrize("text", [
    '{"labels":["a"],"covers":[["a","z"]]}',
    '{"labels":"ab"}',
    '{"kind":"group","labels":[]}',
    '{"labels":[],"extra":1}',
    '[1, 2]',
])
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        parse_structure(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_structure('{\n  "labels": [,]\n}')
    assert info.value.line == 2 and info.value.column == 14


def test_map_document_with_names(tmp_path):
    (tmp_path / "d.json").write_text(DIAMOND_JSON)
    m = parse_map('{"source":"d.json","target":"CHAIN2",'
                  '"assignments":{"0":"0","a":"0","b":"1","1":"1"}}', tmp_path)
    assert m.table() == (0, 0, 1, 1)
    assert m.target.to_poset() == chain2()


def test_map_must_be_total():
    with pytest.raises(ValidationError):
        parse_map('{"source":"CHAIN2","target":"CHAIN2","assignments":{"0":"0"}}')
    with pytest.raises(ValidationError):
        parse_map('{"source":"CHAIN2","target":"CHAIN2","assignments":{"0":"0","1":"q"}}')


def test_fixture_lookup():
    assert load_structure("diamond").kind == "lattice"
    assert load_structure("A2").kind == "poset"
    with pytest.raises(FileNotFoundError):
        load_structure("no-such-thing")


def test_dot_chain2():
    dot = to_dot(chain2(), "CHAIN2")
    assert dot.splitlines()[0] == 'digraph "CHAIN2" {'
    assert "  rankdir=BT;" in dot
    assert [l for l in dot.splitlines() if "->" in l] == ['  "0" -> "1";']


def test_dot_counts():
    for P, nodes, edges in ((diamond(), 4, 4), (l8(), 8, 9)):
        lines = to_dot(P).splitlines()
        assert sum("[label=" in l for l in lines) == nodes
        assert sum("->" in l for l in lines) == edges
