import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given

from scx.errors import InvalidMap, NegativeWeight, ParseError
from scx.fixtures import triangle_two_pendants
from scx.io import (
    complex_to_dict,
    loads_complex,
    loads_map,
    map_to_dict,
    name_table,
    parse_complex,
    parse_complex_document,
    parse_map,
    serialize,
    write_complex,
)

from strategies import complexes, degenerate_complexes

FIXTURES = Path(__file__).parent / "fixtures"


def test_parse_fixture_matches_builder():
    assert parse_complex(FIXTURES / "tri2p.json") == triangle_two_pendants()


def test_string_names_are_ranked_in_sorted_order():
    doc = parse_complex_document(FIXTURES / "tpp.json")
    assert doc.names == {"1'": 0, "2'": 1, "3'": 2, "5'": 3}
    assert doc.face_names((0, 3)) == ["1'", "5'"]


def test_integer_names_keep_their_value():
    assert name_table({"10", "2"}) == {"10": 10, "2": 2}
    assert name_table({"10", "b"}) == {"10": 0, "b": 1}


def test_weights_and_isolated_vertices():
    text = json.dumps({
        "format": "scx-complex", "version": 1,
        "facets": [["a", "b"]], "vertices": ["z"],
        "weights": [{"face": ["b", "a"], "weight": "1/3"}],
        "default_weight": 2,
    })
    doc = loads_complex(text)
    K = doc.complex
    assert K.weight(doc.face_from_names(["a", "b"])) == Fraction(1, 3)
    assert K.weight(doc.face_from_names(["z"])) == 2


def test_unknown_field_reports_position():
    text = '{\n  "facets": [[1, 2]],\n  "colour": "red"\n}'
    with pytest.raises(ParseError) as info:
        loads_complex(text, "x.json")
    assert (info.value.line, info.value.column) == (3, 3)
    assert str(info.value).startswith("x.json:3:3:")


@pytest.mark.parametrize("text, fragment", [
    ("[1, 2]", "top level"),
    ('{"facets": 3}', "facets"),
    ('{"facets": [[]]}', "non-empty"),
    ('{"facets": [[1]], "default_weight": "one"}', "rational"),
    ('{"facets": [[1]], "default_weight": "1/0"}', "zero denominator"),
    ('{"facets": [[1]], "format": "other"}', "format"),
    ('{"facets": [[1]], "weights": [{"face": [7], "weight": 1}]}', "unknown face"),
    ('{"facets": [[1]], "degenerate": "yes"}', "degenerate"),
    ('{"facets": [[1]', "Expecting"),
])
def test_malformed_documents(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        loads_complex(text)


def test_negative_weight_is_rejected():
    with pytest.raises(NegativeWeight):
        loads_complex('{"facets": [[1, 2]], "weights": [{"face": [1], "weight": "-1/2"}]}')


@given(degenerate_complexes())
def test_serialize_round_trip(K):
    assert loads_complex(serialize(K)).complex == K


@given(complexes())
def test_round_trip_with_string_labels(K):
    labels = {v: f"v{v:02d}" for v in K.vertices}
    doc = loads_complex(serialize(K, labels))
    back = {doc.names[labels[v]]: v for v in K.vertices}
    relabeled = {tuple(sorted(back[x] for x in f)): w for f, w in doc.complex.weights.items()}
    assert relabeled == dict(K.weights)


def test_canonical_document_lists_only_unusual_weights():
    K = triangle_two_pendants().with_weights({(1, 2): Fraction(1, 2)})
    d = complex_to_dict(K)
    assert d["default_weight"] == "1"
    assert d["weights"] == [{"face": ["1", "2"], "weight": "1/2"}]
    assert d["facets"] == [["3", "4"], ["3", "5"], ["1", "2", "3"]]


def test_write_complex(tmp_path):
    out = tmp_path / "k.json"
    write_complex(triangle_two_pendants(), out)
    assert parse_complex(out) == triangle_two_pendants()


def test_map_references_resolve_next_to_the_map_file():
    doc = parse_map(FIXTURES / "p5_tpp.map.json")
    assert doc.map.vertex_map[4] == doc.target.names["1'"]
    assert map_to_dict(doc, "p5.json", "tpp.json")["vertex_map"][3] == ["4", "1'"]


def test_map_errors():
    src = parse_complex_document(FIXTURES / "p5.json")
    tgt = parse_complex_document(FIXTURES / "tpp.json")
    with pytest.raises(ParseError, match="without an image"):
        loads_map('{"vertex_map": [["1", "1\'"]]}', "", src, tgt)
    with pytest.raises(ParseError, match="unknown target vertex"):
        loads_map('{"vertex_map": [["1", "9"]]}', "", src, tgt)
    with pytest.raises(ParseError, match="unknown field"):
        loads_map('{"vertex_map": [], "extra": 1}', "", src, tgt)
    # edge 23 would land on 3'5', which is not a face
    pairs = [["1", "2'"], ["2", "3'"], ["3", "5'"], ["4", "1'"], ["5", "1'"]]
    with pytest.raises(InvalidMap):
        loads_map(json.dumps({"vertex_map": pairs}), "", src, tgt)


def test_map_accepts_an_object_for_vertex_map():
    src = parse_complex_document(FIXTURES / "hexagon.json")
    tgt = parse_complex_document(FIXTURES / "triangle.json")
    vm = {str(i): str(i % 3) for i in range(6)}
    doc = loads_map(json.dumps({"vertex_map": vm}), "", src, tgt)
    assert len(doc.map.vertex_map) == 6
