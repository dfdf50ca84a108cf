import json

import pytest
from hypothesis import given, settings

from protodirac.catalog import BUILTINS, builtin
from protodirac.document import DocumentError, InputDocument, dumps, load, loads, save
from strategies import point_constants

GOOD = """\
name: tiny
rank: 2
base_dim: 1
bracket_A:
  - {i: 1, j: 2, k: 2, coeff: "q1 + 1/2"}
anchor_A:
  - {i: 1, alpha: 1, coeff: 1}
"""


def test_parse_basic_document():
    doc = loads(GOOD)
    assert doc.rank == 2 and doc.base_dim == 1 and doc.name == "tiny"
    P = doc.to_proto()
    assert str(P.S_A.constant(1, 2, 2)) == "1/2 + q1"
    assert P.S_A.anchor_entry(1, 1) == 1


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtin_round_trip(name, tmp_path):
    doc = InputDocument.from_proto(builtin(name), description="round trip")
    path = tmp_path / "doc.yaml"
    save(doc, str(path))
    again = load(str(path))
    assert again == doc
    assert dumps(again) == path.read_text()


@settings(max_examples=20, deadline=None)
@given(point_constants(4))
def test_random_round_trip(P):
    doc = InputDocument.from_proto(P)
    assert loads(dumps(doc)) == doc
    Q = loads(dumps(doc)).to_proto()
    assert (Q.S_A, Q.S_star, Q.tau, Q.phi) == (P.S_A, P.S_star, P.tau, P.phi)


def test_json_input_accepted():
    data = {"rank": 3, "base_dim": 0, "tau": [{"i": 1, "j": 2, "k": 3, "coeff": "1/3"}]}
    doc = loads(json.dumps(data))
    assert str(doc.tau[(1, 2, 3)]) == "1/3"


def test_zero_entries_dropped():
    doc = loads("rank: 3\nbase_dim: 0\nphi: [{i: 1, j: 2, k: 3, coeff: 0}]\n")
    assert doc.phi == {}


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("rank: 3\nbase_dim: 0\ncolour: red\n", 3, "unknown field 'colour'"),
        ("rank: 3\nbase_dim: 0\nrank: 4\n", 3, "duplicate field"),
        ("rank: 3\n", 1, "missing required field 'base_dim'"),
        ("rank: 3\nbase_dim: 0\nbracket_A:\n  - {i: 2, j: 1, k: 1, coeff: 1}\n", 4, "i < j"),
        ("rank: 3\nbase_dim: 0\nbracket_A:\n  - {i: 1, j: 4, k: 1, coeff: 1}\n", 4, "out of range"),
        ("rank: 3\nbase_dim: 0\ntau:\n  - {i: 1, j: 3, k: 2, coeff: 1}\n", 4, "i < j < k"),
        ("rank: 3\nbase_dim: 0\ntau:\n  - {i: 1, j: 2, k: 3, coeff: 0.5}\n", 4, "no floats"),
        ("rank: 3\nbase_dim: 0\ntau:\n  - {i: 1, j: 2, k: 3, coeff: q1}\n", 4, "bad coefficient"),
        ("rank: 3\nbase_dim: 1\nanchor_A:\n  - {i: 1, alpha: 2, coeff: 1}\n", 4, "alpha = 2"),
        ("rank: 3\nbase_dim: 0\ntau:\n  - {i: 1, j: 2, k: 3, c: 1}\n", 4, "unknown field 'c'"),
        ("rank: 3\nbase_dim: 0\ntau:\n  - {i: 1, j: 2, k: 3}\n", 4, "lacks coeff"),
        ("rank: x\nbase_dim: 0\n", 1, "must be an integer"),
        ("rank: 3\nbase_dim: 0\nphi:\n  - {i: 1, j: 2, k: 3, coeff: 1}\n  - {i: 1, j: 2, k: 3, coeff: 2}\n",
         5, "repeated"),
    ],
)
def test_validation_messages_carry_lines(text, line, fragment):
    with pytest.raises(DocumentError) as err:
        loads(text, source="doc.yaml")
    msg = str(err.value)
    assert msg.startswith(f"doc.yaml:{line}:"), msg
    assert fragment in msg


def test_unparsable_and_empty_inputs():
    with pytest.raises(DocumentError):
        loads("rank: [unclosed\n")
    with pytest.raises(DocumentError):
        loads("")
    with pytest.raises(DocumentError):
        load("/nonexistent/file.yaml")
