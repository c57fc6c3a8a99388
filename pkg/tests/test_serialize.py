from fractions import Fraction

import pytest

from fixtures import d1_structure, example_c1, random_chain_map, random_complex, seeded
from varstrata import serialize
from varstrata.errors import ParseError
from varstrata.linalg import GF, QQ, Matrix
from varstrata.strata import build_subcomplex_witness


def test_matrix_round_trip_keeps_fractions():
    M = Matrix([[Fraction(1, 2), -3], [0, Fraction(-7, 4)]], QQ)
    rows = serialize.matrix_to_json(M)
    assert rows == [["1/2", "-3"], ["0", "-7/4"]]
    assert serialize.matrix_from_json(rows, QQ, (2, 2)) == M


def test_matrix_shape_checked():
    with pytest.raises(ParseError):
        serialize.matrix_from_json([["1"]], QQ, (2, 1))
    with pytest.raises(ParseError):
        serialize.matrix_from_json([[0.5]], QQ, (1, 1))
    with pytest.raises(ParseError):
        serialize.matrix_from_json([[True]], QQ, (1, 1))


def test_complex_round_trip():
    rng = seeded(31)
    for _ in range(20):
        C = random_complex(rng)
        doc = serialize.complex_to_json(C)
        back = serialize.complex_from_json(doc)
        assert back.dims == C.dims and serialize.complex_to_json(back) == doc


def test_complex_over_prime_field():
    C = example_c1().over(GF(3))
    doc = serialize.complex_to_json(C)
    assert doc["field"] == "GF(3)"
    assert serialize.complex_from_json(doc).field == GF(3)


def test_chain_map_round_trip():
    rng = seeded(32)
    for _ in range(10):
        V, W = random_complex(rng, max_len=3), None
        W = random_complex(rng, v=tuple(rng.randint(0, 3) for _ in V.dims))
        f = random_chain_map(V, W, rng)
        doc = serialize.chain_map_to_json(f)
        assert serialize.chain_map_to_json(serialize.chain_map_from_json(doc)) == doc


def test_subcomplex_and_dgla_round_trip():
    W = example_c1()
    doc = serialize.subcomplex_to_json(build_subcomplex_witness(W, (1, 1), (0, 0)))
    W2, bases = serialize.subcomplex_from_json(doc)
    assert [b.ncols for b in bases] == [1, 1] and W2.dims == (2, 2)
    e = d1_structure()
    doc = serialize.dgla_to_json(e)
    assert serialize.dgla_from_json(doc) == e


def test_detect_kind():
    assert serialize.detect_kind({"dims": [1]}) == "complex"
    assert serialize.detect_kind({"comps": []}) == "chain-map"
    assert serialize.detect_kind({"bases": []}) == "subcomplex"
    assert serialize.detect_kind({"e0": {}}) == "dgla"
    for bad in ({}, []):
        with pytest.raises(ParseError):
            serialize.detect_kind(bad)


def test_malformed_documents():
    with pytest.raises(ParseError):
        serialize.complex_from_json({"dims": [2, -1], "diffs": [[]]})
    with pytest.raises(ParseError):
        serialize.complex_from_json({"dims": [1, 1], "diffs": []})
    with pytest.raises(ParseError):
        serialize.dgla_from_json({"e0": {}})
    with pytest.raises(ParseError):
        serialize.parse_json_text("[1,")
