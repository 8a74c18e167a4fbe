import random

import pytest
from hypothesis import given, settings, strategies as st

from tropjac import serialize as ser
from tropjac.generators import random_bounded_hom, random_lex_curve, theta
from tropjac.linalg import Vec
from tropjac.monodromy import MonodromyHom
from tropjac.ordmonoid import SharpMonoid, ValuationOrder
from tropjac.picard import TroPicClass
from tropjac.plfun import PLFunction
from tropjac.tropcurve import Divisor


def test_rational_encoding():
    assert ser.encode_rational(3) == 3
    assert ser.encode_rational("6/4") == "3/2"
    assert ser.encode_rational(2**60) == str(2**60)
    assert ser.decode_rational(str(2**60)) == 2**60
    assert ser.decode_rational("-7/3") == ser.decode_rational(" -14 / 6 ".replace(" ", ""))
    with pytest.raises(ValueError):
        ser.decode_rational(True)
    with pytest.raises(ValueError):
        ser.decode_rational(1.5)


@given(st.fractions(max_denominator=10**6) | st.integers(-(2**70), 2**70).map(lambda n: n))
def test_rational_round_trip(x):
    assert ser.decode_rational(ser.encode_rational(x)) == x


def _twice(doc, to_obj, to_doc):
    text = ser.dumps(doc)
    text2 = ser.dumps(to_doc(to_obj(ser.loads(text, _kind(doc)))))
    assert text == text2
    return text


def _kind(doc):
    if "edges" in doc:
        return "curve"
    if "values" in doc:
        return "hom"
    if "mu" in doc:
        return "class"
    if "slopes" in doc:
        return "plfunction"
    return "monoid"


def test_monoid_and_order_round_trip():
    M = SharpMonoid(2, [(2, 1), (1, 2)])
    _twice(ser.monoid_doc(M), ser.monoid_from_doc, ser.monoid_doc)
    V = ValuationOrder(M, [(1, 1), (1, 0)])
    text = _twice(ser.monoid_doc(V), ser.monoid_from_doc, ser.monoid_doc)
    assert '"format": 1' in text


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_curve_hom_class_round_trip(seed):
    rng = random.Random(seed)
    C = random_lex_curve(rng)
    _twice(ser.curve_to_doc(C), ser.curve_from_doc, ser.curve_to_doc)
    mu = random_bounded_hom(rng, C)
    if mu is None:
        return
    _twice(ser.hom_to_doc(mu), ser.hom_from_doc, ser.hom_to_doc)
    D = Divisor([rng.randint(-2, 2) for _ in range(C.n_vertices)])
    cls = TroPicClass(C, D, mu)
    _twice(ser.class_to_doc(cls), lambda d: ser.class_from_doc(d, C), ser.class_to_doc)


def test_rational_lengths_and_basis_round_trip():
    T = theta(["5/2", 3, "7/3"])
    doc = ser.curve_to_doc(T)
    assert doc["basis"] == [[1, -1, 0], [0, 1, -1]]
    assert doc["edges"][0]["length"] == ["5/2"]
    _twice(doc, ser.curve_from_doc, ser.curve_to_doc)


def test_plfunction_round_trip():
    T = theta([2, 2, 2])
    f = PLFunction.from_slopes(T, (1, 1, 1))
    _twice(ser.plf_to_doc(f), lambda d: ser.plf_from_doc(d, T), ser.plf_to_doc)


def test_schema_errors_carry_paths():
    doc = ser.curve_to_doc(theta([1, 2, 3]))
    doc["edges"][1]["length"] = [1.5]
    with pytest.raises(ser.SchemaError) as info:
        ser.curve_from_doc(doc)
    assert any(e.startswith("/edges/1/length/0") for e in info.value.errors)
    doc = ser.curve_to_doc(theta([1, 2, 3]))
    del doc["format"]
    with pytest.raises(ser.SchemaError) as info:
        ser.curve_from_doc(doc)
    assert "format" in str(info.value)
    doc = ser.curve_to_doc(theta([1, 2, 3]))
    doc["edges"][0]["to"] = "nowhere"
    with pytest.raises(ser.SchemaError) as info:
        ser.curve_from_doc(doc)
    assert info.value.errors[0].startswith("/edges/0/to")


def test_invalid_json():
    with pytest.raises(ser.SchemaError):
        ser.loads("{not json", "hom")


def test_hom_values_are_exact():
    mu = MonodromyHom([Vec(["1/3", 2**60])])
    doc = ser.hom_to_doc(mu)
    assert doc["values"] == [["1/3", str(2**60)]]
    assert ser.hom_from_doc(doc) == mu
