import json
import math

from hypothesis import given, strategies as st

from strategic_complexity.serialize import dumps_csv, dumps_json, format_float


def _reserialize(text):
    return dumps_json(json.loads(text))


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(x):
    assert float(format_float(x)) == x


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-10**6, 10**6)
    | st.floats(allow_nan=False, allow_infinity=False) | st.text(max_size=8),
    lambda children: st.lists(children, max_size=4) | st.dictionaries(st.text(max_size=5), children, max_size=4),
    max_leaves=20,
)


@given(json_values)
def test_json_round_trip_is_byte_identical(value):
    text = dumps_json(value)
    assert _reserialize(text) == text


def test_keys_sorted_and_nonfinite_null():
    text = dumps_json({"b": 1.0, "a": math.inf, "c": [0.1]})
    assert text == '{"a":null,"b":1,"c":[0.10000000000000001]}\n'


def test_csv_layout():
    out = dumps_csv(("x", "y", "flag"), [{"x": 0.5, "y": None, "flag": True}, {"x": 1}])
    assert out == "x,y,flag\n0.5,,true\n1,,\n"
    assert "\r" not in out
