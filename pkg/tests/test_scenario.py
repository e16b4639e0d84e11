"""Scenario file schema: validation, round trips and stable output."""

import json
import math

import numpy as np
import pytest

from capax import INF
from capax.scenario import (SchemaError, capacity_from_spec, capacity_to_spec,
                            dump_result, function_from_spec, load_document,
                            space_from_spec, space_to_spec, subset_from_spec,
                            subset_to_spec, validate_document)
from capax.capacity import make_additive, make_distorted, make_sup_capacity


def test_unknown_top_level_key_rejected():
    with pytest.raises(SchemaError):
        validate_document({"space": {"n": 2}, "bogus": 1})


def test_unknown_nested_key_rejected():
    with pytest.raises(SchemaError):
        space_from_spec({"n": 2, "shape": "round"})
    with pytest.raises(SchemaError):
        capacity_from_spec({"type": "additive", "weights": [1, 1], "extra": 0},
                           space_from_spec({"n": 2})[0])


def test_space_needs_n_or_grid():
    with pytest.raises(SchemaError):
        space_from_spec({})


def test_grid_space_carries_capacity():
    space, cap = space_from_spec({"grid": {"a": 0.0, "b": 1.0, "steps": 4}})
    assert space.n == 4
    assert cap is not None
    assert cap(space.full_mask) == pytest.approx(1.0)


def test_capacity_specs_roundtrip():
    space, _ = space_from_spec({"n": 3})
    for c in (make_additive([0.2, 0.3, 0.5]),
              make_distorted([0.2, 0.3, 0.5], 0.7),
              make_sup_capacity(space)):
        spec = capacity_to_spec(c)
        c2 = capacity_from_spec(spec, space)
        for mask in range(8):
            assert c2(mask) == pytest.approx(c(mask))


def test_function_value_lists_and_formulas():
    space, _ = space_from_spec({"grid": {"a": 0.0, "b": 1.0, "steps": 3}})
    f = function_from_spec("x^2", space)
    assert np.allclose(f.values, space.coord_array() ** 2)
    g = function_from_spec([0.1, "inf", 0.5], space)
    assert g.values[1] == INF
    with pytest.raises(SchemaError):
        function_from_spec([0.1, 0.2], space)  # wrong length
    with pytest.raises(SchemaError):
        function_from_spec([0.1, -0.2, 0.3], space)
    with pytest.raises(SchemaError):
        function_from_spec(17, space)


def test_subset_specs():
    space, _ = space_from_spec({"n": 4})
    assert subset_from_spec("all", space) == 0b1111
    assert subset_from_spec([0, 2], space) == 0b0101
    assert subset_to_spec(0b1111, space) == "all"
    assert subset_to_spec(0b0101, space) == [0, 2]
    with pytest.raises(SchemaError):
        subset_from_spec([4], space)
    with pytest.raises(SchemaError):
        subset_from_spec([True], space)


def test_numbers_must_be_finite_nonnegative():
    space, _ = space_from_spec({"n": 2})
    with pytest.raises(SchemaError):
        capacity_from_spec({"type": "additive", "weights": [1.0, float("nan")]},
                           space)
    with pytest.raises(SchemaError):
        capacity_from_spec({"type": "additive", "weights": [1.0, -1.0]}, space)


def test_load_document_unwraps_result_files(tmp_path):
    doc = {"space": {"n": 2}, "functions": {"f": [0.1, 0.9]}}
    inner = tmp_path / "in.json"
    inner.write_text(json.dumps(doc))
    assert load_document(str(inner)) == doc
    wrapped = tmp_path / "res.json"
    wrapped.write_text(json.dumps({"input": doc, "report": {"value": 1}}))
    assert load_document(str(wrapped)) == doc


def test_load_document_rejects_non_objects(tmp_path):
    p = tmp_path / "arr.json"
    p.write_text("[1, 2]")
    with pytest.raises(SchemaError):
        load_document(str(p))
    with pytest.raises(SchemaError):
        load_document(str(tmp_path / "missing.json"))


def test_dump_result_is_byte_stable_and_handles_infinity(tmp_path):
    doc = {"report": {"value": math.inf, "b": np.float64(0.5),
                      "arr": np.array([1.0, 2.0])},
           "input": {"space": {"n": 1}}}
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    dump_result(str(p1), doc)
    dump_result(str(p2), doc)
    b1 = p1.read_bytes()
    assert b1 == p2.read_bytes()
    assert b1.endswith(b"\n")
    parsed = json.loads(b1)
    assert parsed["report"]["value"] == "inf"
    assert parsed["report"]["arr"] == [1.0, 2.0]
