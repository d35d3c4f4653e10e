import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttp2.errors import DomainError, MetricError, ParseError, ShapeError
from ttp2.instances import (
    DistanceMatrix,
    generate_instance,
    load_instance,
    serialize_instance,
    validate_metric,
)


def test_zero_metric_is_valid():
    dm = load_instance("4\n" + "\n".join(["0 0 0 0"] * 4))
    assert dm.n == 4
    assert validate_metric(dm) == []


def test_symmetry_violation_names_cell():
    text = "4\n0 1 1 1\n2 0 1 1\n1 1 0 1\n1 1 1 0"
    with pytest.raises(MetricError) as err:
        load_instance(text)
    assert "symmetry" in str(err.value)
    assert "[0][1]" in str(err.value)


def test_odd_n_is_shape_error():
    rows = ["0 1 1 1 1", "1 0 1 1 1", "1 1 0 1 1", "1 1 1 0 1", "1 1 1 1 0"]
    with pytest.raises(ShapeError):
        load_instance("\n".join(rows), fmt="bare")


def test_nonsquare_is_shape_error():
    with pytest.raises(ShapeError):
        load_instance("0 1 1\n1 0 1", fmt="bare")


def test_malformed_numeric_is_parse_error():
    with pytest.raises(ParseError):
        load_instance("2\n0 x\nx 0")


def test_triangle_violation_carries_witness():
    d = np.array(
        [
            [0, 1, 10, 4],
            [1, 0, 1, 4],
            [10, 1, 0, 4],
            [4, 4, 4, 0],
        ],
        dtype=float,
    )
    report = validate_metric(DistanceMatrix(4, d))
    kinds = {v.kind for v in report}
    assert kinds == {"triangle"}
    witness = next(v for v in report if v.indices[0] == 0 and v.indices[2] == 2)
    assert witness.indices == (0, 1, 2)  # d[0][2] > d[0][1] + d[1][2]


def test_circle_chords_are_exact():
    dm = generate_instance("circle", 4, seed=99)
    assert abs(dm.d[0][1] - math.sqrt(2.0)) < 1e-12
    assert abs(dm.d[0][2] - 2.0) < 1e-12


def test_generator_rejects_bad_n():
    with pytest.raises(DomainError):
        generate_instance("euclidean", 7, 1)
    with pytest.raises(DomainError):
        generate_instance("euclidean", 2, 1)
    with pytest.raises(DomainError):
        generate_instance("no-such-kind", 8, 1)


def test_generators_deterministic():
    a = generate_instance("euclidean", 12, 7)
    b = generate_instance("euclidean", 12, 7)
    assert a == b
    c = generate_instance("euclidean", 12, 8)
    assert a != c


@settings(max_examples=30, deadline=None)
@given(
    kind=st.sampled_from(["euclidean", "circle", "random-metric"]),
    n=st.sampled_from([4, 6, 8, 10, 14, 20]),
    seed=st.integers(min_value=0, max_value=2**63 - 1),
)
def test_every_generated_instance_is_metric(kind, n, seed):
    dm = generate_instance(kind, n, seed)
    assert validate_metric(dm, eps_tri=1e-9) == []


@settings(max_examples=20, deadline=None)
@given(
    kind=st.sampled_from(["euclidean", "random-metric"]),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_headered_round_trip_is_bit_exact(kind, seed):
    dm = generate_instance(kind, 8, seed)
    again = load_instance(serialize_instance(dm, headered=True), fmt="headered")
    assert np.array_equal(again.d, dm.d)


def test_integer_matrix_round_trip():
    text = "4\n0 3 4 5\n3 0 5 4\n4 5 0 3\n5 4 3 0\n"
    dm = load_instance(text)
    again = load_instance(serialize_instance(dm))
    assert np.array_equal(again.d, dm.d)


def test_bare_format_infers_n():
    dm = load_instance("0 1\n1 0", fmt="bare")
    assert dm.n == 2
