import pytest

from gptcast.rationals import ONE, ZERO, rat
from gptcast.linalg import dot, invert, mat_mul, mat_vec, transpose, vec
from gptcast.spaces import (
    Effect,
    Measurement,
    SpaceError,
    StateSpace,
    is_classical,
    make_classical,
    make_polygon,
    make_square_gbit,
    validate_measurement,
)

U3 = (ZERO, ZERO, ONE)


def test_classical_bit_shape():
    bit = make_classical(2)
    assert bit.vertices == ((0, 1), (1, 0))
    assert bit.unit == (1, 1)
    assert bit.span_dim == 2


def test_classical_one_outcome():
    one = make_classical(1)
    assert one.vertices == ((1,),)
    assert is_classical(one)


def test_classical_zero_rejected():
    with pytest.raises(SpaceError):
        make_classical(0)


def test_square_gbit_shape():
    sq = make_square_gbit()
    assert len(sq.vertices) == 4
    assert all(dot(sq.unit, v) == 1 for v in sq.vertices)
    assert set(sq.vertices) == {(x, y, 1) for x in (1, -1) for y in (1, -1)}


def test_square_gbit_extreme_effects():
    sq = make_square_gbit()
    got = {e.functional for e in sq.extreme_effects()}
    expected = {
        (ZERO, ZERO, ZERO),
        U3,
        (rat(1, 2), ZERO, rat(1, 2)),
        (rat(-1, 2), ZERO, rat(1, 2)),
        (ZERO, rat(1, 2), rat(1, 2)),
        (ZERO, rat(-1, 2), rat(1, 2)),
    }
    assert got == expected


def test_classical_bit_extreme_effects():
    bit = make_classical(2)
    got = {e.functional for e in bit.extreme_effects()}
    assert got == {(0, 0), (1, 1), (1, 0), (0, 1)}


def test_classical_trit_extreme_effects_are_indicator_sums():
    trit = make_classical(3)
    got = {e.functional for e in trit.extreme_effects()}
    expected = {
        (a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)
    }
    assert got == {vec(e) for e in expected}
    assert len(got) == 8


def test_extreme_effects_complement_closure():
    for space in (make_classical(3), make_square_gbit(), make_polygon(5)):
        effs = {e.functional for e in space.extreme_effects()}
        for e in effs:
            complement = tuple(u - x for u, x in zip(space.unit, e))
            assert complement in effs


def test_extreme_effects_attain_a_bound():
    for space in (make_classical(3), make_square_gbit()):
        for e in space.extreme_effects():
            values = [e.value(v) for v in space.vertices]
            assert all(ZERO <= x <= ONE for x in values)
            assert any(x == ZERO or x == ONE for x in values)


def test_positive_cone_rays_square():
    sq = make_square_gbit()
    assert set(sq.positive_cone_rays()) == {
        (1, 0, 1),
        (-1, 0, 1),
        (0, 1, 1),
        (0, -1, 1),
    }


def test_positive_cone_rays_classical():
    trit = make_classical(3)
    assert set(trit.positive_cone_rays()) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_is_classical_catalog():
    for n in range(1, 9):
        assert is_classical(make_classical(n))
    assert not is_classical(make_square_gbit())
    assert is_classical(make_polygon(3))
    assert not is_classical(make_polygon(5))
    assert not is_classical(make_polygon(7))


def test_polygon_needs_three_vertices():
    with pytest.raises(SpaceError):
        make_polygon(2)


def test_polygon_vertices_lie_on_unit_circle():
    for n in (3, 5, 6, 12):
        gon = make_polygon(n)
        assert len(gon.vertices) == n
        for x, y, z in gon.vertices:
            assert z == 1
            assert x * x + y * y == 1


def test_polygon_4_is_exact_diamond():
    gon = make_polygon(4)
    assert set(gon.vertices) == {(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)}


def test_polygon_4_affinely_equivalent_to_square_gbit():
    """Solve for the linear bijection from three vertex pairs, check the rest."""
    gon, sq = make_polygon(4), make_square_gbit()
    pairs = [
        ((1, 0, 1), (1, 1, 1)),
        ((0, 1, 1), (-1, 1, 1)),
        ((-1, 0, 1), (-1, -1, 1)),
        ((0, -1, 1), (1, -1, 1)),
    ]
    d_cols = transpose(tuple(vec(a) for a, _ in pairs[:3]))
    s_cols = transpose(tuple(vec(b) for _, b in pairs[:3]))
    m = mat_mul(s_cols, invert(d_cols))
    for a, b in pairs:
        assert mat_vec(m, vec(a)) == vec(b)
    # unit preservation and vertex-set bijection
    assert tuple(dot(sq.unit, col) for col in zip(*m)) == gon.unit
    assert {mat_vec(m, v) for v in gon.vertices} == set(sq.vertices)


def test_validate_measurement_ok():
    bit = make_classical(2)
    m = Measurement(outcomes=(Effect((ONE, ZERO)), Effect((ZERO, ONE))))
    assert validate_measurement(bit, m).ok


def test_validate_measurement_unit_alone():
    sq = make_square_gbit()
    assert validate_measurement(sq, Measurement(outcomes=(sq.unit_effect,))).ok


def test_validate_measurement_bad_sum():
    bit = make_classical(2)
    m = Measurement(outcomes=(Effect((ONE, ZERO)), Effect((ONE, ZERO))))
    report = validate_measurement(bit, m)
    assert not report.ok
    assert any("sum" in p for p in report.problems)


def test_validate_measurement_pinpoints_bad_outcome():
    sq = make_square_gbit()
    bad = Effect((ONE, ZERO, ZERO))  # hits -1 at vertices with x = -1
    rest = Effect(tuple(u - x for u, x in zip(sq.unit, bad.functional)))
    report = validate_measurement(sq, Measurement(outcomes=(bad, rest), labels=("p", "q")))
    assert not report.ok
    assert any(p.startswith("outcome p:") for p in report.problems)


def test_state_space_rejects_bad_unit():
    with pytest.raises(SpaceError):
        StateSpace.from_vertices("bad", [(1, 0), (0, 2)], (1, 1))


def test_state_space_rejects_nonspanning_vertices():
    with pytest.raises(SpaceError):
        StateSpace.from_vertices("flat", [(1, 0, 1), (-1, 0, 1)], (0, 0, 1))


def test_untrusted_constructor_filters_interior_points():
    sq = StateSpace.from_vertices(
        "square+center",
        [(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1), (0, 0, 1)],
        (0, 0, 1),
    )
    assert len(sq.vertices) == 4
