from fractions import Fraction

import pytest
from hypothesis import given

from goodsets import (LoopCert, Measure, enumerate_extreme_points, enumerate_loops, is_extreme,
                      loop_measure, uperp_dimension)
from goodsets.errors import CapExceeded, PreconditionError
from goodsets.measures import has_vanishing_marginals, marginals
from goodsets.polytope import lifted_vertices, loop_measure_set, measure_key

import oracles
from conftest import GRID_2x3, TWO_BLOCKS, RECTANGLE, SIX_CYCLE, point_sets, ps

Q = Fraction(1, 4)


def test_loop_measure_examples():
    mu = loop_measure(LoopCert(RECTANGLE.points, (1, -1, -1, 1)))
    assert mu.values == (Q, -Q, -Q, Q)
    assert mu.norm == 1 and has_vanishing_marginals(mu)
    mu = loop_measure(LoopCert(SIX_CYCLE.points, (1, -1, 1, -1, 1, -1)))
    assert {abs(v) for v in mu.values} == {Fraction(1, 6)}
    with pytest.raises(PreconditionError):
        loop_measure(LoopCert(RECTANGLE.points, (1, -1, 1, -1)))


def test_loop_measure_embeds_into_larger_set():
    cert = enumerate_loops(GRID_2x3)[0]
    mu = loop_measure(cert, GRID_2x3)
    assert mu.space == GRID_2x3
    assert len(mu.support) == 4 and mu.norm == 1


def test_marginals_of_a_point_mass():
    m = Measure.from_mapping(RECTANGLE, {("a", "x"): 1}, default=Fraction(0))
    assert not has_vanishing_marginals(m)
    assert marginals(m) == {(0, "a"): 1, (0, "b"): 0, (1, "x"): 1, (1, "y"): 0}


def test_uperp_dimension_examples():
    assert uperp_dimension(ps("ax", "by")) == 0
    assert uperp_dimension(RECTANGLE) == 1
    assert uperp_dimension(GRID_2x3) == 2
    assert uperp_dimension(TWO_BLOCKS) == 1


def test_extreme_examples():
    (zero,) = enumerate_extreme_points(ps("ax", "bx", "by"))
    assert zero.is_zero()
    pts = enumerate_extreme_points(RECTANGLE)
    assert [m.values for m in pts] == [(Q, -Q, -Q, Q), (-Q, Q, Q, -Q)]
    pts = enumerate_extreme_points(GRID_2x3)
    assert len(pts) == 6
    assert {measure_key(m) for m in pts} == loop_measure_set(GRID_2x3, enumerate_loops(GRID_2x3))
    assert [m.values for m in enumerate_extreme_points(TWO_BLOCKS)] == [(Q, -Q, -Q, Q), (-Q, Q, Q, -Q)]


def test_extreme_order_pairs_adjacent():
    pts = enumerate_extreme_points(GRID_2x3)
    for k in range(0, len(pts), 2):
        assert pts[k + 1] == -pts[k]
    reps = [m.values for m in pts[::2]]
    assert reps == sorted(reps)


def test_extreme_bound():
    with pytest.raises(CapExceeded):
        enumerate_extreme_points(ps(*[f"{a}{b}" for a in "012" for b in "0123"]))


def test_is_extreme_examples():
    loops = enumerate_loops(GRID_2x3)
    mus = [loop_measure(c, GRID_2x3) for c in loops]
    assert all(is_extreme(GRID_2x3, m) and is_extreme(GRID_2x3, -m) for m in mus)
    half = Fraction(1, 2)
    assert not is_extreme(GRID_2x3, half * mus[0] + half * mus[1])
    assert not is_extreme(GRID_2x3, half * mus[0])
    assert is_extreme(ps("ax", "by"), Measure(ps("ax", "by"), (0, 0)))
    assert not is_extreme(RECTANGLE, Measure(RECTANGLE, (0, 0, 0, 0)))
    with pytest.raises(PreconditionError):
        is_extreme(RECTANGLE, Measure(RECTANGLE, (1, 0, 0, 0)))
    with pytest.raises(PreconditionError):
        is_extreme(RECTANGLE, Measure(RECTANGLE, (1, -1, -1, 1)))


@given(point_sets(max_size=5))
def test_lifted_vertices_match_bruteforce(S):
    projected = set()
    for x in lifted_vertices(S):
        vals = [Fraction(0)] * len(S)
        for key, v in x.items():
            if key[0] == "p":
                vals[key[1]] += v
            elif key[0] == "q":
                vals[key[1]] -= v
        projected.add(tuple(vals))
    assert projected == oracles.lifted_vertices_bruteforce(list(S.points))


@given(point_sets(max_size=7))
def test_extreme_points_are_loop_measures(S):
    pts = enumerate_extreme_points(S)
    assert {measure_key(m) for m in pts} == loop_measure_set(S, enumerate_loops(S))
    assert len({measure_key(m) for m in pts}) == len(pts)
    for m in pts:
        assert has_vanishing_marginals(m) and m.norm <= 1
        assert is_extreme(S, m)
