"""Numeric sheet tracking around branch points; advisory cross-check only."""

import math

import pytest

from jacobispec.errors import NotSquarefreeError, UnsupportedPencilError
from jacobispec.hensel import decide
from jacobispec.monodromy import (
    ComplexApprox,
    branch_points,
    compose,
    monodromy_group,
    orbit_factor_degrees,
    track_loop,
)
from jacobispec.pencil import pencil


def test_complex_approx():
    c = ComplexApprox.from_complex(1.5 - 2j)
    assert c.value == 1.5 - 2j
    assert str(c) == "1.5 - 2i"
    with pytest.raises(ValueError):
        ComplexApprox(math.nan, 0.0)
    with pytest.raises(ValueError):
        ComplexApprox(0.0, math.inf)


def test_compose_left_to_right():
    # (p then q)[i] = q[p[i]], 0-based
    assert compose((1, 0, 2), (0, 2, 1)) == (2, 0, 1)
    assert compose((0, 2, 1), (1, 0, 2)) == (1, 2, 0)
    ident = (0, 1, 2, 3)
    assert compose(ident, (3, 1, 2, 0)) == (3, 1, 2, 0)
    assert compose((3, 1, 2, 0), ident) == (3, 1, 2, 0)


def test_branch_points_two_sheets():
    # lambda^2 + lambda - w^2 ramifies where 1 + 4 w^2 = 0
    bps = branch_points(pencil([0, 1], [1]))
    assert len(bps) == 2
    assert abs(bps[0].value + 0.5j) < 1e-12
    assert abs(bps[1].value - 0.5j) < 1e-12


def test_transposition_monodromy():
    p = pencil([0, 1], [1])
    r = monodromy_group(p)
    assert r.permutations == [(2, 1), (2, 1)]
    assert r.group_order == 2
    assert r.orbits == [(1, 2)]
    assert r.consistent
    assert r.base_point.value == 3 + 0j


def test_reducible_square_difference():
    # lambda^2 - w^2 = (lambda - w)(lambda + w): single branch point, trivial loop
    p = pencil([0, 0], [1])
    bps = branch_points(p)
    assert len(bps) == 1 and abs(bps[0].value) < 1e-12
    r = monodromy_group(p)
    assert r.permutations == [(1, 2)]
    assert r.orbits == [(1,), (2,)]


def test_track_loop_direct():
    p = pencil([0, 1], [1])
    # loop enclosing nothing is the identity
    assert track_loop(p, 10 + 0j, 0.5) == (1, 2)
    # loop around one simple branch point swaps the sheets
    assert track_loop(p, 0.5j, 0.1) == (2, 1)


def test_track_loop_validation():
    p = pencil([0, 1], [1])
    with pytest.raises(ValueError):
        track_loop(p, 0.5j, -1.0)
    with pytest.raises(ValueError):
        track_loop(p, 0.5j, 0.0)
    with pytest.raises(ValueError):
        # branch point sits on the circle itself
        track_loop(p, 0.5j + 0.1, 0.1)


def test_orbits_reducible_stratum():
    # the constant branch splits one sheet off
    r = monodromy_group(pencil([0, 1, 2], [1, 1]))
    assert r.orbits == [(1, 3), (2,)]
    assert orbit_factor_degrees(r) == [1, 2]


def test_full_symmetric_group():
    r = monodromy_group(pencil([0, 1, 5], [1, 1]))
    assert r.group_order == 6
    assert r.orbits == [(1, 2, 3)]
    assert r.consistent


def test_palindromic_orbit_degrees():
    r = monodromy_group(pencil([0, 1, 1, 0], [1, 2, 1]))
    assert sorted(orbit_factor_degrees(r)) == [2, 2]


def test_unsupported_inputs():
    with pytest.raises(UnsupportedPencilError):
        monodromy_group(pencil([2], []))
    with pytest.raises(NotSquarefreeError):
        # (lambda + 3)^2 has no squarefree sheet structure to track
        monodromy_group(pencil([3, 3], [0]))


def test_disconnected_collinear_regression():
    # zero coupling puts real branch points near the base path; the router
    # must detour around them instead of failing
    r = monodromy_group(pencil([9, 7, -8, 8], [8, -4, 0]))
    assert sorted(len(o) for o in r.orbits) == [1, 3]
    assert r.consistent


def test_close_branch_point_pair_regression():
    # nearly-coincident branch points force tiny lasso radii; the final
    # approach has to resolve them anyway
    r = monodromy_group(pencil([9, 7, -8, 8], [8, -4, 0]))
    assert r.certified_step is None or r.certified_step > 0


def test_orbits_agree_with_exact_decision():
    for a, b in [
        ([0, 1, 5], [1, 1]),
        ([0, 1, 2], [1, 1]),
        ([-1, 0, 4], [1, 2]),
        ([0, 3, 7], [2, 1]),
    ]:
        p = pencil(a, b)
        d = decide(p)
        r = monodromy_group(p)
        assert sorted(orbit_factor_degrees(r)) == sorted(d.factor_degrees)


def test_permutations_one_per_branch_point():
    p = pencil([0, 1, 5], [1, 1])
    r = monodromy_group(p)
    assert len(r.permutations) == len(r.branch_points)
    n = p.n
    for perm in r.permutations:
        assert sorted(perm) == list(range(1, n + 1))
