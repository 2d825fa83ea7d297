"""Subset-indexed lifting at t = 0 and the complete factorization decision."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobispec.errors import UnsupportedPencilError
from jacobispec.hensel import (
    SubsetSplit,
    canonical_subsets,
    decide,
    lift_subset,
    obstruction_profile,
)
from jacobispec.pencil import curve_t, curve_w, pencil


# ---------------------------------------------------------------- subsets


def test_subset_canonical_form():
    s = SubsetSplit.canonical((3, 4), (1, 2, 3, 4))
    # complement is smaller-or-equal and contains the least element: flipped
    assert s.indices == (1, 2)
    assert s.complement == (3, 4)
    t = SubsetSplit.canonical((2,), (1, 2, 3))
    assert t.indices == (2,)


def test_subset_rejects_noncanonical():
    with pytest.raises(ValueError):
        SubsetSplit((2, 3), (1, 2, 3))  # complement (1,) is smaller
    with pytest.raises(ValueError):
        SubsetSplit((2, 4), (1, 2, 3, 4))  # half-size but missing least element
    with pytest.raises(ValueError):
        SubsetSplit((), (1, 2))
    with pytest.raises(ValueError):
        SubsetSplit((1, 2), (1, 2))  # not proper


def test_canonical_subsets_counts():
    # one representative per unordered proper bipartition
    for m in range(2, 9):
        subs = list(canonical_subsets(range(1, m + 1)))
        assert len(subs) == 2 ** (m - 1) - 1
        assert len(set(subs)) == len(subs)
        assert all(s.is_canonical for s in subs)
    # decision order: increasing size, lexicographic inside one size
    subs4 = [s.indices for s in canonical_subsets(range(1, 5))]
    assert subs4 == [(1,), (2,), (3,), (4,), (1, 2), (1, 3), (1, 4)]


def test_canonical_subsets_cover_all_bipartitions():
    universe = (1, 2, 3, 4)
    seen = set()
    for s in canonical_subsets(universe):
        seen.add(frozenset(s.indices))
        seen.add(frozenset(s.complement))
    expect = set()
    for k in range(1, 4):
        for combo in combinations(universe, k):
            expect.add(frozenset(combo))
    assert seen == expect


# ---------------------------------------------------------------- lifting


def test_lift_series_frozen():
    # P = (lambda)(lambda+1) - t split as {1}|{2}: the unique series factors
    P = curve_t(pencil([0, 1], [1]))
    state = lift_subset(P, [Fraction(0), Fraction(-1)], (1,), 4)
    assert state.F.to_lists() == [["0", "1"], ["-1"], ["1"], ["-2"], ["5"]]
    assert state.G.to_lists() == [["1", "1"], ["1"], ["-1"], ["2"], ["-5"]]
    assert [r.to_strings() for r in state.residuals] == [
        ["-1"],
        ["1"],
        ["-2"],
        ["5"],
    ]
    u, v = state.bezout
    assert u.to_strings() == ["-1"] and v.to_strings() == ["1"]
    assert state.order == 4


def test_lift_product_congruence():
    # F*G == P modulo t^(order+1), exactly, at several orders
    p = pencil([0, 1, 3], [1, 2])
    P = curve_t(p)
    roots = [Fraction(0), Fraction(-1), Fraction(-3)]
    for order in (1, 2, 5):
        state = lift_subset(P, roots, (2,), order)
        fg = state.F * state.G
        for k in range(order + 1):
            assert fg.layer(k) == P.layer(k)


def test_lift_bezout_identity():
    P = curve_t(pencil([0, 2, 5], [1, 1]))
    state = lift_subset(P, [Fraction(0), Fraction(-2), Fraction(-5)], (1, 3), 3)
    u, v = state.bezout
    f0 = state.F.layer(0)
    g0 = state.G.layer(0)
    assert u * f0 + v * g0 == type(u)([1])


def test_lift_rejects_wrong_roots():
    P = curve_t(pencil([0, 1], [1]))
    with pytest.raises(ValueError):
        lift_subset(P, [Fraction(5), Fraction(7)], (1,), 2)


# ------------------------------------------------------------ obstruction


def test_obstruction_profile_frozen():
    p = pencil([0, 1, 2, 3], [1, 1, 1])
    prof = obstruction_profile(p, (1, 2))
    assert [q.to_strings() for q in prof] == [[], ["3", "3", "1"], ["-1/2"]]


def test_obstruction_zero_iff_termination():
    # the subset behind an actual factorization has an all-zero profile
    p = pencil([-1, 0, 4], [1, 2])
    prof = obstruction_profile(p, (2,))
    assert all(q.is_zero for q in prof)
    # and a subset with no factorization does not
    prof2 = obstruction_profile(p, (1,))
    assert any(not q.is_zero for q in prof2)


# ---------------------------------------------------------------- decide


def test_decide_irreducible():
    d = decide(pencil([0, 1, 5], [1, 1]))
    assert d.status == "Irreducible"
    assert not d.reducible
    assert d.factor_degrees == [3]
    assert d.witnesses == ()
    assert d.factors_t == (curve_t(pencil([0, 1, 5], [1, 1])),)


def test_decide_reducible_frozen():
    d = decide(pencil([-1, 0, 4], [1, 2]))
    assert d.status == "Reducible"
    assert d.reducible
    assert d.factor_degrees == [1, 2]
    assert d.factor_indices == ((2,), (1, 3))
    assert [f.to_lists() for f in d.factors_t] == [
        [["0", "1"]],
        [["-4", "3", "1"], ["-5"]],
    ]
    assert [s.indices for s in d.witnesses] == [(2,)]


def test_decide_stratum_example():
    # couplings balanced so that lambda + 1 splits off
    d = decide(pencil([0, 1, 2], [1, 1]))
    assert d.reducible
    assert [f.to_lists() for f in d.factors_t] == [
        [["1", "1"]],
        [["0", "2", "1"], ["-2"]],
    ]


def test_decide_product_and_monicity():
    for a, b in [
        ([0, 1, 5], [1, 1]),
        ([-1, 0, 4], [1, 2]),
        ([0, 1, 2], [1, 1]),
        ([0, 3, 7, 11], [1, 1, 1]),
    ]:
        p = pencil(a, b)
        d = decide(p)
        prod = d.factors_t[0]
        for f in d.factors_t[1:]:
            prod = prod * f
        assert prod == curve_t(p)
        for f in d.factors_t:
            assert f.is_monic_lambda
        assert sorted(d.factor_degrees) == sorted(f.deg_lambda for f in d.factors_t)


def test_decide_w_form_factors():
    from jacobispec.exactpoly import to_t_form

    d = decide(pencil([-1, 0, 4], [1, 2]))
    for ft, fw in zip(d.factors_t, d.factors_w):
        assert fw.tag == "w"
        assert ft == to_t_form(fw)


def test_decide_rejects_repeated_diagonal():
    with pytest.raises(UnsupportedPencilError):
        decide(pencil([0, 0, 1], [1, 1]))
    with pytest.raises(UnsupportedPencilError):
        decide(pencil([5, 7, 5], [3, 3]))


def test_decide_disconnected_but_distinct():
    # zero coupling is fine as long as the diagonal stays distinct
    d = decide(pencil([0, 1, 2], [1, 0]))
    assert d.reducible
    assert sorted(d.factor_degrees) == [1, 2]


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(-8, 8), min_size=2, max_size=4, unique=True),
    st.data(),
)
def test_decide_verdict_matches_profiles(a, data):
    b = data.draw(
        st.lists(
            st.integers(-3, 3), min_size=len(a) - 1, max_size=len(a) - 1
        )
    )
    p = pencil(a, b)
    d = decide(p)
    profiles_all_clear = [
        s
        for s in canonical_subsets(range(1, len(a) + 1))
        if all(q.is_zero for q in obstruction_profile(p, s))
    ]
    # some subset terminates iff the decision is Reducible
    assert bool(profiles_all_clear) == d.reducible
    if d.reducible:
        # the first terminating subset in decision order is the witness
        assert d.witnesses[0] == profiles_all_clear[0]
