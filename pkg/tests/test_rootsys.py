from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import classical_roots, dual_coxeter_number, invariant_form_on_coroots, weyl_orbit
from wps_moduli.errors import ConstructionError
from wps_moduli.rootsys import (
    RationalVector,
    SimpleType,
    all_types,
    antidominant_word,
    apply_word,
    build_root_system,
    coxeter_invariants,
    longest_word,
    make_antidominant_within,
    symmetric_form_gram,
)

SWEEP = [t for t in all_types(8) if not t.flagged]


def test_rank_one_system() -> None:
    d = build_root_system(SimpleType("A", 1))
    assert sorted(d.roots) == [(-1,), (1,)]


@pytest.mark.parametrize("t,count", [(("G", 2), 12), (("F", 4), 48), (("E", 6), 72), (("E", 7), 126), (("E", 8), 240)])
def test_exceptional_root_counts(t, count) -> None:
    assert len(build_root_system(SimpleType(*t)).roots) == count


@pytest.mark.parametrize("t", [t for t in SWEEP if t.family in "ABCD"], ids=str)
def test_classical_counts_match_epsilon_model(t) -> None:
    assert len(build_root_system(t).roots) == len(classical_roots(t.family, t.rank))


@pytest.mark.parametrize("t", SWEEP, ids=str)
def test_invariant_form_matches_independent_normalization(t) -> None:
    d = build_root_system(t)
    cartan = [list(r) for r in d.cartan]
    assert [list(r) for r in d.I0_gram] == invariant_form_on_coroots(cartan, list(d.roots))
    assert d.dual_coxeter == dual_coxeter_number(cartan, list(d.roots))


@pytest.mark.parametrize("t", SWEEP, ids=str)
def test_root_sum_form_is_2g_times_normalized_form(t) -> None:
    d = build_root_system(t)
    n = d.rank
    q = [[sum(d.pair(b, d.simple_coroot(i)) * d.pair(b, d.simple_coroot(j)) for b in d.roots)
          for j in range(1, n + 1)] for i in range(1, n + 1)]
    assert q == [[2 * d.dual_coxeter * x for x in row] for row in symmetric_form_gram(d)]


@pytest.mark.parametrize("n", range(1, 9))
def test_type_a_coxeter_numbers(n) -> None:
    h, g, _, _ = coxeter_invariants(build_root_system(SimpleType("A", n)))
    assert h == g == n + 1


@pytest.mark.parametrize("n", range(2, 9))
def test_type_c_coxeter_numbers(n) -> None:
    h, g, _, _ = coxeter_invariants(build_root_system(SimpleType("C", n)))
    assert (h, g) == (2 * n, n + 1)


def test_g2_coxeter_numbers() -> None:
    h, g, marks, comarks = coxeter_invariants(build_root_system(SimpleType("G", 2)))
    assert (h, g) == (6, 4)
    assert sum(marks) == h and sum(comarks) == g


def test_e8_marks() -> None:
    d = build_root_system(SimpleType("E", 8))
    assert d.marks == (1, 2, 3, 4, 6, 5, 4, 3, 2)
    assert d.comarks == d.marks


@pytest.mark.parametrize("bad", [("A", 0), ("B", 1), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 3)])
def test_invalid_types_rejected(bad) -> None:
    with pytest.raises(ConstructionError):
        SimpleType(*bad)


def test_empty_reflection_set_is_identity() -> None:
    d = build_root_system(SimpleType("B", 3))
    x = d.vector([Fraction(1, 2), 3, -1], "fundamental-weight")
    assert make_antidominant_within(d, [], x) == x


def test_a2_antidominant_of_first_fundamental_weight() -> None:
    d = build_root_system(SimpleType("A", 2))
    x = d.vector([1, 0], "fundamental-weight")
    orbit = weyl_orbit([list(r) for r in d.cartan], (1, 0))
    antidominant = [v for v in orbit if all(c <= 0 for c in v)]
    assert len(orbit) == 3 and antidominant == [(0, -1)]
    y = make_antidominant_within(d, [1, 2], x)
    assert y == d.vector(antidominant[0], "fundamental-weight")


@pytest.mark.parametrize("t,alpha", [(SimpleType("E", 8), 4), (SimpleType("F", 4), 2), (SimpleType("D", 6), 4)], ids=str)
def test_levi_longest_element_sends_lowest_to_highest(t, alpha) -> None:
    from wps_moduli.parabolic import parabolic_profile

    d = build_root_system(t)
    p = parabolic_profile(d, alpha)
    J = [j for j in range(1, d.rank + 1) if j != alpha]
    word = longest_word(d, J)
    for lv in p.levels:
        assert apply_word(d, word, lv.lowest) == lv.highest
        # the lowest element of a level is already antidominant for the Levi, the highest sweeps down to it
        swept = make_antidominant_within(d, J, RationalVector(lv.highest, "simple-root"))
        assert swept.coords == tuple(Fraction(x) for x in lv.lowest)


def test_basis_round_trip() -> None:
    d = build_root_system(SimpleType("C", 3))
    v = d.vector([Fraction(1, 3), -2, 5], "simple-coroot")
    for b in ("simple-coroot", "fundamental-coweight"):
        assert d.convert(d.convert(v, b), "simple-coroot") == v


_SMALL = [t for t in all_types(6) if not t.flagged]


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(_SMALL), st.data())
def test_antidominant_sweep_properties(t, data) -> None:
    d = build_root_system(t)
    n = d.rank
    coords = data.draw(st.lists(st.integers(min_value=-6, max_value=6), min_size=n, max_size=n))
    J = data.draw(st.sets(st.integers(min_value=1, max_value=n)))
    x = d.vector(coords, "fundamental-weight")
    y = make_antidominant_within(d, J, x)
    # antidominant for J, idempotent, and in the W(J)-orbit (the reflection word reproduces it)
    assert all(y.coords[j - 1] <= 0 for j in J)
    assert make_antidominant_within(d, J, y) == y
    root_side = d.convert(x, "simple-root").coords
    end, word = antidominant_word(d, J, root_side, "root")
    assert set(word) <= set(J)
    assert apply_word(d, word, root_side) == tuple(end)
    assert d.convert(RationalVector(end, "simple-root"), "fundamental-weight") == y


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(_SMALL), st.data())
def test_convert_round_trip(t, data) -> None:
    d = build_root_system(t)
    n = d.rank
    nums = data.draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=n, max_size=n))
    for src, dst in (("simple-root", "fundamental-weight"), ("simple-coroot", "fundamental-coweight")):
        v = d.vector(nums, src)
        assert d.convert(d.convert(v, dst), src) == v
