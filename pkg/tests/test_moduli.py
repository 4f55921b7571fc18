from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import exterior_top_power, gcd_list
from wps_moduli.center import c_special_roots, center_group, orbit_data
from wps_moduli.errors import PreconditionError, RangeError
from wps_moduli.moduli import (
    cohomology_dimensions,
    degree_consistency,
    det_bundle_self_intersection,
    minimality_scan,
    quadratic_top_power,
    singular_locus_structure,
    weights_from_levels,
    wps_profile,
    wps_top_intersection,
)
from wps_moduli.rootsys import SimpleType, all_types, build_root_system

SWEEP = [t for t in all_types(8) if not t.flagged]


def _d(f: str, r: int):
    return build_root_system(SimpleType(f, r))


def _c(d, node: int):
    return next(e for e in center_group(d).elements if e.node == node)


def test_e8_weights() -> None:
    d = _d("E", 8)
    w = wps_profile(d, center_group(d).elements[0], 4)
    assert w.weights == (1, 2, 2, 3, 3, 4, 4, 5, 6) and sum(w.weights) == 30


def test_e7_adjoint_weights() -> None:
    d = _d("E", 7)
    w = wps_profile(d, _c(d, 7), 5)
    assert w.moduli_weights == (1, 1, 2, 2, 3)
    assert w.dimension + 1 == 5


def test_a1_weights() -> None:
    d = _d("A", 1)
    w = wps_profile(d, center_group(d).elements[0], 1)
    assert w.weights == (2, 2) and w.moduli_weights == (1, 1)


def test_wps_profile_requires_c_special() -> None:
    d = _d("E", 8)
    with pytest.raises(PreconditionError):
        wps_profile(d, center_group(d).elements[0], 1)


def test_intersection_examples() -> None:
    assert wps_top_intersection((1, 1, 1, 1), 1) == 1
    assert wps_top_intersection((2, 2), 2) == 1
    e8 = (1, 2, 2, 3, 3, 4, 4, 5, 6)
    assert wps_top_intersection(e8, -60) == Fraction(60**8, 17280)
    with pytest.raises(PreconditionError):
        wps_top_intersection((2, 3), 4)


def test_self_intersection_examples() -> None:
    a1 = _d("A", 1)
    assert det_bundle_self_intersection(a1, center_group(a1).elements[0]) == -4
    w = wps_profile(a1, center_group(a1).elements[0], 1)
    assert w.exponent == -8 and wps_top_intersection(w.weights, w.exponent) == -4
    e7 = _d("E", 7)
    assert det_bundle_self_intersection(e7, _c(e7, 7)) == 8748
    e8 = _d("E", 8)
    assert det_bundle_self_intersection(e8, center_group(e8).elements[0]) == Fraction(60**8, 17280)


def test_quadratic_top_power_examples() -> None:
    for r in range(0, 5):
        ident = [[int(i == j) for j in range(r)] for i in range(r)]
        assert quadratic_top_power(ident) == [1, 1, 2, 6, 24][r]
    assert quadratic_top_power([[3, 0, 0], [0, -2, 0], [0, 0, 5]]) == 6 * 3 * -2 * 5
    assert quadratic_top_power([[2, 1], [1, 2]]) == 6
    with pytest.raises(PreconditionError):
        quadratic_top_power([[1, 2], [0, 1]])


def _sym(rng: random.Random, r: int) -> list[list[int]]:
    m = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            m[i][j] = m[j][i] = rng.randint(-5, 5)
    return m


def test_quadratic_top_power_matches_exterior_algebra_battery() -> None:
    rng = random.Random(20240611)
    for k in range(150):
        j = _sym(rng, 1 + k % 3)
        assert quadratic_top_power(j) == exterior_top_power(j)


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=3).flatmap(
    lambda r: st.lists(st.integers(min_value=-5, max_value=5), min_size=r * (r + 1) // 2, max_size=r * (r + 1) // 2)
    .map(lambda xs: (r, xs))))
def test_quadratic_top_power_property(data) -> None:
    r, xs = data
    m = [[0] * r for _ in range(r)]
    it = iter(xs)
    for i in range(r):
        for j in range(i, r):
            m[i][j] = m[j][i] = next(it)
    assert quadratic_top_power(m) == exterior_top_power(m)


def test_degree_consistency_examples() -> None:
    a1 = _d("A", 1)
    triv = degree_consistency(a1, center_group(a1).elements[0])
    assert (triv.degree, triv.lhs, triv.rhs) == (2, 4, 4)
    flip = degree_consistency(a1, _c(a1, 1))
    assert (flip.degree, flip.lhs, flip.rhs) == (1, 1, 1)
    e7 = degree_consistency(_d("E", 7), _c(_d("E", 7), 7))
    assert e7.passed and e7.rhs == 8748


@pytest.mark.parametrize("t", SWEEP, ids=str)
def test_two_route_intersection_everywhere(t) -> None:
    d = build_root_system(t)
    for c in center_group(d).elements:
        for s in c_special_roots(d, c):
            w = wps_profile(d, c, s.alpha)
            op = orbit_data(d, c)
            assert wps_top_intersection(w.weights, w.exponent) == det_bundle_self_intersection(d, c)
            assert weights_from_levels(d, c, s.alpha) == w.weights
            assert len(w.weights) == op.r_c + 1 and gcd_list(w.weights) == w.weight_gcd
            assert sum(w.moduli_weights) * op.n0 == d.dual_coxeter
        if c_special_roots(d, c):
            assert degree_consistency(d, c).passed


def test_cohomology_examples() -> None:
    e8 = _d("E", 8)
    triv = center_group(e8).elements[0]
    cd = cohomology_dimensions(e8, triv, 4, -1)
    assert cd.per_level == (1, 2, 2, 2, 1, 1) and sum(cd.per_level) == 9 and cd.total == 10
    assert cohomology_dimensions(e8, triv, 4, -2).total == 1 + 2 * 9
    for n in range(2, 7):
        d = _d("B", n)
        c = _c(d, 1)
        (s,) = c_special_roots(d, c)
        assert cohomology_dimensions(d, c, s.alpha, -1).total == n + 1 == orbit_data(d, c).r_c + 2


def test_cohomology_input_checks() -> None:
    e8 = _d("E", 8)
    triv = center_group(e8).elements[0]
    with pytest.raises(PreconditionError):
        cohomology_dimensions(e8, triv, 4, 0)
    with pytest.raises(PreconditionError):
        cohomology_dimensions(e8, triv, 4, -1, r_hat=-1)


def test_level_dimensions_always_integral() -> None:
    # o_(c,alpha) divides every i(alpha,k) on the swept data, so the congruence guard never fires at deg -1
    for t in SWEEP:
        d = build_root_system(t)
        for c in center_group(d).elements:
            for a in range(1, d.rank + 1):
                cd = cohomology_dimensions(d, c, a, -1)
                assert all(x > 0 for x in cd.per_level)


def test_minimality_examples() -> None:
    e7 = minimality_scan(_d("E", 7))
    assert e7.passed and e7.min_d1 == 8 and e7.argmin == (4,) and e7.equality_cases == ((4, 1),)
    a4 = minimality_scan(_d("A", 4))
    assert a4.passed and a4.equality_cases == tuple((b, 1) for b in range(1, 5))
    g2 = minimality_scan(_d("G", 2))
    assert g2.passed and g2.equality_cases == ((2, 1),)


def test_singular_locus_examples() -> None:
    e8 = _d("E", 8)
    triv = center_group(e8).elements[0]
    two = singular_locus_structure(e8, triv, 4, 2)
    assert sorted(str(t) for t, _ in two.components) == ["A1", "E7"] and two.divisible_count == 5
    four = singular_locus_structure(e8, triv, 4, 4)
    assert "A7" in [str(t) for t, _ in four.components] and four.divisible_count == 2
    one = singular_locus_structure(e8, triv, 4, 1)
    assert [str(t) for t, _ in one.components] == ["E8"] and one.divisible_count == 9
    with pytest.raises(RangeError):
        singular_locus_structure(e8, triv, 4, 7)
