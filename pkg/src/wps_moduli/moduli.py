"""Weighted projective weights, intersection numbers and dimension counts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .center import (
    CenterElement,
    c_special_roots,
    center_group,
    lattice_profile,
    n_c_alpha,
    o_c_alpha,
    orbit_data,
    pairing_degree,
)
from .errors import CongruenceError, InternalInconsistency, PreconditionError, RangeError
from .linalg import gram, top_power
from .parabolic import (
    components,
    gcd_all,
    identify_type,
    is_special,
    parabolic_profile,
    subsystem_R_alpha_k,
)
from .rootsys import RootDatum, SimpleType, build_root_system


@dataclass(frozen=True)
class WpsProfile:
    simple_type: SimpleType
    center: CenterElement
    alpha: int
    weights: tuple[int, ...]
    weight_gcd: int
    dimension: int
    exponent: int
    moduli_weights: tuple[int, ...]
    generates_center: bool


def _require_c_special(d: RootDatum, c: CenterElement, alpha: int) -> None:
    if alpha not in {s.alpha for s in c_special_roots(d, c)}:
        raise PreconditionError(f"simple root {alpha} is not c-special for {d.simple_type} with c #{c.index}")


def wps_profile(d: RootDatum, c: CenterElement, alpha: int) -> WpsProfile:
    _require_c_special(d, c, alpha)
    op = orbit_data(d, c)
    nc = n_c_alpha(d, c, alpha)
    a = Fraction(-2 * d.dual_coxeter * nc, op.n0)
    if a.denominator != 1:
        raise InternalInconsistency("ample exponent is not an integer")
    weights = tuple(sorted(nc * gb // op.n0 for gb in op.g_bar))
    return WpsProfile(
        simple_type=d.simple_type,
        center=c,
        alpha=alpha,
        weights=weights,
        weight_gcd=gcd_all(weights),
        dimension=op.r_c,
        exponent=int(a),
        moduli_weights=tuple(sorted(gb // op.n0 for gb in op.g_bar)),
        generates_center=center_group(d).generates(c),
    )


def weights_from_levels(d: RootDatum, c: CenterElement, alpha: int) -> tuple[int, ...]:
    """Weight ``k n_{c,alpha}`` repeated ``i(alpha, k)/o(c)`` times."""
    p = parabolic_profile(d, alpha)
    nc = n_c_alpha(d, c, alpha)
    out: list[int] = []
    for lv in p.levels:
        mult = Fraction(lv.i, c.order)
        if mult.denominator != 1:
            raise InternalInconsistency(f"i({alpha},{lv.k}) is not divisible by o(c)")
        out += [lv.k * nc] * int(mult)
    return tuple(sorted(out))


def wps_top_intersection(weights: Sequence[int], a: int) -> Fraction:
    """Top self-intersection of the degree-``a`` class on ``WP(weights)``."""
    bad = [w for w in weights if a % w]
    if bad:
        raise PreconditionError(f"weights {bad} do not divide {a}")
    r = len(weights) - 1
    return Fraction(a**r * gcd_all(weights), prod(weights))


def det_bundle_self_intersection(d: RootDatum, c: CenterElement) -> Fraction:
    if not c_special_roots(d, c):
        raise PreconditionError(f"no c-special root for {d.simple_type} with c #{c.index}")
    op = orbit_data(d, c)
    return Fraction((-2 * d.dual_coxeter) ** op.r_c * op.n0, prod(op.g_bar))


def quadratic_top_power(j: Sequence[Sequence]) -> Fraction:
    """Top exterior power of the 2-form of a symmetric matrix, as ``r! det J``."""
    if any(j[a][b] != j[b][a] for a in range(len(j)) for b in range(len(j))):
        raise PreconditionError("matrix is not symmetric")
    return top_power(j)


@dataclass(frozen=True)
class Consistency:
    degree: int
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def degree_consistency(d: RootDatum, c: CenterElement) -> Consistency:
    e = pairing_degree(d, c)
    lp = lattice_profile(d, c)
    two_g = 2 * d.dual_coxeter
    j = [[two_g * x for x in row] for row in lp.gram]
    lhs = quadratic_top_power(j) / e
    rhs = abs(det_bundle_self_intersection(d, c))
    return Consistency(e, lhs, rhs)


@dataclass(frozen=True)
class CohomologyDims:
    alpha: int
    center: CenterElement
    degree: int
    r_hat: int
    per_level: tuple[int, ...]
    total: int
    atiyah_bott_point: tuple[Fraction, ...]  # simple-coroot coordinates


def cohomology_dimensions(d: RootDatum, c: CenterElement, alpha: int, deg_eta: int, r_hat: int = 0) -> CohomologyDims:
    if deg_eta >= 0:
        raise PreconditionError(f"degree must be negative, got {deg_eta}")
    if r_hat < 0:
        raise PreconditionError(f"r_hat must be nonnegative, got {r_hat}")
    p = parabolic_profile(d, alpha)
    o = o_c_alpha(d, c, alpha)
    dims = []
    for lv in p.levels:
        v = Fraction(-deg_eta * lv.i, o)
        if v.denominator != 1:
            raise CongruenceError(f"o_(c,alpha) = {o} does not divide deg * i({alpha},{lv.k}) = {deg_eta * lv.i}")
        dims.append(int(v))
    total = Fraction(-deg_eta * p.d1, o) + 1 + r_hat
    if total.denominator != 1 or total != 1 + r_hat + sum(dims[k - 1] for k in range(1, p.h_alpha + 1)):
        raise InternalInconsistency("level dimensions do not sum to the total")
    mu = tuple(Fraction(deg_eta * z, o * p.m_alpha) for z in p.zeta)
    return CohomologyDims(alpha, c, deg_eta, r_hat, tuple(dims), int(total), mu)


@dataclass(frozen=True)
class Minimality:
    passed: bool
    min_d1: int
    argmin: tuple[int, ...]
    equality_cases: tuple[tuple[int, int], ...]


def minimality_scan(d: RootDatum) -> Minimality:
    """Check ``1 + n d_1(beta) >= r + 2`` with equality exactly at (special beta, n = 1)."""
    r = d.rank
    ok = True
    eq = []
    d1s = {}
    for b in range(1, r + 1):
        d1 = parabolic_profile(d, b).d1
        d1s[b] = d1
        special = is_special(d, b)
        for n in range(1, d.coxeter + 1):
            v = 1 + n * d1
            if v < r + 2:
                ok = False
            if v == r + 2:
                eq.append((b, n))
                ok &= n == 1 and special
            elif n == 1 and special:
                ok = False
    m = min(d1s.values())
    return Minimality(ok, m, tuple(b for b, x in d1s.items() if x == m), tuple(eq))


@dataclass(frozen=True)
class SingularLocus:
    k: int
    components: tuple[tuple[SimpleType, bool], ...]  # (type, contains -lambda_k)
    divisible_count: int
    others_type_a: bool


def singular_locus_structure(d: RootDatum, c: CenterElement, alpha: int, k: int) -> SingularLocus:
    _require_c_special(d, c, alpha)
    p = parabolic_profile(d, alpha)
    if not 1 <= k <= p.h_alpha:
        raise RangeError(f"k must lie in 1..{p.h_alpha}, got {k}")
    sub = subsystem_R_alpha_k(d, alpha, k)
    comps = tuple((t, sub.lowest_position in pos) for t, pos in sub.components)
    w = wps_profile(d, c, alpha)
    nc = n_c_alpha(d, c, alpha)
    count = sum(1 for x in w.weights if x % (k * nc) == 0)
    others = all(t.family == "A" for t, has in comps if not has)
    return SingularLocus(k, comps, count, others)


def sub_moduli_orbit_counts(d: RootDatum, alpha: int, k: int) -> list[tuple[int, int, bool]]:
    """For the factor of ``R(alpha, k)`` through ``-lambda_k``: per central element of order k,
    ``(element index, number of orbits, whether -lambda_k is special for it)``.
    """
    sub = subsystem_R_alpha_k(d, alpha, k)
    simple = list(sub.simple)
    cor = [d.coroot(x) for x in simple]
    cm = [[int(d.pair(x, y)) for y in cor] for x in simple]
    comp = next(c for c in components(simple, cm) if sub.lowest_position in c)
    t, mapping = identify_type([[cm[i][j] for j in comp] for i in comp])
    g1 = build_root_system(t)
    node = mapping[comp.index(sub.lowest_position)] + 1
    out = []
    for e in center_group(g1).elements:
        if e.order != k:
            continue
        orbits = orbit_data(g1, e).r_c + 1
        special = node in {s.alpha for s in c_special_roots(g1, e)}
        out.append((e.index, orbits, special))
    return out


def fixed_lattice_form(d: RootDatum, c: CenterElement) -> list[list[Fraction]]:
    """``2g I_0`` restricted to the orbit-sum basis of the fixed coroot lattice."""
    lp = lattice_profile(d, c)
    return [[2 * d.dual_coxeter * x for x in row] for row in gram(lp.basis, d.I0_gram)]


__all__ = [
    "CohomologyDims",
    "Consistency",
    "Minimality",
    "SingularLocus",
    "WpsProfile",
    "cohomology_dimensions",
    "degree_consistency",
    "det_bundle_self_intersection",
    "fixed_lattice_form",
    "minimality_scan",
    "quadratic_top_power",
    "singular_locus_structure",
    "sub_moduli_orbit_counts",
    "weights_from_levels",
    "wps_profile",
    "wps_top_intersection",
]
