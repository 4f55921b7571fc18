"""Maximal-parabolic combinatorics attached to a simple root.

For a simple root ``alpha`` the roots are graded by their ``alpha``
coefficient.  The level sizes give the integers ``i(alpha, k)`` and their
divisor sums ``d_k(alpha)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import InternalInconsistency, PreconditionError, RangeError
from .linalg import lcm
from .rootsys import (
    IntVec,
    RootDatum,
    SimpleType,
    apply_word,
    cartan_matrix,
    longest_word,
)


def euler_phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


# -- Dynkin typing ------------------------------------------------------

def _cartan_graph(c: Sequence[Sequence[int]]) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(c)))
    for i, row in enumerate(c):
        for j, x in enumerate(row):
            if i != j and x:
                g.add_edge(i, j, w=x)
    return g


def _candidates(n: int) -> list[SimpleType]:
    out = [SimpleType("A", n)]
    if n >= 2:
        out.append(SimpleType("B", n))
    if n >= 3:
        out.append(SimpleType("C", n))
    if n >= 4:
        out.append(SimpleType("D", n))
    if n in (6, 7, 8):
        out.append(SimpleType("E", n))
    if n == 4:
        out.append(SimpleType("F", 4))
    if n == 2:
        out.append(SimpleType("G", 2))
    return out


def identify_type(c: Sequence[Sequence[int]]) -> tuple[SimpleType, dict[int, int]]:
    """Type of a connected Cartan matrix and a node map into its standard form.

    The map sends each row index of ``c`` to a 0-based Bourbaki index.
    """
    g = _cartan_graph(c)
    for t in _candidates(len(c)):
        m = DiGraphMatcher(g, _cartan_graph(cartan_matrix(t)), edge_match=lambda a, b: a["w"] == b["w"])
        if m.is_isomorphic():
            return t, dict(m.mapping)
    raise InternalInconsistency("Cartan matrix matches no simple type")


def components(nodes: Sequence[int], c: Sequence[Sequence[int]]) -> list[list[int]]:
    """Connected components (as sorted lists of positions) of a Cartan submatrix."""
    g = nx.Graph()
    g.add_nodes_from(range(len(nodes)))
    g.add_edges_from((i, j) for i in range(len(nodes)) for j in range(len(nodes)) if i != j and c[i][j])
    return sorted(sorted(cc) for cc in nx.connected_components(g))


def type_of_simple_set(d: RootDatum, simple: Sequence[IntVec]) -> list[tuple[SimpleType, list[int]]]:
    """Components of a set of simple roots, each with its type and member positions."""
    cor = [d.coroot(x) for x in simple]
    c = [[int(d.pair(x, y)) for y in cor] for x in simple]
    out = []
    for comp in components(simple, c):
        sub = [[c[i][j] for j in comp] for i in comp]
        t, _ = identify_type(sub)
        out.append((t, comp))
    out.sort(key=lambda tc: (-tc[0].rank, tc[0].family, tc[1]))
    return out


# -- profile ------------------------------------------------------------

@dataclass(frozen=True)
class Level:
    k: int
    size: int
    lowest: IntVec
    highest: IntVec
    k_prime: int
    i: int


@dataclass(frozen=True)
class ParabolicProfile:
    simple_type: SimpleType
    alpha: int
    levi_components: tuple[tuple[SimpleType, tuple[int, ...]], ...]
    zeta: IntVec
    m_alpha: int
    n_alpha: int
    h_alpha: int
    g_alpha: int
    levels: tuple[Level, ...]
    d_seq: tuple[int, ...]

    @property
    def d1(self) -> int:
        return self.d_seq[0]

    @property
    def i_seq(self) -> tuple[int, ...]:
        return tuple(lv.i for lv in self.levels)


def _check_alpha(d: RootDatum, alpha: int) -> None:
    if not 1 <= alpha <= d.rank:
        raise RangeError(f"simple root index must lie in 1..{d.rank}, got {alpha}")


def _extreme(level: Sequence[IntVec], lowest: bool) -> IntVec:
    """Unique element below (or above) every other one in the dominance order."""
    for x in level:
        if lowest and all(min(b - a for a, b in zip(x, y)) >= 0 for y in level):
            return x
        if not lowest and all(min(a - b for a, b in zip(x, y)) >= 0 for y in level):
            return x
    raise InternalInconsistency("level set has no extreme root")


def zeta_data(d: RootDatum, alpha: int) -> tuple[IntVec, int, int]:
    """``(zeta, m_alpha, n_alpha)``; zeta in simple-coroot coordinates."""
    col = [d.cartan_inv[k][alpha - 1] for k in range(d.rank)]
    n_a = lcm(*(x.denominator for x in col))
    zeta = tuple(int(x * n_a) for x in col)
    return zeta, zeta[alpha - 1], n_a


@lru_cache(maxsize=4096)
def parabolic_profile(d: RootDatum, alpha: int) -> ParabolicProfile:
    _check_alpha(d, alpha)
    a = alpha - 1
    zeta, m_a, n_a = zeta_data(d, alpha)
    h_a = d.highest_root[a]
    by_level: dict[int, list[IntVec]] = {}
    for x in d.roots:
        if x[a] > 0:
            by_level.setdefault(x[a], []).append(x)
    if sorted(by_level) != list(range(1, h_a + 1)):
        raise InternalInconsistency("levels are not exactly 1..h_alpha")
    ll_a = d.lengths[a]
    levels = []
    for k in range(1, h_a + 1):
        s = by_level[k]
        low, high = _extreme(s, True), _extreme(s, False)
        kp = Fraction(k) * ll_a / d.root_inner(high, high)
        if kp.denominator != 1 or kp != d.coroot(high)[a]:
            raise InternalInconsistency(f"k' is not the alpha^vee coefficient at level {k}")
        i_val = Fraction(k * n_a * len(s), m_a)
        if i_val.denominator != 1 or i_val <= 0:
            raise InternalInconsistency(f"i({alpha},{k}) = {i_val} is not a positive integer")
        levels.append(Level(k, len(s), low, high, int(kp), int(i_val)))
    i_vals = [lv.i for lv in levels]
    d_seq = tuple(sum(i_vals[x - 1] for x in range(k, h_a + 1, k)) for k in range(1, h_a + 1))
    rest = [j for j in range(1, d.rank + 1) if j != alpha]
    comps = type_of_simple_set(d, [d.simple_root(j) for j in rest])
    levi = tuple((t, tuple(rest[p] for p in comp)) for t, comp in comps)
    return ParabolicProfile(
        simple_type=d.simple_type,
        alpha=alpha,
        levi_components=levi,
        zeta=zeta,
        m_alpha=m_a,
        n_alpha=n_a,
        h_alpha=h_a,
        g_alpha=d.comarks[alpha],
        levels=tuple(levels),
        d_seq=d_seq,
    )


def dk_sequence(p: ParabolicProfile) -> list[tuple[int, int, int]]:
    """``(k, i(alpha,k), d_k(alpha))`` for k = 1..h_alpha."""
    return [(lv.k, lv.i, dk) for lv, dk in zip(p.levels, p.d_seq)]


# -- independent routes to d_1 and the Levi permutation -----------------

def d1_from_rho(d: RootDatum, alpha: int) -> Fraction:
    """``2 rho(w^v) / w(w^v)`` with w the fundamental weight of alpha."""
    cw = d.fund_coweights[alpha - 1]
    return 2 * d.pair(d.rho, cw) / d.pair(d.fund_weights[alpha - 1], cw)


def d1_from_pairings(d: RootDatum, alpha: int) -> int:
    """Sum of ``n(beta, alpha)`` over roots with positive alpha coefficient."""
    a = alpha - 1
    return sum(sum(x[i] * d.cartan[i][a] for i in range(d.rank)) for x in d.roots if x[a] > 0)


def highest_coroot_at_one(d: RootDatum, alpha: int) -> IntVec:
    """Highest coroot whose alpha^vee coefficient is 1, found among R^vee."""
    a = alpha - 1
    level = [y for y in d.coroots if y[a] == 1]
    return _extreme(level, False)


def d1_from_coroot(d: RootDatum, alpha: int) -> int:
    return sum(highest_coroot_at_one(d, alpha)) + 1


def levi_longest_word(d: RootDatum, alpha: int) -> list[int]:
    return longest_word(d, [j for j in range(1, d.rank + 1) if j != alpha])


def levi_involution(d: RootDatum, alpha: int) -> dict[int, int]:
    """Permutation tau of simple indices induced by ``-w_0'`` (alpha fixed)."""
    word = levi_longest_word(d, alpha)
    tau = {alpha: alpha}
    for j in range(1, d.rank + 1):
        if j == alpha:
            continue
        img = tuple(-x for x in apply_word(d, word, d.simple_root(j)))
        if sum(img) != 1 or min(img) < 0:
            raise InternalInconsistency("-w_0' does not preserve the Levi simple roots")
        tau[j] = img.index(1) + 1
    return tau


def permute(x: Sequence[int], tau: dict[int, int]) -> IntVec:
    out = [0] * len(x)
    for i, v in enumerate(x):
        out[tau[i + 1] - 1] = v
    return tuple(out)


# -- special roots and subsystems ----------------------------------------

def is_special(d: RootDatum, alpha: int) -> bool:
    """Complement all of type A, met at component ends, and alpha long."""
    _check_alpha(d, alpha)
    if not d.is_long(alpha):
        return False
    for t, comp in parabolic_profile(d, alpha).levi_components:
        if t.family != "A":
            return False
        neighbours = [j for j in comp if d.cartan[alpha - 1][j - 1]]
        ends = [j for j in comp if sum(1 for m in comp if m != j and d.cartan[j - 1][m - 1]) <= 1]
        if len(neighbours) != 1 or neighbours[0] not in ends:
            return False
    return True


def special_roots(d: RootDatum) -> list[int]:
    return [a for a in range(1, d.rank + 1) if is_special(d, a)]


@dataclass(frozen=True)
class Subsystem:
    simple: tuple[IntVec, ...]
    roots: tuple[IntVec, ...]
    components: tuple[tuple[SimpleType, tuple[int, ...]], ...]
    lowest_position: int

    @property
    def types(self) -> list[SimpleType]:
        return [t for t, _ in self.components]


def subsystem_R_alpha_k(d: RootDatum, alpha: int, k: int) -> Subsystem:
    """Roots whose alpha coefficient is divisible by k, with a simple system.

    The simple system is the complement of alpha plus ``-lambda_k(alpha)``;
    position ``lowest_position`` in ``simple`` holds the latter.
    """
    p = parabolic_profile(d, alpha)
    if not 1 <= k <= p.h_alpha:
        raise RangeError(f"k must lie in 1..{p.h_alpha}, got {k}")
    lam = p.levels[k - 1].highest
    simple = [d.simple_root(j) for j in range(1, d.rank + 1) if j != alpha]
    simple.append(tuple(-x for x in lam))
    target = sorted(x for x in d.roots if x[alpha - 1] % k == 0)
    gen = _close_in(d, simple)
    if gen != target:
        raise InternalInconsistency(f"simple set does not generate R({alpha},{k})")
    comps = type_of_simple_set(d, simple)
    return Subsystem(tuple(simple), tuple(gen), tuple((t, tuple(c)) for t, c in comps), len(simple) - 1)


def _close_in(d: RootDatum, simple: Sequence[IntVec]) -> list[IntVec]:
    """Closure of ``simple`` under its own reflections."""
    cor = [d.coroot(x) for x in simple]
    seen = set(map(tuple, simple))
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for s, sv in zip(simple, cor):
                p = d.pair(x, sv)
                if p:
                    y = tuple(a - p * b for a, b in zip(x, s))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return sorted(seen)


def levi_special_structure(d: RootDatum, alpha: int) -> tuple[list[int], int]:
    """Sizes ``n_i`` of the SL factors of the Levi and their lcm."""
    if not is_special(d, alpha):
        raise PreconditionError(f"simple root {alpha} of {d.simple_type} is not special")
    p = parabolic_profile(d, alpha)
    ns = sorted(t.rank + 1 for t, _ in p.levi_components)
    return ns, lcm(*ns)


def gcd_all(xs: Sequence[int]) -> int:
    out = 0
    for x in xs:
        out = gcd(out, x)
    return out
