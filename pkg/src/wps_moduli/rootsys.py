"""Simple root systems in exact arithmetic.

Roots are stored as integer coordinate tuples in the simple-root basis and
coroots as integer tuples in the simple-coroot basis.  Simple roots use
Bourbaki numbering, shifted to start at 1; node 0 is the affine node
``alpha_0 = -(highest root)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConstructionError
from .linalg import QMatrix, inverse, lcm

FAMILIES = "ABCDEFG"
BASES = ("simple-root", "simple-coroot", "fundamental-weight", "fundamental-coweight")
_WEIGHT_SIDE = {"simple-root", "fundamental-weight"}

IntVec = tuple[int, ...]


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        f, r = self.family, self.rank
        if f not in FAMILIES:
            raise ConstructionError(f"family must be one of {', '.join(FAMILIES)}, got {f!r}")
        if not isinstance(r, int) or isinstance(r, bool):
            raise ConstructionError(f"rank must be an integer, got {r!r}")
        lower = {"A": 1, "B": 2, "C": 2, "D": 3}
        if f in lower and r < lower[f]:
            raise ConstructionError(f"type {f} requires rank >= {lower[f]}, got {r}")
        if f == "E" and r not in (6, 7, 8):
            raise ConstructionError(f"type E requires rank 6, 7 or 8, got {r}")
        if f == "F" and r != 4:
            raise ConstructionError(f"type F requires rank 4, got {r}")
        if f == "G" and r != 2:
            raise ConstructionError(f"type G requires rank 2, got {r}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def flagged(self) -> bool:
        """D3 is accepted but coincides with A3."""
        return self.family == "D" and self.rank == 3


@dataclass(frozen=True)
class RationalVector:
    coords: tuple[Fraction, ...]
    basis: str

    def __post_init__(self) -> None:
        if self.basis not in BASES:
            raise ValueError(f"unknown basis tag {self.basis!r}")
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    def __neg__(self) -> RationalVector:
        return RationalVector(tuple(-x for x in self.coords), self.basis)


def cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """Entry ``[i][j]`` is ``n(alpha_i, alpha_j) = alpha_i(alpha_j^vee)``."""
    f, n = t.family, t.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, ij: int = -1, ji: int = -1) -> None:
        c[i][j], c[j][i] = ij, ji

    if f in "ABCD":
        chain = n if f != "D" else n - 1
        for i in range(chain - 1):
            bond(i, i + 1)
        if f == "B":
            bond(n - 2, n - 1, -2, -1)  # last root short
        elif f == "C":
            bond(n - 2, n - 1, -1, -2)  # last root long
        elif f == "D":
            bond(n - 3, n - 1)
    elif f == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif f == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)
        bond(2, 3)
    elif f == "G":
        bond(0, 1, -1, -3)  # first root short
    return tuple(tuple(row) for row in c)


def symmetrizer(cartan: Sequence[Sequence[int]]) -> tuple[Fraction, ...]:
    """Squared root lengths making ``C[i][j] d_j`` symmetric, longest = 2."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] and d[j] is None:
                d[j] = d[i] * cartan[j][i] / cartan[i][j]
                stack.append(j)
    if any(x is None for x in d):
        raise ConstructionError("Cartan matrix is not connected")
    top = max(d)
    return tuple(2 * x / top for x in d)


@dataclass(frozen=True, eq=False)
class RootDatum:
    simple_type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    cartan_inv: tuple[tuple[Fraction, ...], ...]
    lengths: tuple[Fraction, ...]
    roots: tuple[IntVec, ...]
    positive_roots: tuple[IntVec, ...]
    coroots: tuple[IntVec, ...]
    highest_root: IntVec
    highest_coroot_of_root: IntVec
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    coxeter: int
    dual_coxeter: int
    q_gram: tuple[tuple[int, ...], ...]
    I0_gram: tuple[tuple[Fraction, ...], ...]
    fund_weights: tuple[tuple[Fraction, ...], ...]
    fund_coweights: tuple[tuple[Fraction, ...], ...]
    rho: tuple[Fraction, ...]
    sym: tuple[tuple[int, ...], ...] = ()
    sym_scale: int = 1
    _root_index: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    @property
    def nodes(self) -> range:
        """Indices of the extended diagram, 0 being the affine node."""
        return range(self.rank + 1)

    # -- pairings -------------------------------------------------------
    def pair(self, x: Sequence, y: Sequence) -> Fraction | int:
        """``x(y)`` for x in simple-root and y in simple-coroot coordinates."""
        c = self.cartan
        return sum(x[i] * c[i][j] * y[j] for i in range(self.rank) if x[i] for j in range(self.rank) if y[j])

    def root_inner(self, x: Sequence, y: Sequence) -> Fraction:
        b, n = self.sym, self.rank
        return Fraction(sum(x[i] * b[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j]), self.sym_scale)

    def coroot(self, x: Sequence[int]) -> IntVec:
        """Coroot of a root, in simple-coroot coordinates."""
        ll = self.root_inner(x, x)
        out = []
        for xi, di in zip(x, self.lengths):
            v = xi * di / ll
            if v.denominator != 1:
                raise ConstructionError("coroot is not integral")
            out.append(int(v))
        return tuple(out)

    def is_root(self, x: Sequence[int]) -> bool:
        return tuple(x) in self._root_index

    def simple_root(self, i: int) -> IntVec:
        """Root of extended node ``i`` (``0`` gives ``-highest root``)."""
        if i == 0:
            return tuple(-x for x in self.highest_root)
        return tuple(int(j == i - 1) for j in range(self.rank))

    def simple_coroot(self, i: int) -> IntVec:
        if i == 0:
            return tuple(-x for x in self.highest_coroot_of_root)
        return tuple(int(j == i - 1) for j in range(self.rank))

    def affine_cartan(self) -> list[list[int]]:
        """``n(beta, gamma)`` over the extended node set."""
        return [[int(self.pair(self.simple_root(b), self.simple_coroot(g))) for g in self.nodes] for b in self.nodes]

    def is_long(self, i: int) -> bool:
        return self.lengths[i - 1] == 2

    # -- reflections ----------------------------------------------------
    def reflect_root_side(self, j: int, x: Sequence) -> tuple:
        """``s_j`` on a simple-root-coordinate vector (j is 1-based)."""
        p = sum(x[i] * self.cartan[i][j - 1] for i in range(self.rank))
        if not p:
            return tuple(x)
        out = list(x)
        out[j - 1] -= p
        return tuple(out)

    def reflect_coroot_side(self, j: int, y: Sequence) -> tuple:
        p = sum(self.cartan[j - 1][k] * y[k] for k in range(self.rank))
        if not p:
            return tuple(y)
        out = list(y)
        out[j - 1] -= p
        return tuple(out)

    # -- basis conversion ----------------------------------------------
    def convert(self, v: RationalVector, basis: str) -> RationalVector:
        if v.basis == basis:
            return v
        if (v.basis in _WEIGHT_SIDE) != (basis in _WEIGHT_SIDE):
            raise ValueError("cannot convert between V and its dual without a chosen form")
        x, n, c, ci = v.coords, self.rank, self.cartan, self.cartan_inv
        if v.basis == "simple-root":  # to weight coords: x(alpha_j^vee)
            out = [sum(x[i] * c[i][j] for i in range(n)) for j in range(n)]
        elif v.basis == "fundamental-weight":
            out = [sum(x[i] * ci[i][j] for i in range(n)) for j in range(n)]
        elif v.basis == "simple-coroot":  # to coweight coords: alpha_j(y)
            out = [sum(c[j][k] * x[k] for k in range(n)) for j in range(n)]
        else:
            out = [sum(ci[j][k] * x[k] for k in range(n)) for j in range(n)]
        return RationalVector(tuple(out), basis)

    def vector(self, coords: Iterable, basis: str = "simple-root") -> RationalVector:
        return RationalVector(tuple(coords), basis)


def _close_under_reflections(cartan, start: Iterable[IntVec]) -> list[IntVec]:
    n = len(cartan)
    seen = set(start)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for j in range(n):
                p = sum(x[i] * cartan[i][j] for i in range(n))
                if p:
                    y = list(x)
                    y[j] -= p
                    y = tuple(y)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return sorted(seen)


def _height(x: Sequence) -> int:
    return sum(x)


def build_root_system(t: SimpleType, comark_fault: tuple[int, int] | None = None) -> RootDatum:
    """Construct the root datum of ``t``.

    ``comark_fault`` is a test hook ``(node, delta)`` that corrupts one comark
    after construction so that verification sweeps can be shown to fail.
    """
    if comark_fault is None:
        return _build_cached(t)
    d = _build(t)
    node, delta = comark_fault
    comarks = list(d.comarks)
    comarks[node] += delta
    return _replace(d, comarks=tuple(comarks), dual_coxeter=sum(comarks))


def _replace(d: RootDatum, **kw) -> RootDatum:
    import dataclasses

    new = dataclasses.replace(d, **kw)
    new._root_index.update(d._root_index)
    return new


@lru_cache(maxsize=None)
def _build_cached(t: SimpleType) -> RootDatum:
    return _build(t)


def _build(t: SimpleType) -> RootDatum:
    n = t.rank
    cartan = cartan_matrix(t)
    lengths = symmetrizer(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = _close_under_reflections(cartan, simple)
    positive = [x for x in roots if any(x) and min(x) >= 0]
    top_h = max(_height(x) for x in positive)
    tops = [x for x in positive if _height(x) == top_h]
    if len(tops) != 1:
        raise ConstructionError("highest root is not unique")
    highest = tops[0]
    ci = inverse(cartan)

    # integer symmetrization: <x, y> = x^T B y / scale, long roots of length 2
    ilen = [int(x * lcm(*(y.denominator for y in lengths))) for x in lengths]
    scale = max(ilen)
    sym = tuple(tuple(cartan[i][j] * ilen[j] for j in range(n)) for i in range(n))

    def coroot_of(x: Sequence[int]) -> IntVec:
        ll = sum(x[i] * sym[i][j] * x[j] for i in range(n) if x[i] for j in range(n) if x[j])
        out = []
        for xi, li in zip(x, ilen):
            q, r = divmod(2 * xi * li, ll)
            if r:
                raise ConstructionError("coroot is not integral")
            out.append(q)
        return tuple(out)

    coroots = tuple(coroot_of(x) for x in roots)
    hc = coroot_of(highest)
    marks = (1,) + tuple(highest)
    comarks = (1,) + tuple(hc)

    # Q(x, y) = sum over roots of beta(x) beta(y), on simple coroots
    evals = [[sum(x[i] * cartan[i][j] for i in range(n)) for j in range(n)] for x in roots]
    q = tuple(tuple(sum(e[i] * e[j] for e in evals) for j in range(n)) for i in range(n))
    q_top = sum(hc[i] * q[i][j] * hc[j] for i in range(n) for j in range(n))
    i0 = tuple(tuple(Fraction(2 * q[i][j], q_top) for j in range(n)) for i in range(n))

    fw = tuple(tuple(ci[i]) for i in range(n))
    fcw = tuple(tuple(ci[k][i] for k in range(n)) for i in range(n))
    rho = tuple(sum((fw[i][k] for i in range(n)), Fraction(0)) for k in range(n))

    d = RootDatum(
        simple_type=t,
        cartan=cartan,
        cartan_inv=tuple(tuple(row) for row in ci),
        lengths=lengths,
        roots=tuple(roots),
        positive_roots=tuple(positive),
        coroots=coroots,
        highest_root=highest,
        highest_coroot_of_root=hc,
        marks=marks,
        comarks=comarks,
        coxeter=sum(marks),
        dual_coxeter=sum(comarks),
        q_gram=q,
        I0_gram=i0,
        fund_weights=fw,
        fund_coweights=fcw,
        rho=rho,
        sym=sym,
        sym_scale=scale,
    )
    d._root_index.update({x: k for k, x in enumerate(roots)})
    return d


def coxeter_invariants(d: RootDatum) -> tuple[int, int, tuple[int, ...], tuple[int, ...]]:
    return d.coxeter, d.dual_coxeter, d.marks, d.comarks


def symmetric_form_gram(d: RootDatum) -> QMatrix:
    """I_0 on simple coroots from the symmetrized Cartan matrix.

    Independent of the root enumeration: ``<a_i^v, a_j^v> = 4<a_i,a_j>/(|a_i|^2|a_j|^2)``
    with long roots of squared length 2.
    """
    n, c, l = d.rank, d.cartan, d.lengths
    return [[c[i][j] * l[j] / 2 * 4 / (l[i] * l[j]) for j in range(n)] for i in range(n)]


def antidominant_word(d: RootDatum, J: Iterable[int], x: Sequence, side: str = "root") -> tuple[tuple, list[int]]:
    """Reflection sweep: smallest index in J with positive pairing, until none.

    ``side`` is ``"root"`` for simple-root coordinates (pairing with coroots)
    or ``"coroot"`` for simple-coroot coordinates.  Returns the final vector
    and the list of reflections applied, in order.
    """
    Js = sorted(set(J))
    n = d.rank
    c = d.cartan
    y = list(x)
    # keep the pairings <y, alpha_j> up to date instead of recomputing them
    if side == "root":
        p = [sum(y[i] * c[i][j] for i in range(n)) for j in range(n)]
        step = [[c[j][k] for k in range(n)] for j in range(n)]
    else:
        p = [sum(c[j][k] * y[k] for k in range(n)) for j in range(n)]
        step = [[c[k][j] for k in range(n)] for j in range(n)]
    word: list[int] = []
    while True:
        for j in Js:
            v = p[j - 1]
            if v > 0:
                y[j - 1] -= v
                row = step[j - 1]
                for k in range(n):
                    if row[k]:
                        p[k] -= v * row[k]
                word.append(j)
                break
        else:
            return tuple(y), word


def make_antidominant_within(d: RootDatum, J: Iterable[int], x: RationalVector) -> RationalVector:
    """Move ``x`` into the antidominant chamber of the subgroup W(J).

    ``J`` holds 1-based simple-root indices.  Weight-side vectors are paired
    with coroots; coweight-side vectors with roots.
    """
    if x.basis in _WEIGHT_SIDE:
        y, _ = antidominant_word(d, J, d.convert(x, "simple-root").coords, "root")
        return d.convert(RationalVector(y, "simple-root"), x.basis)
    y, _ = antidominant_word(d, J, d.convert(x, "simple-coroot").coords, "coroot")
    return d.convert(RationalVector(y, "simple-coroot"), x.basis)


def longest_word(d: RootDatum, J: Iterable[int]) -> list[int]:
    """Reduced word (in application order) for the longest element of W(J).

    Sweeping the regular vector rho has no wall ambiguity: its stabilizer in
    W(J) is trivial, so the element reached is unique.
    """
    return list(_longest_word(d, tuple(sorted(set(J)))))


@lru_cache(maxsize=None)
def _longest_word(d: RootDatum, J: tuple[int, ...]) -> tuple[int, ...]:
    two_rho = [int(2 * x) for x in d.rho]  # same chamber walk as rho, integer arithmetic
    _, word = antidominant_word(d, J, two_rho, "root")
    return tuple(word)


def apply_word(d: RootDatum, word: Sequence[int], x: Sequence, side: str = "root") -> tuple:
    """Apply reflections ``word[0]`` first, then ``word[1]``, ..."""
    y = tuple(x)
    refl = d.reflect_root_side if side == "root" else d.reflect_coroot_side
    for j in word:
        y = refl(j, y)
    return y


def weyl_group_order(d: RootDatum) -> int:
    """|W| as the size of the orbit of the regular vector rho (rank <= 4)."""
    if d.rank > 4:
        raise ValueError("brute-force Weyl enumeration is limited to rank 4")
    start = tuple(d.rho)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for j in range(1, d.rank + 1):
                y = d.reflect_root_side(j, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def expected_root_count(t: SimpleType) -> int:
    r = t.rank
    return {
        "A": r * (r + 1),
        "B": 2 * r * r,
        "C": 2 * r * r,
        "D": 2 * r * (r - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(r, 0),
        "F": 48,
        "G": 12,
    }[t.family]


def all_types(max_rank: int = 12, families: str = FAMILIES) -> list[SimpleType]:
    """Every valid type with rank <= ``max_rank`` (exceptionals always included)."""
    out = []
    for f in families:
        for r in range(1, max(max_rank, 8) + 1):
            if f in "ABCD" and r > max_rank:
                continue
            try:
                out.append(SimpleType(f, r))
            except ConstructionError:
                pass
    return out
