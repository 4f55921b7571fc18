"""Center of the simply connected group and its action on the extended diagram.

The center is ``P^v / Q^v``: fundamental-coweight coordinates modulo the
column span of the Cartan matrix.  A central element ``c`` acts on the
extended Dynkin diagram by a permutation ``tau_c``; its orbits carry the
integers used for the moduli weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, gcd, prod
from typing import Sequence

from .errors import ElementDomainError, InternalInconsistency
from .linalg import det, gram, invariant_factors, lcm, matvec, smith_normal_form
from .parabolic import gcd_all, parabolic_profile
from .rootsys import RootDatum, SimpleType, apply_word, longest_word


@dataclass(frozen=True)
class CenterElement:
    simple_type: SimpleType
    factors: tuple[int, ...]
    coords: tuple[int, ...]
    index: int
    order: int
    node: int  # extended-diagram node of mark 1 representing the class

    @property
    def trivial(self) -> bool:
        return self.order == 1

    def coweight(self, rank: int) -> tuple[int, ...]:
        """Fundamental-coweight coordinates of the minuscule representative."""
        return tuple(int(j == self.node) for j in range(1, rank + 1))


@dataclass(frozen=True)
class CenterGroup:
    simple_type: SimpleType
    factors: tuple[int, ...]
    elements: tuple[CenterElement, ...]
    _u_rows: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return prod(self.factors)

    def class_of(self, coweight: Sequence[int]) -> tuple[int, ...]:
        """Class of an integral coweight (fundamental-coweight coordinates)."""
        return tuple(sum(a * b for a, b in zip(row, coweight)) % f for row, f in zip(self._u_rows, self.factors))

    def element(self, coords: Sequence[int]) -> CenterElement:
        key = tuple(x % f for x, f in zip(coords, self.factors))
        for e in self.elements:
            if e.coords == key:
                return e
        raise ElementDomainError(f"{tuple(coords)} is not an element of Z({self.simple_type})")

    def add(self, a: CenterElement, b: CenterElement) -> CenterElement:
        return self.element([x + y for x, y in zip(a.coords, b.coords)])

    def multiple(self, a: CenterElement, m: int) -> CenterElement:
        return self.element([m * x for x in a.coords])

    def subgroup(self, a: CenterElement) -> list[CenterElement]:
        return [self.multiple(a, m) for m in range(a.order)]

    def generates(self, a: CenterElement) -> bool:
        return a.order == self.order


def _order(coords: Sequence[int], factors: Sequence[int]) -> int:
    return lcm(*(f // gcd(x, f) for x, f in zip(coords, factors)))


@lru_cache(maxsize=None)
def _center_group(d: RootDatum) -> CenterGroup:
    u, dmat, _ = smith_normal_form(d.cartan)
    diag = [dmat[i][i] for i in range(d.rank)]
    keep = [i for i, x in enumerate(diag) if x > 1]
    factors = tuple(diag[i] for i in keep)
    rows = tuple(tuple(u[i]) for i in keep)

    def cls(node: int) -> tuple[int, ...]:
        if node == 0:
            return tuple(0 for _ in factors)
        return tuple(row[node - 1] % f for row, f in zip(rows, factors))

    minuscule = {cls(j): j for j in d.nodes if d.marks[j] == 1}
    elements = []
    for idx, coords in enumerate(product(*(range(f) for f in factors))):
        if coords not in minuscule:
            raise InternalInconsistency(f"center class {coords} of {d.simple_type} has no minuscule coweight")
        elements.append(CenterElement(d.simple_type, factors, coords, idx, _order(coords, factors), minuscule[coords]))
    if len(minuscule) != len(elements):
        raise InternalInconsistency("minuscule coweights do not biject onto the center")
    return CenterGroup(d.simple_type, factors, tuple(elements), rows)


def center_group(d: RootDatum) -> CenterGroup:
    return _center_group(d)


def _check_element(d: RootDatum, c: CenterElement) -> CenterGroup:
    z = center_group(d)
    if c.simple_type != d.simple_type or c.factors != z.factors or c not in z.elements:
        raise ElementDomainError(f"{c} is not an element of Z({d.simple_type})")
    return z


# -- diagram automorphism -------------------------------------------------

@dataclass(frozen=True)
class AffineAutomorphism:
    element: CenterElement
    perm: tuple[int, ...]  # perm[i] = tau_c(node i)

    @property
    def order(self) -> int:
        seen, out = set(), 1
        for i in range(len(self.perm)):
            n, j = 0, i
            while True:
                j = self.perm[j]
                n += 1
                if j == i:
                    break
            out = lcm(out, n)
            seen.add(i)
        return out

    def compose(self, other: AffineAutomorphism) -> tuple[int, ...]:
        """``self o other`` as a permutation."""
        return tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))


def weyl_word(d: RootDatum, c: CenterElement) -> list[int]:
    """Reflection word (application order) for ``w_c = w_{0,J} w_0``, J = Delta minus c's node."""
    if c.trivial:
        return []
    full = longest_word(d, range(1, d.rank + 1))
    levi = longest_word(d, [j for j in range(1, d.rank + 1) if j != c.node])
    return full + levi


@lru_cache(maxsize=None)
def _diagram_automorphism(d: RootDatum, c: CenterElement) -> AffineAutomorphism:
    word = weyl_word(d, c)
    ext = {d.simple_root(i): i for i in d.nodes}
    perm = []
    for i in d.nodes:
        img = apply_word(d, word, d.simple_root(i))
        if img not in ext:
            raise InternalInconsistency(f"w_c does not permute the extended simple roots of {d.simple_type}")
        perm.append(ext[img])
    tau = AffineAutomorphism(c, tuple(perm))
    validate_automorphism(d, tau)
    return tau


def diagram_automorphism(d: RootDatum, c: CenterElement) -> AffineAutomorphism:
    _check_element(d, c)
    return _diagram_automorphism(d, c)


def automorphism_defects(d: RootDatum, tau: AffineAutomorphism) -> list[str]:
    """Names of the structural properties ``tau`` fails (empty when valid)."""
    p, c = tau.perm, tau.element
    out = []
    if sorted(p) != list(d.nodes):
        return ["not a permutation"]
    a = d.affine_cartan()
    if any(a[p[i]][p[j]] != a[i][j] for i in d.nodes for j in d.nodes):
        out.append("affine Cartan integers")
    if any(d.marks[p[i]] != d.marks[i] for i in d.nodes):
        out.append("marks")
    if any(d.comarks[p[i]] != d.comarks[i] for i in d.nodes):
        out.append("comarks")
    if tau.order != c.order:
        out.append("order")
    if p[0] != c.node:
        out.append("image of the affine node")
    if d.simple_type.family == "A" and not c.trivial and any(p[i] == i for i in d.nodes):
        out.append("fixed points in type A")
    return out


def validate_automorphism(d: RootDatum, tau: AffineAutomorphism) -> None:
    bad = automorphism_defects(d, tau)
    if bad:
        raise InternalInconsistency(f"tau_c for {d.simple_type} fails: {', '.join(bad)}")


def homomorphism_defects(d: RootDatum) -> list[tuple[int, int]]:
    """Pairs of element indices where ``tau_{a+b} != tau_a o tau_b``."""
    z = center_group(d)
    out = []
    for a in z.elements:
        for b in z.elements:
            ab = z.add(a, b)
            if diagram_automorphism(d, ab).perm != diagram_automorphism(d, a).compose(diagram_automorphism(d, b)):
                out.append((a.index, b.index))
    return out


def coroot_action(d: RootDatum, c: CenterElement) -> list[list[int]]:
    """Matrix of w_c on simple-coroot coordinates, read off from tau_c.

    Column i is the coroot of node ``tau_c(i)``, where node 0 stands for
    minus the coroot of the highest root.
    """
    tau = diagram_automorphism(d, c)
    cols = [d.simple_coroot(tau.perm[i]) for i in range(1, d.rank + 1)]
    return [[cols[j][i] for j in range(d.rank)] for i in range(d.rank)]


def coroot_action_from_word(d: RootDatum, c: CenterElement) -> list[list[int]]:
    word = weyl_word(d, c)
    cols = [apply_word(d, word, d.simple_coroot(i), "coroot") for i in range(1, d.rank + 1)]
    return [[cols[j][i] for j in range(d.rank)] for i in range(d.rank)]


# -- orbits -----------------------------------------------------------------

@dataclass(frozen=True)
class OrbitProfile:
    element: CenterElement
    tau: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]
    g_bar: tuple[int, ...]
    n0: int
    r_c: int

    @property
    def affine_orbit(self) -> int:
        return next(k for k, o in enumerate(self.orbits) if 0 in o)


@lru_cache(maxsize=None)
def _orbit_data(d: RootDatum, c: CenterElement) -> OrbitProfile:
    tau = diagram_automorphism(d, c).perm
    seen: set[int] = set()
    orbits = []
    for i in d.nodes:
        if i in seen:
            continue
        orb, j = [], i
        while j not in orb:
            orb.append(j)
            j = tau[j]
        seen.update(orb)
        orbits.append(tuple(sorted(orb)))
    sizes = tuple(len(o) for o in orbits)
    g_bar = tuple(len(o) * d.comarks[o[0]] for o in orbits)
    return OrbitProfile(c, tau, tuple(orbits), sizes, g_bar, gcd_all(g_bar), len(orbits) - 1)


def orbit_data(d: RootDatum, c: CenterElement) -> OrbitProfile:
    _check_element(d, c)
    return _orbit_data(d, c)


def quotient_dot(d: RootDatum, c: CenterElement) -> str:
    """Quotient diagram as a DOT graph labelled by (n, g) per orbit."""
    op = orbit_data(d, c)
    a = d.affine_cartan()
    where = {i: k for k, o in enumerate(op.orbits) for i in o}
    lines = [f'graph "{d.simple_type}/c{c.index}" {{']
    for k, o in enumerate(op.orbits):
        label = "{" + ",".join(map(str, o)) + f"}} n={op.sizes[k]} g={op.g_bar[k]}"
        lines.append(f'  o{k} [label="{label}"];')
    edges = sorted({tuple(sorted((where[i], where[j]))) for i in d.nodes for j in d.nodes
                    if i < j and a[i][j] and where[i] != where[j]})
    lines += [f"  o{x} -- o{y};" for x, y in edges]
    lines.append("}")
    return "\n".join(lines)


# -- lattices ---------------------------------------------------------------

@dataclass(frozen=True)
class LatticeProfile:
    basis: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    det: Fraction
    fixed_rank: int
    saturated: bool
    coinvariant_factors: tuple[int, ...]  # nontrivial finite cyclic factors
    free_rank: int
    torsion_order: int
    free_relation: tuple[int, ...]
    relation_holds: bool
    fixed_image_index: int  # degree of T_0 -> T_{w_c}
    component_order: int  # |T^{w_c} / T_0|


def orbit_sum_basis(d: RootDatum, op: OrbitProfile) -> list[tuple[int, ...]]:
    out = []
    for o in op.orbits:
        if 0 in o:
            continue
        out.append(tuple(sum(d.simple_coroot(b)[i] for b in o) for i in range(d.rank)))
    return out


@lru_cache(maxsize=None)
def _lattice_profile(d: RootDatum, c: CenterElement) -> LatticeProfile:
    op = orbit_data(d, c)
    n = d.rank
    w = coroot_action(d, c)
    basis = orbit_sum_basis(d, op)
    for b in basis:
        if tuple(matvec(w, b)) != b:
            raise InternalInconsistency("orbit sum is not fixed by w_c")
    g = gram(basis, d.I0_gram)
    one_minus_w = [[int(i == j) - w[i][j] for j in range(n)] for i in range(n)]
    u, dm, _ = smith_normal_form(one_minus_w)
    diag = [dm[i][i] for i in range(n)]
    fixed_rank = n - sum(1 for x in diag if x)
    saturated = all(x == 1 for x in invariant_factors([list(r) for r in zip(*basis)])) if basis else True
    free_idx = [i for i, x in enumerate(diag) if x == 0]
    torsion = tuple(x for x in diag if x > 1)

    def free_image(v: Sequence[int]) -> tuple[int, ...]:
        y = matvec(u, v)
        return tuple(y[i] for i in free_idx)

    # images of the extended-node coroots in the free quotient, per orbit
    rel = tuple(gb // op.n0 for gb in op.g_bar)
    images = []
    consistent = True
    for o in op.orbits:
        imgs = {free_image(d.simple_coroot(b)) for b in o}
        consistent &= len(imgs) == 1
        images.append(next(iter(imgs)))
    total = tuple(sum(r * e[i] for r, e in zip(rel, images)) for i in range(len(free_idx)))
    surjective = all(x == 1 for x in invariant_factors([list(r) for r in zip(*images)])) if free_idx else True
    relation_holds = consistent and surjective and not any(total)
    index = abs(det([list(free_image(b)) for b in basis])) if basis else Fraction(1)
    return LatticeProfile(
        basis=tuple(basis),
        gram=tuple(tuple(r) for r in g),
        det=det(g),
        fixed_rank=fixed_rank,
        saturated=saturated,
        coinvariant_factors=torsion,
        free_rank=len(free_idx),
        torsion_order=prod(torsion),
        free_relation=rel,
        relation_holds=relation_holds,
        fixed_image_index=int(index),
        component_order=prod(torsion),
    )


def lattice_profile(d: RootDatum, c: CenterElement) -> LatticeProfile:
    _check_element(d, c)
    return _lattice_profile(d, c)


# -- fixed simplex and degree -------------------------------------------

@dataclass(frozen=True)
class FixedSimplex:
    vertices: tuple[tuple[Fraction, ...], ...]  # one barycenter per orbit, affine orbit first
    ratio_squared: Fraction
    expected_squared: Fraction


def alcove_vertex(d: RootDatum, node: int) -> tuple[Fraction, ...]:
    """Vertex of the fundamental alcove opposite the wall of ``node`` (coroot coords)."""
    if node == 0:
        return tuple(Fraction(0) for _ in range(d.rank))
    return tuple(x / d.marks[node] for x in d.fund_coweights[node - 1])


@lru_cache(maxsize=None)
def _alcove_fixed_simplex(d: RootDatum, c: CenterElement) -> FixedSimplex:
    op = orbit_data(d, c)
    w = coroot_action(d, c)
    shift = alcove_vertex(d, c.node)
    for i in d.nodes:
        img = tuple(a + b for a, b in zip(matvec(w, alcove_vertex(d, i)), shift))
        if img != alcove_vertex(d, op.tau[i]):
            raise InternalInconsistency("affine map does not permute alcove vertices as tau_c")
    bary = []
    for o in op.orbits:
        pts = [alcove_vertex(d, b) for b in o]
        bary.append(tuple(sum(col) / len(o) for col in zip(*pts)))
    k0 = op.affine_orbit
    order = [k0] + [k for k in range(len(bary)) if k != k0]
    verts = [bary[k] for k in order]
    edges = [tuple(a - b for a, b in zip(v, verts[0])) for v in verts[1:]]
    for e in edges:
        if tuple(matvec(w, e)) != e:
            raise InternalInconsistency("fixed simplex edge is not w_c-invariant")
    lp = lattice_profile(d, c)
    vol_simplex_sq = det(gram(edges, d.I0_gram)) / factorial(op.r_c) ** 2
    ratio_sq = lp.det / vol_simplex_sq
    g_prod = prod(d.comarks[o[0]] for o in op.orbits)
    expected = Fraction(factorial(op.r_c) * g_prod) ** 2 * lp.det ** 2
    return FixedSimplex(tuple(verts), ratio_sq, expected)


def alcove_fixed_simplex(d: RootDatum, c: CenterElement) -> FixedSimplex:
    _check_element(d, c)
    return _alcove_fixed_simplex(d, c)


def pairing_degree(d: RootDatum, c: CenterElement) -> int:
    """``r_c! det(I_0 | fixed lattice) prod(g_bar) / n_0``."""
    op = orbit_data(d, c)
    lp = lattice_profile(d, c)
    e = factorial(op.r_c) * lp.det * prod(op.g_bar) / op.n0
    if e.denominator != 1:
        raise InternalInconsistency(f"pairing degree {e} of {d.simple_type} is not an integer")
    return int(e)


def pairing_degree_squared_geometric(d: RootDatum, c: CenterElement) -> Fraction:
    """Square of ``vol(T_0)/vol(A^c)`` times the degree of ``T_0 -> T_{w_c}``."""
    fs = alcove_fixed_simplex(d, c)
    return fs.ratio_squared * lattice_profile(d, c).fixed_image_index ** 2


# -- per-root center data ----------------------------------------------------

def varpi_of_c(d: RootDatum, c: CenterElement, alpha: int) -> Fraction:
    """``varpi_alpha(c)`` modulo 1, in [0, 1)."""
    v = sum(d.cartan_inv[alpha - 1][j] * x for j, x in enumerate(c.coweight(d.rank)))
    return v - (v.numerator // v.denominator)


def o_c_alpha(d: RootDatum, c: CenterElement, alpha: int) -> int:
    _check_element(d, c)
    return varpi_of_c(d, c, alpha).denominator


def n_c_alpha(d: RootDatum, c: CenterElement, alpha: int) -> int:
    """Order of the class of ``varpi_alpha^v`` in ``Z / <c>``."""
    z = _check_element(d, c)
    sub = {e.coords for e in z.subgroup(c)}
    x = z.element(z.class_of(tuple(int(j == alpha) for j in range(1, d.rank + 1))))
    m, y = 1, x
    while y.coords not in sub:
        y = z.add(y, x)
        m += 1
    return m


@dataclass(frozen=True)
class CSpecial:
    alpha: int
    varpi_c: Fraction
    o_c_alpha: int
    d1: int
    r_c: int


def c_special_candidates(d: RootDatum, c: CenterElement) -> list[tuple[int, bool, bool, bool]]:
    """For each simple root, the three test outcomes (order, congruence, dimension)."""
    op = orbit_data(d, c)
    o = c.order
    out = []
    for a in range(1, d.rank + 1):
        v = varpi_of_c(d, c, a)
        ta = v.denominator == o
        tb = (v + Fraction(1, o)).denominator == 1
        tc = Fraction(parabolic_profile(d, a).d1, o) == op.r_c + 1
        out.append((a, ta, tb, tc))
    return out


def c_special_roots(d: RootDatum, c: CenterElement) -> list[CSpecial]:
    _check_element(d, c)
    op = orbit_data(d, c)
    out = []
    for a, ta, tb, tc in c_special_candidates(d, c):
        if ta and tb and tc:
            out.append(CSpecial(a, varpi_of_c(d, c, a), o_c_alpha(d, c, a), parabolic_profile(d, a).d1, op.r_c))
    return out
