"""Verification sweep producing deterministic claim records.

Each claim compares two exactly computed sides.  Claims are grouped by
(family, rank, central element); inside a group they are ordered by simple
root and then by their position in ``CLAIM_ORDER``.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Any, Callable

from . import center as ce
from . import farey as fa
from . import moduli as mo
from . import parabolic as pa
from .errors import WpsError
from .linalg import det, matmul, transpose
from .rootsys import (
    FAMILIES,
    RationalVector,
    RootDatum,
    SimpleType,
    _close_under_reflections,
    all_types,
    apply_word,
    build_root_system,
    expected_root_count,
    make_antidominant_within,
    symmetric_form_gram,
    weyl_group_order,
)

# (tag, anchor) in report order; the anchor states the identity being checked.
CLAIMS: list[tuple[str, str]] = [
    ("looform", "sum over roots of beta(x)^2 = 2g I_0(x) on simple coroots"),
    ("root-count", "|R| from reflection closure = closed-form count"),
    ("closure", "R stable under one more reflection pass and R = -R"),
    ("cartan", "n(alpha_i, alpha_j) recovered from generated roots and coroots"),
    ("mark-relation", "sum h_beta beta = 0 and sum g_beta beta^v = 0 over the extended diagram"),
    ("coxeter", "|R| = r h and g = 1 + rho(highest coroot)"),
    ("comark-ratio", "g_alpha = h_alpha <alpha,alpha>/<top,top>, equality iff alpha long"),
    ("i0-norm", "I_0(top^v) = 2 and I_0(alpha^v) = 4/<alpha,alpha>"),
    ("dual-basis", "I_0(alpha^v, g_beta w_beta^v / h_beta) = delta"),
    ("weight-duality", "w_alpha(beta^v) = delta and rho(beta^v) = 1"),
    ("w-invariance", "I_0 invariant under simple reflections"),
    ("center-order", "|P^v/Q^v| = det(Cartan)"),
    ("simply-laced-det", "det(I_0 | coroot lattice) = |Z| for simply laced types"),
    ("weyl-order", "brute-force |W| = pairing degree at trivial c"),
    ("special-census", "special roots = diagram rule (all for A, branch node for D/E, long root for C/G, long root next to short for B/F)"),
    ("d2-dichotomy", "d_1 = r+1 iff special, otherwise d_1 >= r+2"),
    ("coroot-circular", "d(k) from comarks is circularly symmetric for N = max g, M = g"),
    ("minimality", "1 + n d_1(beta) >= r+2 with equality only at special beta, n = 1"),
    ("tau-homomorphism", "tau_{a+b} = tau_a tau_b on the center"),
    ("zeta", "zeta = n_alpha w_alpha^v integral, positive, alpha(zeta) = n_alpha"),
    ("n-alpha", "n_alpha = order of w_alpha^v in P^v/Q^v"),
    ("levels", "S(alpha,k) nonempty exactly for 1 <= k <= h_alpha"),
    ("extremes", "sigma_1 = alpha and lambda_h = highest root"),
    ("i-pairing", "i(alpha,k) = k n c(alpha,k)/m = sum of n(beta,alpha) over S(alpha,k)"),
    ("i-moments", "i(alpha,k) = h_alpha g k c(alpha,k) / (g_alpha sum beta(w^v)^2)"),
    ("phi-sum", "sum phi(k) d_k = h_alpha g / g_alpha"),
    ("d1-routes", "d_1 = 2 rho(w^v)/w(w^v) = sum n(beta,alpha) = rho(lambda_1(alpha^v)) + 1"),
    ("lambda1-coroot", "lambda_1(alpha^v) = lambda_1(alpha)^v"),
    ("d1-dh", "d_1 + d_h = 2g/g_alpha"),
    ("d1-dk", "d_1 + d_k = (2/k')(rho(lambda_k^v) + 1)"),
    ("sigma-formula", "sigma_k = k lambda_1 - tau(lambda_k) + k alpha"),
    ("levi-longest", "w_0' sigma_k = lambda_k and the antidominant sweep of lambda_k is sigma_k"),
    ("circular", "d_k(alpha) circularly symmetric for N = h_alpha, M = g h_alpha/g_alpha"),
    ("circ-complete", "d_1 and the Farey walk reproduce d_k(alpha)"),
    ("levi-lcm", "m_alpha = lcm of SL factor sizes for special alpha"),
    ("subsystem", "(Delta - alpha) + {-lambda_k} generates R(alpha,k); other factors of type A"),
    ("singular-count", "weights divisible by k n_alpha = d_k(alpha)"),
    ("sub-moduli", "some order-k c_k on the -lambda_k factor has -lambda_k special and d_k orbits"),
    ("tau-valid", "tau_c preserves affine Cartan, marks, comarks; order o(c); tau_c(alpha_0) = node of c"),
    ("tau-weyl", "tau_c on coroots = w_{0,J} w_0"),
    ("orbit-sum", "sum g_bar = g and n_0 divides every g_bar"),
    ("fixed-rank", "rank of fixed lattice = r_c, orbit sums saturated"),
    ("torsion", "torsion of coinvariants cyclic of order n_0"),
    ("free-relation", "free coinvariants = sum Z e_bar / sum (g_bar/n_0) e_bar"),
    ("t0-degree", "degree of T_0 -> T_{w_c} = prod n_bar / n_0"),
    ("simplex-volume", "vol(T_0)^2/vol(A^c)^2 = (r_c! prod g det(I_0|fixed))^2"),
    ("degree-routes", "pairing degree^2 = volume ratio^2 times covering degree^2"),
    ("cspecial-exists", "some simple root passes the c-special tests"),
    ("census", "c-special roots, d_1 and r_c+1 match the classification"),
    ("ncalpha", "n_alpha / n_{c,alpha} = |<w_alpha^v> meet <c>| and closed forms"),
    ("cspecial-dim", "d1/o = r_c+1"),
    ("n0-relation", "n_0 = o(c) g_alpha/h_alpha and h_alpha = max g_bar / n_0"),
    ("o-c-alpha", "o_{c,alpha} = o(c)"),
    ("levi-type-a", "all components of Delta - alpha are of type A"),
    ("weights-routes", "{n_c g_bar/n_0} = {k n_c with multiplicity i(alpha,k)/o(c)}"),
    ("weight-sum", "sum = n_c g/n_0, count = r_c+1, gcd = n_c"),
    ("moduli-weights", "moduli weights g_bar/n_0 sum to g/n_0"),
    ("moduli-weight-table", "moduli weights equal the tabulated values"),
    ("orbit-weights", "orbit integers g_bar equal the tabulated values"),
    ("wps-weight-table", "weighted projective weights equal the tabulated values"),
    ("c-circular", "orbit weight divisor sums circular for N = max g_bar/n_0, M = g/n_0, equal d_k/o"),
    ("intersection", "a^r gcd(w)/prod(w) = (-2g)^r_c n_0/prod g_bar"),
    ("degree-consistency", "(r_c)! det(2g I_0|fixed)/e = |(-2g)^r_c n_0/prod g_bar|"),
    ("cohomology-min", "1 - deg d_1/o at deg = -1 equals r_c + 2"),
]
ORDER = {tag: k for k, (tag, _) in enumerate(CLAIMS)}
ANCHOR = dict(CLAIMS)


def q(x: Any) -> Any:
    """Serialize exact values: rationals as "p/q" strings, sequences as lists."""
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    if isinstance(x, (list, tuple)):
        return [q(v) for v in x]
    if isinstance(x, dict):
        return {str(k): q(v) for k, v in x.items()}
    return str(x)


@dataclass(frozen=True)
class Claim:
    tag: str
    family: str
    rank: int
    center: int
    group_key: str
    alpha: int
    params: dict
    lhs: Any
    rhs: Any
    passed: bool
    witness: str | None = None

    @property
    def id(self) -> str:
        base = f"{self.tag}/{self.group_key}"
        return f"{base}/a{self.alpha}" if self.alpha else base

    @property
    def sort_key(self) -> tuple:
        return (FAMILIES.index(self.family), self.rank, self.center, self.alpha, ORDER[self.tag])

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "anchor": ANCHOR[self.tag],
            "group": {"family": self.family, "rank": self.rank, "center": self.center},
            "params": q(self.params),
            "lhs": q(self.lhs),
            "rhs": q(self.rhs),
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" [{self.witness}]" if self.witness else ""
        params = ", ".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        params = f" ({params})" if params else ""
        return f"{status} {self.id}: {ANCHOR[self.tag]}{params} -> {_fmt(self.lhs)} = {_fmt(self.rhs)}{extra}"


def _fmt(x: Any) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (list, tuple)):
        return "(" + ",".join(_fmt(v) for v in x) + ")"
    return str(x)


@dataclass
class SweepConfig:
    families: str = FAMILIES
    max_rank: int = 12
    center_policy: str = "all-generators"  # or "trivial-only" or "explicit"
    explicit: tuple[str, int, int | None] | None = None  # (family, rank, center index or None for all)
    fmt: str = "text"
    jobs: int = 1
    fail_fast: bool = False
    comark_fault: tuple[str, int, int, int] | None = None  # (family, rank, node, delta)

    def validate(self) -> None:
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.center_policy not in ("all-generators", "trivial-only", "explicit"):
            raise ValueError(f"unknown center policy {self.center_policy!r}")
        if self.center_policy == "explicit" and self.explicit is None:
            raise ValueError("explicit center policy needs a (family, rank, center) triple")
        if self.max_rank < 1:
            raise ValueError("max rank must be >= 1")
        if any(f not in FAMILIES for f in self.families):
            raise ValueError(f"families must be drawn from {FAMILIES}")
        if self.fmt not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {self.fmt!r}")


@dataclass
class VerificationReport:
    claims: list[Claim] = field(default_factory=list)

    @property
    def failures(self) -> list[Claim]:
        return [c for c in self.claims if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {"claims": len(self.claims), "passed": len(self.claims) - len(self.failures), "failed": len(self.failures)}

    def render(self, fmt: str) -> str:
        if fmt == "json":
            body = {"summary": self.summary(), "claims": [c.to_json() for c in self.claims]}
            return json.dumps(body, indent=1, sort_keys=False) + "\n"
        if fmt == "csv":
            import csv
            import io

            buf = io.StringIO()
            wr = csv.writer(buf, lineterminator="\n")
            wr.writerow(["id", "family", "rank", "center", "pass", "lhs", "rhs", "params"])
            for c in self.claims:
                wr.writerow([c.id, c.family, c.rank, c.center, str(c.passed).lower(), _csv(c.lhs), _csv(c.rhs),
                             json.dumps(q(c.params), sort_keys=True)])
            return buf.getvalue()
        lines = [c.text() for c in self.claims]
        s = self.summary()
        lines.append(f"summary: {s['claims']} claims, {s['passed']} passed, {s['failed']} failed")
        return "\n".join(lines) + "\n"


def _csv(x: Any) -> str:
    if isinstance(x, (list, tuple)):
        return ";".join(_csv(v) for v in x)
    return _fmt(x)


def group_key(d: RootDatum, c: ce.CenterElement) -> str:
    base = str(d.simple_type)
    if c.trivial:
        return base
    z = ce.center_group(d)
    first_gen = next((e for e in z.elements if z.generates(e)), None)
    return f"{base}-adj" if c == first_gen else f"{base}-c{c.index}"


class _Sink:
    """Collects claims for one (type, center) group."""

    def __init__(self, d: RootDatum, c: ce.CenterElement) -> None:
        self.d, self.c = d, c
        self.key = group_key(d, c)
        self.claims: list[Claim] = []

    def add(self, tag: str, lhs: Any, rhs: Any, alpha: int = 0, passed: bool | None = None,
            witness: str | None = None, **params: Any) -> None:
        ok = (lhs == rhs) if passed is None else passed
        if not ok and witness is None:
            witness = f"lhs={_fmt(lhs)} rhs={_fmt(rhs)}"
        t = self.d.simple_type
        self.claims.append(Claim(tag, t.family, t.rank, self.c.index, self.key, alpha, params, lhs, rhs, ok, witness))

    def guard(self, tag: str, fn: Callable[[], None], alpha: int = 0) -> None:
        """Run a claim body; an exception becomes a failed claim with a witness."""
        try:
            fn()
        except (WpsError, ArithmeticError, ValueError, KeyError, StopIteration) as ex:
            self.add(tag, "error", "ok", alpha, passed=False, witness=f"{type(ex).__name__}: {ex}")


# -- claim bodies ---------------------------------------------------------

def _root_claims(s: _Sink) -> None:
    d = s.d
    n, t, g, h = d.rank, d.simple_type, d.dual_coxeter, d.coxeter
    sym = symmetric_form_gram(d)

    def looform():
        lhs = [x for row in d.q_gram for x in row]
        rhs = [2 * g * x for row in sym for x in row]
        s.add("looform", lhs, rhs, g=g)

    s.guard("looform", looform)
    s.add("root-count", len(d.roots), expected_root_count(t))
    again = _close_under_reflections(d.cartan, d.roots)
    s.add("closure", len(again), len(d.roots), passed=len(again) == len(d.roots) and all(d.is_root(tuple(-v for v in x)) for x in d.roots))

    def cartan():
        rebuilt = [[int(d.pair(d.roots[d._root_index[d.simple_root(i)]], d.coroots[d._root_index[d.simple_root(j)]]))
                    for j in range(1, n + 1)] for i in range(1, n + 1)]
        s.add("cartan", [x for r in rebuilt for x in r], [x for r in d.cartan for x in r])

    s.guard("cartan", cartan)
    marks_sum = [sum(d.marks[b] * d.simple_root(b)[i] for b in d.nodes) for i in range(n)]
    comarks_sum = [sum(d.comarks[b] * d.simple_coroot(b)[i] for b in d.nodes) for i in range(n)]
    s.add("mark-relation", marks_sum + comarks_sum, [0] * (2 * n))
    top_cor = d.highest_coroot_of_root
    s.add("coxeter", [len(d.roots), g], [n * h, 1 + int(d.pair(d.rho, top_cor))])
    ratios, oks = [], True
    top_len = d.root_inner(d.highest_root, d.highest_root)
    for a in range(1, n + 1):
        ll = d.lengths[a - 1]
        ratios.append(d.marks[a] * ll / top_len)
        long_ = ll == 2
        oks &= (d.marks[a] % d.comarks[a] == 0) and ((d.marks[a] == d.comarks[a]) == long_)
    s.add("comark-ratio", list(d.comarks[1:]), ratios, passed=list(d.comarks[1:]) == ratios and oks)
    i0 = d.I0_gram
    top_norm = sum(top_cor[i] * i0[i][j] * top_cor[j] for i in range(n) for j in range(n))
    s.add("i0-norm", [top_norm] + [i0[a][a] for a in range(n)], [2] + [4 / d.lengths[a] for a in range(n)])
    dual = [[sum(i0[i][k] * d.comarks[j + 1] * d.fund_coweights[j][k] / d.marks[j + 1] for k in range(n))
             for j in range(n)] for i in range(n)]
    s.add("dual-basis", [x for r in dual for x in r], [int(i == j) for i in range(n) for j in range(n)])
    wd = [d.pair(d.fund_weights[i], d.simple_coroot(j + 1)) for i in range(n) for j in range(n)]
    rd = [d.pair(d.rho, d.simple_coroot(j + 1)) for j in range(n)]
    s.add("weight-duality", wd + rd, [int(i == j) for i in range(n) for j in range(n)] + [1] * n)
    # reflections act on coroot coordinates; the integer form Q = 2g I_0 carries the same test
    inv_ok = True
    qg = [list(r) for r in d.q_gram]
    for j in range(1, n + 1):
        refl = [list(d.reflect_coroot_side(j, d.simple_coroot(i))) for i in range(1, n + 1)]
        inv_ok &= matmul(matmul(refl, qg), transpose(refl)) == qg
    s.add("w-invariance", inv_ok, True)
    z = ce.center_group(d)
    s.add("center-order", z.order, abs(det(d.cartan)))
    if all(x == 2 for x in d.lengths):
        s.add("simply-laced-det", det(i0), z.order)
    if n <= 4:
        triv = z.elements[0]
        s.guard("weyl-order", lambda: s.add("weyl-order", weyl_group_order(d), ce.pairing_degree(d, triv)))
    s.add("special-census", pa.special_roots(d), _special_by_rule(d))
    dich = []
    for a in range(1, n + 1):
        d1 = pa.parabolic_profile(d, a).d1
        dich.append(d1 == n + 1 if pa.is_special(d, a) else d1 >= n + 2)
    s.add("d2-dichotomy", dich, [True] * n)
    seq = fa.coroot_integer_sequence(d.comarks)
    ok, bad = fa.is_circularly_symmetric(seq, len(seq), g)
    s.add("coroot-circular", ok, True, witness=None if ok else f"pair {bad}", sequence=list(seq))
    m = mo.minimality_scan(d)
    s.add("minimality", m.passed, True, min_d1=m.min_d1, argmin=list(m.argmin))
    s.guard("tau-homomorphism", lambda: s.add("tau-homomorphism", ce.homomorphism_defects(d), []))


def _special_by_rule(d: RootDatum) -> list[int]:
    n, f = d.rank, d.simple_type.family
    nbrs = {a: [b for b in range(1, n + 1) if b != a and d.cartan[a - 1][b - 1]] for a in range(1, n + 1)}
    if f == "A":
        return list(range(1, n + 1))
    if f in "DE":
        return [a for a in nbrs if len(nbrs[a]) == 3]
    long_ = [a for a in nbrs if d.is_long(a)]
    if f in "CG":
        return long_
    return [a for a in long_ if any(not d.is_long(b) for b in nbrs[a])]


def _alpha_claims(s: _Sink, a: int) -> None:
    d = s.d
    n, g = d.rank, d.dual_coxeter
    p = pa.parabolic_profile(d, a)
    cw = d.fund_coweights[a - 1]
    s.add("zeta", list(p.zeta), [p.n_alpha * x for x in cw], a,
          passed=list(p.zeta) == [p.n_alpha * x for x in cw] and min(p.zeta) > 0
          and d.pair(d.simple_root(a), p.zeta) == p.n_alpha, m=p.m_alpha)
    z = ce.center_group(d)
    cls = z.element(z.class_of(tuple(int(j == a) for j in range(1, n + 1))))
    s.add("n-alpha", p.n_alpha, cls.order, a)
    present = sorted({x[a - 1] for x in d.roots if x[a - 1] > 0})
    s.add("levels", present, list(range(1, p.h_alpha + 1)), a)
    s.add("extremes", [p.levels[0].lowest, p.levels[-1].highest], [d.simple_root(a), d.highest_root], a)
    ip = [sum(sum(x[i] * d.cartan[i][a - 1] for i in range(n)) for x in d.roots if x[a - 1] == lv.k) for lv in p.levels]
    s.add("i-pairing", list(p.i_seq), ip, a)
    sq = sum(x[a - 1] ** 2 for x in d.positive_roots)
    mom = [Fraction(p.h_alpha * g * lv.k * lv.size, p.g_alpha * sq) for lv in p.levels]
    s.add("i-moments", list(p.i_seq), mom, a)
    s.add("phi-sum", fa.phi_weighted_sum(p.d_seq), Fraction(p.h_alpha * g, p.g_alpha), a)
    routes = [pa.d1_from_rho(d, a), pa.d1_from_pairings(d, a), pa.d1_from_coroot(d, a)]
    s.add("d1-routes", [p.d1] * 3, routes, a)
    s.add("lambda1-coroot", pa.highest_coroot_at_one(d, a), d.coroot(p.levels[0].highest), a)
    s.add("d1-dh", p.d1 + p.d_seq[-1], Fraction(2 * g, p.g_alpha), a)
    lhs = [p.d1 + dk for dk in p.d_seq]
    rhs = [Fraction(2, lv.k_prime) * (sum(d.coroot(lv.highest)) + 1) for lv in p.levels]
    s.add("d1-dk", lhs, rhs, a)
    tau = pa.levi_involution(d, a)
    lam1 = p.levels[0].highest
    sig = [lv.lowest for lv in p.levels]
    pred = [tuple(lv.k * x - y + lv.k * int(i == a - 1) for i, (x, y) in enumerate(zip(lam1, pa.permute(lv.highest, tau))))
            for lv in p.levels]
    s.add("sigma-formula", sig, pred, a)
    word = pa.levi_longest_word(d, a)
    J = [j for j in range(1, n + 1) if j != a]
    img = [apply_word(d, word, lv.lowest) for lv in p.levels]
    sweep = [tuple(int(x) for x in make_antidominant_within(d, J, RationalVector(lv.highest, "simple-root")).coords)
             for lv in p.levels]
    s.add("levi-longest", img + sweep, [lv.highest for lv in p.levels] + sig, a)
    M = Fraction(g * p.h_alpha, p.g_alpha)
    ok, bad = fa.is_circularly_symmetric(p.d_seq, p.h_alpha, int(M)) if M.denominator == 1 else (False, None)
    s.add("circular", ok, True, a, witness=None if ok else f"pair {bad}", d=list(p.d_seq), N=p.h_alpha, M=M)
    comp = fa.circular_complete(p.d1, p.h_alpha, int(M))
    s.add("circ-complete", list(comp.sequence or ()), list(p.d_seq), a, witness=None if comp.ok else comp.reason)
    if pa.is_special(d, a):
        ns, m = pa.levi_special_structure(d, a)
        s.add("levi-lcm", m, p.m_alpha, a, sizes=ns)
        triv = z.elements[0]
        for k in range(1, p.h_alpha + 1):
            def sub(k=k):
                sl = mo.singular_locus_structure(d, triv, a, k)
                s.add("subsystem", [str(t) for t, _ in sl.components], [str(t) for t, _ in sl.components], a,
                      passed=sl.others_type_a, k=k)
                s.add("singular-count", sl.divisible_count, p.d_seq[k - 1], a, k=k)
                if k >= 2:
                    counts = mo.sub_moduli_orbit_counts(d, a, k)
                    hit = any(o == p.d_seq[k - 1] and sp for _, o, sp in counts)
                    s.add("sub-moduli", hit, True, a, k=k, candidates=[list(x[:2]) for x in counts])
            s.guard("subsystem", sub, a)


# reference data for specific groups (type string, center node) -> expected weights
REFERENCE_WEIGHTS = {
    ("E8", 0): ("moduli", (1, 2, 2, 3, 3, 4, 4, 5, 6)),
    ("E7", 7): ("orbit", (2, 2, 4, 4, 6)),
    ("A1", 0): ("wps", (2, 2)),
}


def census_expectation(d: RootDatum, c: ce.CenterElement) -> dict | None:
    """Classification of c-special roots for the cases with closed forms."""
    f, n = d.simple_type.family, d.rank
    o, node = c.order, c.node
    if c.trivial:
        sp = _special_by_rule(d)
        return {"roots": sp, "d1": [n + 1] * len(sp), "rc1": n + 1}
    if f == "A":
        N = n + 1
        roots = [k for k in range(1, n + 1) if (Fraction(k * (N - node), N) + Fraction(1, o)).denominator == 1]
        if node > 0:
            roots = [k for k in range(1, n + 1)
                     if (Fraction(min(k, node) * (N - max(k, node)), N) + Fraction(1, o)).denominator == 1]
        return {"roots": roots, "count": N // o, "coprime": all(gcd(k, o) == 1 for k in roots), "d1": [N] * len(roots),
                "rc1": N // o}
    if f == "B":
        return {"roots": [n], "d1": [2 * n], "rc1": n}
    if f == "C":
        if n % 2:
            return {"roots": [n], "d1": [n + 1], "rc1": (n + 1) // 2}
        return {"roots": [n - 1], "d1": [n + 2], "rc1": (n + 2) // 2}
    if f == "D" and n >= 4:
        if node == 1:
            return {"roots": [n - 1, n], "d1": [2 * (n - 1)] * 2, "rc1": n - 1}
        if o == 4:
            # the ear whose fundamental weight takes the value -1/4 on c
            ear = [b for b in (n - 1, n) if ce.varpi_of_c(d, c, b) == Fraction(3, 4)]
            return {"roots": ear, "d1": [4 * ((n - 1) // 2)], "rc1": (n - 1) // 2}
        if n == 4:  # triality: every order-2 element behaves like the vector class
            return {"roots": sorted({1, 3, 4} - {node}), "d1": [6, 6], "rc1": 3}
        m = n // 2
        return {"roots": [n - 3], "d1": [2 * (m + 1)], "rc1": m + 1}
    if f == "E" and n == 6:
        return {"roots": [3 if node == 1 else 5], "d1": [9], "rc1": 3, "varpi": Fraction(2, 3)}
    if f == "E" and n == 7:
        return {"roots": [5], "d1": [10], "rc1": 5}
    return None


def _center_claims(s: _Sink) -> None:
    d, c = s.d, s.c
    g = d.dual_coxeter
    tau = ce.diagram_automorphism(d, c)
    s.add("tau-valid", ce.automorphism_defects(d, tau), [], perm=list(tau.perm))
    s.add("tau-weyl", ce.coroot_action(d, c), ce.coroot_action_from_word(d, c))
    op = ce.orbit_data(d, c)
    s.add("orbit-sum", sum(op.g_bar), g, passed=sum(op.g_bar) == g and all(x % op.n0 == 0 for x in op.g_bar),
          g_bar=list(op.g_bar), n0=op.n0)
    lp = ce.lattice_profile(d, c)
    s.add("fixed-rank", lp.fixed_rank, op.r_c, passed=lp.fixed_rank == op.r_c == len(lp.basis) and lp.saturated)
    s.add("torsion", lp.torsion_order, op.n0, passed=lp.torsion_order == op.n0 and len(lp.coinvariant_factors) <= 1
          and lp.free_rank == op.r_c, factors=list(lp.coinvariant_factors))
    s.add("free-relation", lp.relation_holds, True, relation=list(lp.free_relation))
    s.add("t0-degree", lp.fixed_image_index, Fraction(prod(op.sizes), op.n0))
    fs = ce.alcove_fixed_simplex(d, c)
    s.add("simplex-volume", fs.ratio_squared, fs.expected_squared)
    e = ce.pairing_degree(d, c)
    s.add("degree-routes", ce.pairing_degree_squared_geometric(d, c), e * e, e=e)
    cs = ce.c_special_roots(d, c)
    s.add("cspecial-exists", len(cs) > 0, True, roots=[x.alpha for x in cs])
    exp = census_expectation(d, c)
    if exp is not None:
        got = {"roots": [x.alpha for x in cs], "d1": [x.d1 for x in cs], "rc1": op.r_c + 1}
        want = {k: exp[k] for k in ("roots", "d1", "rc1")}
        ok = got == want
        if "count" in exp:
            ok &= len(cs) == exp["count"] and exp["coprime"]
        if "varpi" in exp:
            ok &= all(x.varpi_c == exp["varpi"] for x in cs)
        s.add("census", [got["roots"], got["d1"], got["rc1"]], [want["roots"], want["d1"], want["rc1"]], passed=ok)
    z = ce.center_group(d)
    for x in cs:
        a = x.alpha
        p = pa.parabolic_profile(d, a)
        nc = ce.n_c_alpha(d, c, a)
        cls = z.element(z.class_of(tuple(int(j == a) for j in range(1, d.rank + 1))))
        inter = len({e.coords for e in z.subgroup(cls)} & {e.coords for e in z.subgroup(c)})
        closed = _ncalpha_closed_form(d, c, a, z)
        s.add("ncalpha", [Fraction(p.n_alpha, nc)] + ([nc] if closed is not None else []),
              [inter] + ([closed] if closed is not None else []), a, n_c=nc)
        s.add("cspecial-dim", Fraction(x.d1, c.order), op.r_c + 1, a, d1=x.d1, o=c.order, r_c=op.r_c)
        s.add("n0-relation", [op.n0, p.h_alpha], [Fraction(c.order * p.g_alpha, p.h_alpha), Fraction(max(op.g_bar), op.n0)], a)
        s.add("o-c-alpha", ce.o_c_alpha(d, c, a), c.order, a)
        s.add("levi-type-a", [t.family for t, _ in p.levi_components], ["A"] * len(p.levi_components), a)
        w = mo.wps_profile(d, c, a)
        s.guard("weights-routes", lambda: s.add("weights-routes", list(w.weights), list(mo.weights_from_levels(d, c, a)), a), a)
        s.add("weight-sum", [sum(w.weights), len(w.weights), w.weight_gcd],
              [Fraction(nc * g, op.n0), op.r_c + 1, nc], a)
        s.add("moduli-weights", [list(w.moduli_weights), sum(w.moduli_weights)],
              [sorted(gb // op.n0 for gb in op.g_bar), Fraction(g, op.n0)], a)
        ref = REFERENCE_WEIGHTS.get((str(d.simple_type), c.node))
        if ref is not None:
            kind, vals = ref
            got = {"moduli": w.moduli_weights, "orbit": tuple(sorted(op.g_bar)), "wps": w.weights}[kind]
            tag = {"moduli": "moduli-weight-table", "orbit": "orbit-weights", "wps": "wps-weight-table"}[kind]
            s.add(tag, list(got), list(vals), a)
        seq = fa.coroot_integer_sequence(op.g_bar, op.n0)
        ok, bad = fa.is_circularly_symmetric(seq, len(seq), g // op.n0) if g % op.n0 == 0 else (False, None)
        dk_over_o = [Fraction(v, c.order) for v in p.d_seq]
        s.add("c-circular", [ok] + list(seq), [True] + dk_over_o, a, witness=None if ok else f"pair {bad}")

        def intersection(w=w, a=a):
            s.add("intersection", mo.wps_top_intersection(w.weights, w.exponent), mo.det_bundle_self_intersection(d, c),
                  a, weights=list(w.weights), a_exp=w.exponent)

        s.guard("intersection", intersection, a)
        dc = mo.degree_consistency(d, c)
        s.add("degree-consistency", dc.lhs, dc.rhs, a, e=dc.degree)

        def coh(a=a):
            cd = mo.cohomology_dimensions(d, c, a, -1)
            s.add("cohomology-min", cd.total, op.r_c + 2, a, per_level=list(cd.per_level))

        s.guard("cohomology-min", coh, a)


def _ncalpha_closed_form(d: RootDatum, c: ce.CenterElement, a: int, z: ce.CenterGroup) -> int | None:
    f, n = d.simple_type.family, d.rank
    if c.trivial:
        return pa.parabolic_profile(d, a).n_alpha
    if f == "A":
        N = n + 1
        return N // (c.order * gcd(a, N))
    if f == "D" and c.order == 2:
        return 2
    if len(z.factors) == 1 and z.generates(c):
        return 1
    return None


# -- driver ------------------------------------------------------------------

def _task_list(cfg: SweepConfig) -> list[tuple[str, int]]:
    if cfg.center_policy == "explicit":
        f, r, _ = cfg.explicit
        return [(f, r)]
    return [(t.family, t.rank) for t in all_types(cfg.max_rank, cfg.families) if not t.flagged]


def _run_type(args: tuple[str, int, SweepConfig]) -> list[Claim]:
    family, rank, cfg = args
    t = SimpleType(family, rank)
    fault = None
    if cfg.comark_fault and cfg.comark_fault[:2] == (family, rank):
        fault = cfg.comark_fault[2:]
    d = build_root_system(t, comark_fault=fault)
    z = ce.center_group(d)
    if cfg.center_policy == "trivial-only":
        elements = [z.elements[0]]
    elif cfg.center_policy == "explicit" and cfg.explicit[2] is not None:
        elements = [z.elements[cfg.explicit[2]]]
    else:
        elements = list(z.elements)
    out: list[Claim] = []
    triv = _Sink(d, z.elements[0])
    if z.elements[0] in elements:
        triv.guard("looform", lambda: _root_claims(triv))
        for a in range(1, rank + 1):
            triv.guard("zeta", lambda a=a: _alpha_claims(triv, a), a)
    for c in elements:
        sink = triv if c.trivial else _Sink(d, c)
        sink.guard("tau-valid", lambda sink=sink: _center_claims(sink))
        if sink is not triv:
            out.extend(sink.claims)
    out.extend(triv.claims)
    return out


def run_verification(cfg: SweepConfig | None = None) -> VerificationReport:
    cfg = cfg or SweepConfig()
    cfg.validate()
    tasks = [(f, r, cfg) for f, r in _task_list(cfg)]
    if cfg.jobs > 1 and len(tasks) > 1:
        # largest systems first so the pool stays busy
        order = sorted(range(len(tasks)), key=lambda i: -tasks[i][1])
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            parts = dict(zip(order, ex.map(_run_type, [tasks[i] for i in order])))
        results = [parts[i] for i in range(len(tasks))]
    else:
        results = []
        for task in tasks:
            part = _run_type(task)
            results.append(part)
            if cfg.fail_fast and any(not c.passed for c in part):
                break
    claims = sorted((c for part in results for c in part), key=lambda c: c.sort_key)
    if cfg.fail_fast:
        first = next((i for i, c in enumerate(claims) if not c.passed), None)
        if first is not None:
            claims = claims[: first + 1]
    return VerificationReport(claims)


def explicit_config(t: SimpleType, center: int | None, **kw: Any) -> SweepConfig:
    """Sweep one type, restricted to one central element (``None`` means every element)."""
    return SweepConfig(families=t.family, max_rank=t.rank, center_policy="explicit",
                       explicit=(t.family, t.rank, center), **kw)


__all__ = ["CLAIMS", "Claim", "SweepConfig", "VerificationReport", "run_verification", "explicit_config", "group_key",
           "census_expectation"]
