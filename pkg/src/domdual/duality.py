"""The pt and CO functors, the η/θ unit isomorphisms and their checks.

Points of a lattice are stored as true-sets (prime filters). The point poset
``pt(L)`` is ordered by inclusion of true-sets, and its elements are listed
by the id of their generator (the least element of the true-set), labelled
``g_<generator label>``. With that convention ``points`` and
``points_bruteforce`` agree element for element whenever they agree as
posets.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .domain import (CompactOpenLattice, FiniteDomain, SpectralMap, as_poset,
                     certify_domain, certify_spectral, compact_opens, coprimes_of_CO,
                     upper_set_lattice)
from .errors import (InternalInconsistency, IsoFailure, NotCoprime, NotFDD,
                     OracleBoundExceeded, Verdict, Witness)
from .lattice import (FiniteLattice, LatticeHom, certify_hom, co_primes, coprime_cover,
                      coprime_violation, identity_hom, is_fdd)
from .poset import FinitePoset, members, to_mask

ORACLE_BOUND = 20


@dataclass(frozen=True)
class Point:
    lattice: FiniteLattice = field(repr=False)
    true_set: frozenset

    def __call__(self, x: int) -> int:
        return 1 if x in self.true_set else 0

    @property
    def generator(self) -> int:
        return self.lattice.meet_all(self.true_set)

    @property
    def mask(self) -> int:
        return to_mask(self.true_set)

    def label(self) -> str:
        return "g_" + self.lattice.name(self.generator)


def point_violation(L: FiniteLattice, true_set: Iterable[int]):
    """Which point invariant a candidate true-set breaks, as a Witness, or None."""
    S = frozenset(true_set)
    if L.top not in S:
        return Witness("top", (L.top,), (L.name(L.top),), "top is not in the true-set")
    if L.bottom in S:
        return Witness("bottom", (L.bottom,), (L.name(L.bottom),), "bottom is in the true-set")
    for x in sorted(S):
        for y in members(L.poset.up_masks[x]):
            if y not in S:
                return Witness("upward", (x, y), L.poset.names((x, y)), "not upward closed")
    for x in range(L.n):
        for y in range(x + 1, L.n):
            if x in S and y in S and L.meet(x, y) not in S:
                return Witness("meet", (x, y), L.poset.names((x, y)), "not closed under meet")
            if L.join(x, y) in S and x not in S and y not in S:
                return Witness("prime", (x, y), L.poset.names((x, y)), "join in, neither joinand in")
    return None


@dataclass(frozen=True, eq=False)
class PointPoset:
    lattice: FiniteLattice
    points: tuple
    poset: FinitePoset

    def __len__(self):
        return len(self.points)

    def true_sets(self) -> tuple:
        return tuple(p.true_set for p in self.points)

    def index_of(self, true_set) -> int:
        return _true_set_index(self)[frozenset(true_set)]

    def find(self, true_set):
        return _true_set_index(self).get(frozenset(true_set))


@lru_cache(maxsize=None)
def _true_set_index(pp: PointPoset) -> dict:
    return {p.true_set: i for i, p in enumerate(pp.points)}


def _point_poset(L: FiniteLattice, true_sets: Iterable[frozenset]) -> PointPoset:
    pts = sorted((Point(L, frozenset(s)) for s in true_sets), key=lambda p: p.generator)
    masks = [p.mask for p in pts]
    k = len(pts)
    leq = np.array([[masks[i] & ~masks[j] == 0 for j in range(k)] for i in range(k)],
                   dtype=np.bool_).reshape(k, k)
    poset = FinitePoset([p.label() for p in pts], leq, validate=False)
    return PointPoset(L, tuple(pts), poset)


def gamma(L: FiniteLattice, a: int) -> Point:
    """γ_a, the point true exactly on ↑a; defined iff a is co-prime."""
    if a == L.bottom:
        raise NotCoprime(f"{L.name(a)} is bottom",
                         Witness("bottom", (a,), (L.name(a),), "γ of bottom contains bottom"))
    bad = coprime_violation(L, a)
    if bad is not None:
        x, y = bad
        raise NotCoprime(
            f"{L.name(a)} is not co-prime",
            Witness("not-coprime", (a, x, y), L.poset.names((a, x, y)),
                    f"{L.name(a)} ≤ {L.name(x)}∨{L.name(y)} but below neither"))
    return Point(L, frozenset(members(L.poset.up_masks[a])))


@lru_cache(maxsize=2048)
def points_bruteforce(L: FiniteLattice, bound: int = ORACLE_BOUND) -> PointPoset:
    """Every subset of the carrier satisfying the four point invariants."""
    if L.n > bound:
        raise OracleBoundExceeded(f"{L.n} elements exceeds oracle bound {bound}")
    masks = _kernels.prime_filter_masks(L.poset.up_masks, L.meet_table, L.join_table,
                                        L.top, L.bottom)
    return _point_poset(L, (frozenset(members(int(m))) for m in masks))


@lru_cache(maxsize=2048)
def points(L: FiniteLattice, check: bool = True) -> PointPoset:
    """pt(L) as {γ_a : a co-prime}, ordered pointwise (γ_a ≤ γ_b iff b ≤ a)."""
    if check:
        v = is_fdd(L)
        if not v:
            raise NotFDD(f"not an FDD-lattice: {v.witness}", v.witness)
    return _point_poset(L, (gamma(L, a).true_set for a in co_primes(L)))


def point_domain(L: FiniteLattice, check: bool = True, oracle: bool = False) -> FiniteDomain:
    """Certify pt(L) as a Lawson compact algebraic L-domain.

    ``check=False`` skips the FDD precondition; ``oracle=True`` takes the
    points from the brute-force enumeration.
    """
    pp = points_bruteforce(L) if oracle else points(L, check)
    return certify_domain(pp.poset)


# -- the unit isomorphisms ---------------------------------------------------


@dataclass(frozen=True)
class LatticeIso:
    """η_L: L → CO(pt(L)) as a table of compact-open ids."""

    source: FiniteLattice
    target: CompactOpenLattice
    points: PointPoset
    table: tuple

    def rows(self):
        for x, u in enumerate(self.table):
            yield self.source.name(x), self.target.lattice.name(u)


@dataclass(frozen=True)
class OrderIso:
    """θ_D: D → pt(CO(D)) as a table of point ids."""

    source: FinitePoset
    compact_opens: CompactOpenLattice
    points: PointPoset
    table: tuple

    def rows(self):
        for x, p in enumerate(self.table):
            yield self.source.labels[x], self.points.poset.labels[p]


def _iso_fail(kind, elements, names, note):
    raise IsoFailure(f"{kind}: {note}", Witness(kind, tuple(elements), tuple(names), note))


def _check_order_iso(table, P: FinitePoset, Q: FinitePoset, what: str):
    if len(set(table)) != P.n:
        x, y = next((x, y) for x in range(P.n) for y in range(x + 1, P.n)
                    if table[x] == table[y])
        _iso_fail("injective", (x, y), P.names((x, y)), f"{what} identifies two elements")
    if P.n != Q.n:
        missing = sorted(set(range(Q.n)) - set(table))[0]
        _iso_fail("surjective", (missing,), (Q.labels[missing],), f"{what} misses an element")
    for x in range(P.n):
        for y in range(P.n):
            if bool(P.leq[x, y]) != bool(Q.leq[table[x], table[y]]):
                _iso_fail("order", (x, y), P.names((x, y)),
                          f"{what} does not preserve and reflect order")


@lru_cache(maxsize=2048)
def eta(L: FiniteLattice, check: bool = True, oracle: bool = False) -> LatticeIso:
    """η_L(x) = {p ∈ pt(L) : x ∈ p}, verified to be a lattice isomorphism onto
    the upper sets of pt(L).

    Verification follows the four claims: images are upper sets, order is
    preserved, the map is injective and surjective; finally meets and joins
    are sent to intersections and unions.
    """
    pp = points_bruteforce(L) if oracle else points(L, check)
    co = upper_set_lattice(pp.poset)
    masks = [0] * L.n
    for i, p in enumerate(pp.points):
        for x in p.true_set:
            masks[x] |= 1 << i
    lookup = {m: k for k, m in enumerate(co.masks)}
    table = []
    for x, m in enumerate(masks):
        if m not in lookup:
            _iso_fail("well-defined", (x,), (L.name(x),), "image is not an upper set")
        table.append(lookup[m])
    for x in range(L.n):
        for y in range(L.n):
            if L.le(x, y) and masks[x] & ~masks[y]:
                _iso_fail("monotone", (x, y), L.poset.names((x, y)), "order not preserved")
    _check_order_iso(table, L.poset, co.lattice.poset, "η")
    for x in range(L.n):
        for y in range(x + 1, L.n):
            if masks[L.meet(x, y)] != masks[x] & masks[y]:
                _iso_fail("meet", (x, y), L.poset.names((x, y)), "meet not sent to intersection")
            if masks[L.join(x, y)] != masks[x] | masks[y]:
                _iso_fail("join", (x, y), L.poset.names((x, y)), "join not sent to union")
    return LatticeIso(L, co, pp, tuple(table))


@lru_cache(maxsize=2048)
def theta(D) -> OrderIso:
    """θ_D(x) = the point U ↦ [x ∈ U] of CO(D), verified to be an order isomorphism.

    The evaluation form is cross-checked against the directed supremum of
    {γ_↑k : k ≤ x}, both as a supremum in pt(CO(D)) and pointwise. A plain
    FinitePoset is accepted too; then CO(D) is not required to pass the FDD
    test before its points are taken.
    """
    certified = isinstance(D, FiniteDomain)
    P = as_poset(D)
    co = compact_opens(P)
    pp = points(co.lattice, check=certified)
    gens = coprimes_of_CO(P)  # k ↦ id of ↑k in CO(D)
    gamma_id = {k: pp.index_of(gamma(co.lattice, u).true_set) for k, u in gens.items()}
    table = []
    for x in range(P.n):
        evaluation = frozenset(u for u, m in enumerate(co.masks) if m >> x & 1)
        i = pp.find(evaluation)
        if i is None:
            _iso_fail("evaluation", (x,), (P.labels[x],), "evaluation at x is not a point")
        below = members(P.down_masks[x])
        sup = pp.poset.sup(gamma_id[k] for k in below)
        pointwise = frozenset().union(*(pp.points[gamma_id[k]].true_set for k in below))
        if sup != i or pointwise != evaluation:
            raise InternalInconsistency(
                f"θ at {P.labels[x]}: supremum of γ_↑k disagrees with evaluation",
                Witness("theta-forms", (x,), (P.labels[x],)))
        table.append(i)
    _check_order_iso(table, P, pp.poset, "θ")
    return OrderIso(P, co, pp, tuple(table))


# -- arrows -------------------------------------------------------------------


def pt_arrow(f: LatticeHom, check: bool = True) -> SpectralMap:
    """pt(f): pt(M) → pt(L), p ↦ p∘f, i.e. true-set T ↦ f⁻¹(T)."""
    L, M = f.source, f.target
    src, dst = points(M, check), points(L, check)
    table = []
    for p in src.points:
        pre = frozenset(x for x in range(L.n) if f.mapping[x] in p.true_set)
        i = dst.find(pre)
        if i is None:
            raise InternalInconsistency("p∘f is not a point of the source lattice",
                                        Witness("pt-arrow", tuple(sorted(pre))))
        table.append(i)
    return certify_spectral(table, src.poset, dst.poset)


def co_arrow(g: SpectralMap) -> LatticeHom:
    """CO(g): CO(T) → CO(S), U ↦ g⁻¹(U)."""
    cs, ct = upper_set_lattice(g.source), upper_set_lattice(g.target)
    table = [cs.index_of_mask(g.preimage_mask(m)) for m in ct.masks]
    return certify_hom(table, ct.lattice, cs.lattice)


def compose(g, f):
    """g∘f for two lattice homs or two spectral maps."""
    if f.target != g.source:
        raise ValueError("arrows are not composable")
    table = tuple(g.mapping[v] for v in f.mapping)
    return type(f)(f.source, g.target, table)


def check_separation(L: FiniteLattice, a: int, b: int, check: bool = True):
    """A point true at a and false at b when a ≰ b, built as γ_a0 for a maximal
    co-prime a0 ≤ a with a0 ≰ b; None when a ≤ b."""
    if check:
        v = is_fdd(L)
        if not v:
            raise NotFDD(f"not an FDD-lattice: {v.witness}", v.witness)
    if L.le(a, b):
        return None
    for a0 in coprime_cover(L, a):
        if not L.le(a0, b):
            return gamma(L, a0)
    raise InternalInconsistency(
        f"no co-prime below {L.name(a)} escapes {L.name(b)}",
        Witness("separation", (a, b), L.poset.names((a, b))))


# -- naturality and functor laws -------------------------------------------


@dataclass(frozen=True)
class NaturalityReport:
    square: str
    arrow: str
    commutes: bool
    witness: Witness | None = None


def check_naturality(arrow, side: str, check: bool = True) -> NaturalityReport:
    """Compare both paths around the η square (lattice hom f: L → M) or the
    θ square (spectral map g: S → T), element by element.

    eta:   η_M ∘ f  =  CO(pt(f)) ∘ η_L
    theta: θ_T ∘ g  =  pt(CO(g)) ∘ θ_S
    """
    if side == "eta":
        f = arrow
        eL, eM = eta(f.source, check), eta(f.target, check)
        cf = co_arrow(pt_arrow(f, check))
        if cf.source != eL.target.lattice or cf.target != eM.target.lattice:
            raise InternalInconsistency("CO(pt(f)) does not connect the η targets")
        for x in range(f.source.n):
            lhs = eM.table[f.mapping[x]]
            rhs = cf.mapping[eL.table[x]]
            if lhs != rhs:
                note = (f"η_M(f({f.source.name(x)})) = {eM.target.lattice.name(lhs)} but "
                        f"CO(pt(f))(η_L({f.source.name(x)})) = {eM.target.lattice.name(rhs)}")
                return NaturalityReport("eta", f.describe(), False,
                                        Witness("eta-square", (x,), (f.source.name(x),), note))
        return NaturalityReport("eta", f.describe(), True)
    if side == "theta":
        g = arrow
        tS, tT = theta(g.source), theta(g.target)
        cg = co_arrow(g)
        pcg = pt_arrow(cg, check=False)
        for s in range(g.source.n):
            lhs = tT.table[g.mapping[s]]
            rhs = pcg.mapping[tS.table[s]]
            if lhs != rhs:
                note = (f"θ_T(g({g.source.labels[s]})) = {tT.points.poset.labels[lhs]} but "
                        f"pt(CO(g))(θ_S) = {tT.points.poset.labels[rhs]}")
                return NaturalityReport("theta", g.describe(), False,
                                        Witness("theta-square", (s,), (g.source.labels[s],), note))
        return NaturalityReport("theta", g.describe(), True)
    raise ValueError(f"side must be 'eta' or 'theta', not {side!r}")


@dataclass
class FunctorLawReport:
    identities: int = 0
    compositions: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_functor_laws(chains: Iterable[Sequence], check: bool = True) -> FunctorLawReport:
    """pt and CO preserve identities and reverse composition.

    Each chain is a sequence of composable arrows, all lattice homs or all
    spectral maps. Identity laws are checked on every object met.
    """
    report = FunctorLawReport()
    seen = set()
    for chain in chains:
        for arrow in chain:
            for obj in (arrow.source, arrow.target):
                if obj in seen:
                    continue
                seen.add(obj)
                report.identities += 1
                if isinstance(arrow, LatticeHom):
                    image = pt_arrow(identity_hom(obj), check)
                    if image.mapping != tuple(range(len(image.mapping))):
                        report.failures.append(("pt-identity", repr(obj)))
                else:
                    image = co_arrow(SpectralMap(obj, obj, tuple(range(obj.n))))
                    if image.mapping != tuple(range(len(image.mapping))):
                        report.failures.append(("co-identity", repr(obj)))
        for f, g in zip(chain, chain[1:]):
            report.compositions += 1
            gf = compose(g, f)
            if isinstance(f, LatticeHom):
                lhs = pt_arrow(gf, check).mapping
                rhs = compose(pt_arrow(f, check), pt_arrow(g, check)).mapping
                if lhs != rhs:
                    report.failures.append(("pt-composition", f.describe(), g.describe()))
            else:
                lhs = co_arrow(gf).mapping
                rhs = compose(co_arrow(f), co_arrow(g)).mapping
                if lhs != rhs:
                    report.failures.append(("co-composition", f.describe(), g.describe()))
    return report


def directed_sups_are_points(pp: PointPoset) -> Verdict:
    """Pointwise suprema of directed families of points are again points."""
    L = pp.lattice
    k = len(pp.points)
    if k > 16:
        raise OracleBoundExceeded(f"{k} points exceeds the directed-family bound")
    for mask in range(1, 1 << k):
        fam = members(mask)
        if not pp.poset.is_directed(fam):
            continue
        union = frozenset().union(*(pp.points[i].true_set for i in fam))
        bad = point_violation(L, union)
        if bad is not None:
            return Verdict(False, Witness("directed-sup", fam, pp.poset.names(fam), str(bad)))
    return Verdict(True)
