"""Bounded lattices: certification, distributivity, co-primes and the FDD test."""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NoDecomposition, NotAHom, NotALattice, Unbounded, Verdict, Witness
from .poset import FinitePoset


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """A poset together with its (verified) meet and join tables.

    Build with :func:`certify_lattice`; the constructor trusts its arguments.
    """

    poset: FinitePoset
    meet_table: np.ndarray
    join_table: np.ndarray
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple:
        return self.poset.labels

    def __len__(self):
        return self.poset.n

    def __eq__(self, other):
        return isinstance(other, FiniteLattice) and self.poset == other.poset

    def __hash__(self):
        return hash(("lattice", self.poset))

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, covers={self.poset.cover_labels()})"

    def le(self, x: int, y: int) -> bool:
        return bool(self.poset.leq[x, y])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom  # empty join is bottom
        for x in xs:
            acc = int(self.join_table[acc, x])
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = int(self.meet_table[acc, x])
        return acc

    def name(self, x: int) -> str:
        return self.poset.labels[x]


def _bound_tables(leq: np.ndarray, lower: bool):
    """Table of glbs (``lower``) or lubs, -1 where none exists."""
    n = leq.shape[0]
    rel = leq if lower else leq.T  # rel[z, x]: z below x (or above, dually)
    out = np.full((n, n), -1, dtype=np.int64)
    ints = rel.astype(np.int64)
    for x in range(n):
        # bnd[y, z]: z is a common bound of x and y
        bnd = rel[:, x][None, :] & rel.T
        size = bnd.sum(axis=1)
        # cnt[y, m]: how many common bounds sit below m
        cnt = bnd.astype(np.int64) @ ints
        ok = bnd & (cnt == size[:, None])
        has = ok.any(axis=1)
        out[x, has] = np.argmax(ok[has], axis=1)
    return out


def certify_lattice(P: FinitePoset) -> FiniteLattice:
    """Check that every pair has a meet and a join and cache both tables.

    Raises NotALattice with the first pair (in id order) lacking a meet or a
    join, and Unbounded for the empty poset.
    """
    if P.n == 0:
        raise Unbounded("empty poset has no bottom or top", Witness("unbounded"))
    meet = _bound_tables(P.leq, lower=True)
    join = _bound_tables(P.leq, lower=False)
    for x, y in combinations(range(P.n), 2):
        for kind, table, finder in (("meet", meet, P.mlbs), ("join", join, P.mubs)):
            if table[x, y] < 0:
                cands = finder((x, y))
                raise NotALattice(
                    f"{P.labels[x]} and {P.labels[y]} have no {kind}",
                    Witness(f"no-{kind}", (x, y), P.names((x, y)),
                            f"candidates: {{{', '.join(P.names(cands))}}}",
                            {"candidates": cands}))
    bottom, top = P.least(), P.greatest()
    if bottom is None or top is None:  # unreachable for nonempty finite lattices
        raise Unbounded("lattice lacks a bound", Witness("unbounded"))
    meet.setflags(write=False)
    join.setflags(write=False)
    return FiniteLattice(P, meet, join, bottom, top)


def is_lattice(P: FinitePoset) -> Verdict:
    try:
        certify_lattice(P)
    except (NotALattice, Unbounded) as exc:
        return Verdict(False, exc.witness)
    return Verdict(True)


def is_distributive(L: FiniteLattice) -> Verdict:
    """Check a∧(b∨c) = (a∧b)∨(a∧c) over all triples; witness is the first failing one."""
    m, j = L.meet_table, L.join_table
    # lhs[a, b, c] = m[a, j[b, c]]
    lhs = m[np.arange(L.n)[:, None, None], j[None, :, :]]
    rhs = j[m[:, :, None], m[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return Verdict(True)
    a, b, c = (int(v) for v in bad[0])
    note = (f"{L.name(a)}∧({L.name(b)}∨{L.name(c)}) = {L.name(int(lhs[a, b, c]))} but "
            f"({L.name(a)}∧{L.name(b)})∨({L.name(a)}∧{L.name(c)}) = {L.name(int(rhs[a, b, c]))}")
    return Verdict(False, Witness("distributive", (a, b, c), L.poset.names((a, b, c)), note))


def coprime_violation(L: FiniteLattice, p: int):
    """First pair (x, y) with p ≤ x∨y, p ≰ x, p ≰ y, or None."""
    below = L.poset.leq[p]
    bad = below[L.join_table] & ~below[:, None] & ~below[None, :]
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return None
    return int(hits[0][0]), int(hits[0][1])


def co_primes(L: FiniteLattice) -> tuple:
    """Nonzero p with p ≤ x∨y ⇒ p ≤ x or p ≤ y, ascending."""
    return tuple(p for p in range(L.n)
                 if p != L.bottom and coprime_violation(L, p) is None)


def coprime_cover(L: FiniteLattice, x: int, cps: Sequence[int] | None = None) -> tuple:
    """Maximal co-primes below x, ascending."""
    if cps is None:
        cps = co_primes(L)
    below = [p for p in cps if L.le(p, x)]
    return tuple(p for p in below if not any(p != q and L.le(p, q) for q in below))


@dataclass(frozen=True)
class DisjointDecomposition:
    target: int
    parts: tuple


def disjoint_decomposition(L: FiniteLattice, x: int,
                           cps: Sequence[int] | None = None) -> DisjointDecomposition:
    """Write x as a join of pairwise disjoint co-primes, or raise NoDecomposition.

    Only the cover of maximal co-primes below x needs testing. Suppose
    x = ∨F with F a disjoint family of co-primes and let g be any co-prime
    with f ≤ g ≤ x for some f in F. Since g ≤ ∨F and g is co-prime, g ≤ f'
    for some f' in F; then f ≤ f ∧ f', and f ≠ 0 forces f' = f (disjointness),
    so g = f. Hence every member of F is maximal among co-primes below x.
    Conversely every co-prime below x lies below some member of F, so F is
    exactly the set of maximal co-primes below x. The empty family is allowed
    and decomposes the bottom element.
    """
    cover = coprime_cover(L, x, cps)
    total = L.join_all(cover)
    if total != x:
        raise NoDecomposition(
            f"co-primes below {L.name(x)} join to {L.name(total)}",
            Witness("join-gap", (x,), (L.name(x),),
                    f"maximal co-primes {{{', '.join(L.poset.names(cover))}}} join to {L.name(total)}",
                    {"cover": cover, "join": total}))
    for p, q in combinations(cover, 2):
        m = L.meet(p, q)
        if m != L.bottom:
            raise NoDecomposition(
                f"{L.name(p)} and {L.name(q)} are not disjoint",
                Witness("overlap", (p, q), L.poset.names((p, q)),
                        f"{L.name(p)}∧{L.name(q)} = {L.name(m)} ≠ {L.name(L.bottom)}",
                        {"meet": m, "target": x}))
    return DisjointDecomposition(x, cover)


def is_fdd(L: FiniteLattice) -> Verdict:
    """Bounded, distributive, every element a finite join of co-primes, and
    every meet of two co-primes a disjoint join of co-primes.

    Witness kinds: ``distributive`` (triple), ``join-cover`` (element) or
    ``disjoint`` (co-prime pair whose meet has no disjoint decomposition).
    """
    dist = is_distributive(L)
    if not dist:
        return dist
    cps = co_primes(L)
    for x in range(L.n):
        cover = coprime_cover(L, x, cps)
        if L.join_all(cover) != x:
            return Verdict(False, Witness("join-cover", (x,), (L.name(x),),
                                          "not a join of co-primes"))
    for a, b in combinations(cps, 2):
        try:
            disjoint_decomposition(L, L.meet(a, b), cps)
        except NoDecomposition as exc:
            note = f"{L.name(a)}∧{L.name(b)} = {L.name(L.meet(a, b))}; {exc.witness.note}"
            return Verdict(False, Witness("disjoint", (a, b), L.poset.names((a, b)), note,
                                          {"meet": L.meet(a, b),
                                           "overlap": exc.witness.elements}))
    return Verdict(True)


def empty_decompositions(L: FiniteLattice) -> tuple:
    """Co-prime pairs whose meet is bottom, i.e. decomposed by the empty family."""
    cps = co_primes(L)
    return tuple((a, b) for a, b in combinations(cps, 2) if L.meet(a, b) == L.bottom)


# -- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class LatticeHom:
    source: FiniteLattice
    target: FiniteLattice
    mapping: tuple

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def describe(self) -> str:
        pairs = ", ".join(f"{self.source.name(x)}↦{self.target.name(y)}"
                          for x, y in enumerate(self.mapping))
        return f"lattice hom [{pairs}]"


def _as_table(f, n: int, m: int) -> tuple:
    if isinstance(f, Mapping):
        missing = [x for x in range(n) if x not in f]
        if missing:
            raise ValueError(f"map is not total: no image for {missing[0]}")
        table = tuple(int(f[x]) for x in range(n))
    else:
        table = tuple(int(v) for v in f)
        if len(table) != n:
            raise ValueError(f"map has {len(table)} entries, expected {n}")
    for v in table:
        if not 0 <= v < m:
            raise ValueError(f"image {v} outside target of size {m}")
    return table


def hom_violation(table: Sequence[int], L: FiniteLattice, M: FiniteLattice):
    """First violated equation as a Witness, or None."""
    if table[L.bottom] != M.bottom:
        return Witness("bottom", (L.bottom,), (L.name(L.bottom),),
                       f"f({L.name(L.bottom)}) = {M.name(table[L.bottom])} ≠ {M.name(M.bottom)}")
    if table[L.top] != M.top:
        return Witness("top", (L.top,), (L.name(L.top),),
                       f"f({L.name(L.top)}) = {M.name(table[L.top])} ≠ {M.name(M.top)}")
    for x in range(L.n):
        for y in range(x + 1, L.n):
            fx, fy = table[x], table[y]
            if table[L.meet(x, y)] != M.meet(fx, fy):
                return Witness("meet", (x, y), L.poset.names((x, y)),
                               f"f({L.name(x)}∧{L.name(y)}) = {M.name(table[L.meet(x, y)])} "
                               f"but f({L.name(x)})∧f({L.name(y)}) = {M.name(M.meet(fx, fy))}")
            if table[L.join(x, y)] != M.join(fx, fy):
                return Witness("join", (x, y), L.poset.names((x, y)),
                               f"f({L.name(x)}∨{L.name(y)}) = {M.name(table[L.join(x, y)])} "
                               f"but f({L.name(x)})∨f({L.name(y)}) = {M.name(M.join(fx, fy))}")
    return None


def certify_hom(f, L: FiniteLattice, M: FiniteLattice) -> LatticeHom:
    """Verify that ``f`` (sequence or mapping of ids) preserves 0, 1, ∧ and ∨."""
    table = _as_table(f, L.n, M.n)
    bad = hom_violation(table, L, M)
    if bad is not None:
        raise NotAHom(f"not a lattice homomorphism: {bad}", bad)
    return LatticeHom(L, M, table)


def identity_hom(L: FiniteLattice) -> LatticeHom:
    return LatticeHom(L, L, tuple(range(L.n)))


def iter_lattice_homs(L: FiniteLattice, M: FiniteLattice) -> Iterator[LatticeHom]:
    """All bounded lattice homomorphisms L → M, in lexicographic table order.

    Backtracking over a linear extension of L; each partial assignment is
    pruned by monotonicity and by every meet/join equation whose arguments
    and result are already assigned.
    """
    order = sorted(range(L.n), key=lambda x: (bin(L.poset.down_masks[x]).count("1"), x))
    img = [-1] * L.n
    Mleq = M.poset.leq

    def consistent(x):
        fx = img[x]
        for y in range(L.n):
            fy = img[y]
            if fy < 0:
                continue
            if L.le(y, x) and not Mleq[fy, fx]:
                return False
            mz, jz = L.meet(x, y), L.join(x, y)
            if img[mz] >= 0 and img[mz] != M.meet(fx, fy):
                return False
            if img[jz] >= 0 and img[jz] != M.join(fx, fy):
                return False
        # equations where x is the result of a meet or join of assigned pairs
        for a in range(L.n):
            if img[a] < 0:
                continue
            for b in range(a + 1, L.n):
                if img[b] < 0:
                    continue
                if L.meet(a, b) == x and M.meet(img[a], img[b]) != fx:
                    return False
                if L.join(a, b) == x and M.join(img[a], img[b]) != fx:
                    return False
        return True

    def rec(i):
        if i == len(order):
            yield LatticeHom(L, M, tuple(img))
            return
        x = order[i]
        if x == L.bottom and x == L.top:
            choices = (M.bottom,) if M.bottom == M.top else ()
        elif x == L.bottom:
            choices = (M.bottom,)
        elif x == L.top:
            choices = (M.top,)
        else:
            choices = range(M.n)
        for v in choices:
            img[x] = v
            if consistent(x):
                yield from rec(i + 1)
            img[x] = -1

    homs = sorted(rec(0), key=lambda h: h.mapping)
    yield from homs

