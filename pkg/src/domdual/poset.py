"""Finite partial orders on dense 0-based element ids.

Subsets are passed in as any iterable of ids and returned as ascending tuples.
Internally each element keeps Python-int bitmasks of its up-set and down-set,
which makes bound computations a handful of ``&`` operations.
"""

from collections.abc import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import CycleDetected, DuplicateLabel, NotAPartialOrder, Witness


def members(mask: int) -> tuple:
    """Ascending ids of the set bits of ``mask``."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def to_mask(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << int(i)
    return m


class FinitePoset:
    """Labelled finite poset with a dense boolean order matrix.

    ``leq[i, j]`` is true iff element i is below element j. Instances are
    immutable and hash by content.
    """

    __slots__ = ("labels", "leq", "_index", "up_masks", "down_masks", "_hash")

    def __init__(self, labels: Sequence[str], leq, *, validate: bool = True):
        labels = tuple(str(s) for s in labels)
        leq = np.array(leq, dtype=np.bool_)
        n = len(labels)
        if leq.shape != (n, n):
            raise ValueError(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        index = {}
        for i, s in enumerate(labels):
            if s in index:
                raise DuplicateLabel(f"duplicate label {s!r}",
                                     Witness("duplicate-label", (index[s], i), (s, s)))
            index[s] = i
        leq.setflags(write=False)
        self.labels = labels
        self.leq = leq
        self._index = index
        self.up_masks = tuple(to_mask(np.flatnonzero(leq[i])) for i in range(n))
        self.down_masks = tuple(to_mask(np.flatnonzero(leq[:, i])) for i in range(n))
        self._hash = None
        if validate:
            _validate_order(self)

    # -- basics --------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.labels, self.leq.tobytes()))
        return self._hash

    def __repr__(self):
        return f"FinitePoset(n={self.n}, covers={self.cover_labels()})"

    def index(self, label: str) -> int:
        return self._index[label]

    def names(self, ids: Iterable[int]) -> tuple:
        return tuple(self.labels[i] for i in ids)

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.leq[x, y])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    # -- closures and bounds -----------------------------------------------

    def up_mask(self, S: Iterable[int]) -> int:
        m = 0
        for s in S:
            m |= self.up_masks[s]
        return m

    def down_mask(self, S: Iterable[int]) -> int:
        m = 0
        for s in S:
            m |= self.down_masks[s]
        return m

    def up_set(self, S: Iterable[int]) -> tuple:
        return members(self.up_mask(S))

    def down_set(self, S: Iterable[int]) -> tuple:
        return members(self.down_mask(S))

    def upper_bound_mask(self, S: Iterable[int]) -> int:
        m = self.full_mask
        for s in S:
            m &= self.up_masks[s]
        return m

    def lower_bound_mask(self, S: Iterable[int]) -> int:
        m = self.full_mask
        for s in S:
            m &= self.down_masks[s]
        return m

    def upper_bounds(self, S: Iterable[int]) -> tuple:
        # upper_bounds(∅) is the whole carrier
        return members(self.upper_bound_mask(S))

    def lower_bounds(self, S: Iterable[int]) -> tuple:
        return members(self.lower_bound_mask(S))

    def minimal_in(self, mask: int) -> tuple:
        """Minimal elements of the subset encoded by ``mask``."""
        return tuple(x for x in members(mask) if self.down_masks[x] & mask == 1 << x)

    def maximal_in(self, mask: int) -> tuple:
        return tuple(x for x in members(mask) if self.up_masks[x] & mask == 1 << x)

    def mubs(self, S: Iterable[int]) -> tuple:
        return self.minimal_in(self.upper_bound_mask(S))

    def mlbs(self, S: Iterable[int]) -> tuple:
        return self.maximal_in(self.lower_bound_mask(S))

    def sup(self, S: Iterable[int]):
        """Least upper bound of S, or None when it does not exist."""
        ub = self.upper_bound_mask(S)
        cands = self.minimal_in(ub)
        if len(cands) == 1 and self.up_masks[cands[0]] & ub == ub:
            return cands[0]
        return None

    def inf(self, S: Iterable[int]):
        lb = self.lower_bound_mask(S)
        cands = self.maximal_in(lb)
        if len(cands) == 1 and self.down_masks[cands[0]] & lb == lb:
            return cands[0]
        return None

    def meet(self, x: int, y: int):
        return self.inf((x, y))

    def join(self, x: int, y: int):
        return self.sup((x, y))

    def is_directed(self, S: Iterable[int]) -> bool:
        """Nonempty and every pair has an upper bound inside S."""
        S = tuple(S)
        if not S:
            return False
        mask = to_mask(S)
        return all(self.up_masks[x] & self.up_masks[y] & mask
                   for i, x in enumerate(S) for y in S[i + 1:])

    def is_upper_mask(self, mask: int) -> bool:
        return all(self.up_masks[x] & mask == self.up_masks[x] for x in members(mask))

    def minimal_elements(self) -> tuple:
        return self.minimal_in(self.full_mask)

    def maximal_elements(self) -> tuple:
        return self.maximal_in(self.full_mask)

    def least(self):
        m = self.minimal_elements()
        return m[0] if len(m) == 1 else None

    def greatest(self):
        m = self.maximal_elements()
        return m[0] if len(m) == 1 else None

    # -- derived structures -------------------------------------------------

    def covers(self) -> tuple:
        """Hasse diagram edges (x, y) with x < y and nothing strictly between."""
        out = []
        for x in range(self.n):
            above = self.up_masks[x] & ~(1 << x)
            for y in self.minimal_in(above):
                out.append((x, y))
        return tuple(sorted(out))

    def cover_labels(self) -> list:
        return [(self.labels[x], self.labels[y]) for x, y in self.covers()]

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.labels, self.leq.T, validate=False)

    def permuted(self, perm: Sequence[int], labels: Sequence[str] | None = None) -> "FinitePoset":
        """Poset whose element i is element ``perm[i]`` of this one."""
        perm = np.asarray(perm, dtype=np.int64)
        if labels is None:
            labels = [self.labels[p] for p in perm]
        return FinitePoset(labels, self.leq[np.ix_(perm, perm)], validate=False)

    def relabelled(self, labels: Sequence[str]) -> "FinitePoset":
        return FinitePoset(labels, self.leq, validate=False)


def _validate_order(P: FinitePoset) -> None:
    leq = P.leq
    n = P.n
    diag = np.flatnonzero(~np.diag(leq))
    if len(diag):
        x = int(diag[0])
        raise NotAPartialOrder("relation is not reflexive",
                               Witness("reflexive", (x,), P.names((x,))))
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        x, y = (int(v) for v in np.argwhere(both)[0])
        raise NotAPartialOrder("relation is not antisymmetric",
                               Witness("antisymmetric", (x, y), P.names((x, y))))
    closed = _kernels.transitive_closure(leq)
    gap = closed & ~leq
    if gap.any():
        x, z = (int(v) for v in np.argwhere(gap)[0])
        y = next(y for y in range(n) if leq[x, y] and leq[y, z])
        raise NotAPartialOrder("relation is not transitive",
                               Witness("transitive", (x, y, z), P.names((x, y, z))))


def find_cycle(n: int, edges: Iterable[tuple]):
    """A directed cycle ``[v0, ..., v0]`` among ``edges`` (self-loops ignored), or None."""
    succ = [[] for _ in range(n)]
    for a, b in edges:
        if a != b:
            succ[a].append(b)
    for s in succ:
        s.sort()
    color = [0] * n
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                stack.pop()
            elif color[w] == 0:
                color[w] = 1
                parent[w] = v
                stack.append((w, iter(succ[w])))
            elif color[w] == 1:
                cycle = [v]
                while cycle[-1] != w:
                    cycle.append(parent[cycle[-1]])
                cycle.reverse()
                return cycle + [w]
    return None


def close_order(labels: Sequence[str], cover_pairs: Iterable[tuple]) -> FinitePoset:
    """Smallest partial order containing ``cover_pairs`` (pairs of ElementIds).

    Pairs need not be a Hasse diagram; any acyclic relation is accepted, and
    pairs (x, x) are harmless.
    """
    labels = tuple(str(s) for s in labels)
    n = len(labels)
    seen = {}
    for i, s in enumerate(labels):
        if s in seen:
            raise DuplicateLabel(f"duplicate label {s!r}",
                                 Witness("duplicate-label", (seen[s], i), (s, s)))
        seen[s] = i
    pairs = [(int(a), int(b)) for a, b in cover_pairs]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"cover pair {(a, b)} outside carrier of size {n}")
    cycle = find_cycle(n, pairs)
    if cycle is not None:
        names = tuple(labels[i] for i in cycle)
        raise CycleDetected("cover relation has a cycle: " + " < ".join(names), cycle,
                            Witness("cycle", tuple(cycle), names))
    rel = np.zeros((n, n), dtype=np.bool_)
    for a, b in pairs:
        rel[a, b] = True
    return FinitePoset(labels, _kernels.transitive_closure(rel), validate=False)


def poset_from_labels(labels: Sequence[str], cover_labels: Iterable[tuple]) -> FinitePoset:
    """``close_order`` with covers given by label instead of id."""
    index = {s: i for i, s in enumerate(labels)}
    return close_order(labels, [(index[a], index[b]) for a, b in cover_labels])
