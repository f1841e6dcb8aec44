"""Slow, definition-level reference implementations.

Nothing here calls into domdual beyond reading a structure's labels and order
matrix, so agreement with the library is real evidence.
"""

from itertools import combinations, permutations, product


def leq_sets(P):
    """The order as a set of (i, j) pairs, straight from the matrix."""
    return {(i, j) for i in range(P.n) for j in range(P.n) if P.leq[i, j]}


def closure(n, pairs):
    rel = {(i, i) for i in range(n)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def subsets(n):
    for r in range(n + 1):
        yield from combinations(range(n), r)


def upper_bounds(rel, n, S):
    return {u for u in range(n) if all((s, u) in rel for s in S)}


def lower_bounds(rel, n, S):
    return {u for u in range(n) if all((u, s) in rel for s in S)}


def least(rel, S):
    found = [x for x in S if all((x, y) in rel for y in S)]
    return found[0] if found else None


def greatest(rel, S):
    found = [x for x in S if all((y, x) in rel for y in S)]
    return found[0] if found else None


def sup(rel, n, S):
    return least(rel, upper_bounds(rel, n, S))


def inf(rel, n, S):
    return greatest(rel, lower_bounds(rel, n, S))


def is_lattice(P):
    rel, n = leq_sets(P), P.n
    if n == 0:
        return False
    return all(sup(rel, n, (a, b)) is not None and inf(rel, n, (a, b)) is not None
               for a in range(n) for b in range(n))


def is_distributive(P):
    rel, n = leq_sets(P), P.n
    m = lambda a, b: inf(rel, n, (a, b))
    j = lambda a, b: sup(rel, n, (a, b))
    return all(m(a, j(b, c)) == j(m(a, b), m(a, c)) for a, b, c in product(range(n), repeat=3))


def coprimes(P):
    rel, n = leq_sets(P), P.n
    bottom = least(rel, range(n))
    return tuple(p for p in range(n) if p != bottom and all(
        (p, x) in rel or (p, y) in rel
        for x in range(n) for y in range(n) if (p, sup(rel, n, (x, y))) in rel))


def disjoint_decompositions(P, x):
    """Every pairwise-disjoint family of co-primes whose join is x."""
    rel, n = leq_sets(P), P.n
    bottom = least(rel, range(n))
    cps = coprimes(P)
    out = []
    for r in range(len(cps) + 1):
        for fam in combinations(cps, r):
            if any(inf(rel, n, (a, b)) != bottom for a, b in combinations(fam, 2)):
                continue
            if (sup(rel, n, fam) if fam else bottom) == x:
                out.append(fam)
    return out


def is_fdd(P):
    rel, n = leq_sets(P), P.n
    if not (is_lattice(P) and is_distributive(P)):
        return False
    cps = coprimes(P)
    for x in range(n):
        below = [p for p in cps if (p, x) in rel]
        if (sup(rel, n, below) if below else least(rel, range(n))) != x:
            return False
    for a, b in product(cps, repeat=2):
        if not disjoint_decompositions(P, inf(rel, n, (a, b))):
            return False
    return True


def lattice_homs_to_two(P):
    """All maps h: L -> {0, 1} preserving 0, 1, meets and joins, as true-sets."""
    rel, n = leq_sets(P), P.n
    bottom, top = least(rel, range(n)), greatest(rel, range(n))
    out = []
    for h in product((0, 1), repeat=n):
        if h[bottom] != 0 or h[top] != 1:
            continue
        if all(h[inf(rel, n, (a, b))] == min(h[a], h[b])
               and h[sup(rel, n, (a, b))] == max(h[a], h[b])
               for a in range(n) for b in range(n)):
            out.append(frozenset(x for x in range(n) if h[x]))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def upper_sets(P):
    rel, n = leq_sets(P), P.n
    return [frozenset(S) for S in subsets(n)
            if all((s, t) not in rel or t in S for s in S for t in range(n))]


def is_L_domain(P):
    """Every nonempty subset with an upper bound has an infimum."""
    rel, n = leq_sets(P), P.n
    return all(inf(rel, n, S) is not None for S in subsets(n)
               if S and upper_bounds(rel, n, S))


def is_mub_complete(P):
    rel, n = leq_sets(P), P.n
    for S in subsets(n):
        ub = upper_bounds(rel, n, S)
        mubs = [m for m in ub if not any(u != m and (u, m) in rel for u in ub)]
        if any(not any((m, u) in rel for m in mubs) for u in ub):
            return False
    return True


def isomorphic(P, Q):
    if P.n != Q.n:
        return False
    a, b = leq_sets(P), leq_sets(Q)
    return any(all(((p[i], p[j]) in b) == ((i, j) in a) for i in range(P.n) for j in range(P.n))
               for p in permutations(range(P.n)))


def is_monotone(table, P, Q):
    return all(Q.leq[table[i], table[j]] for i in range(P.n) for j in range(P.n) if P.leq[i, j])
