"""Inner loops shared by the order-theoretic modules.

Every kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
version. The public names dispatch on ``BACKEND``, which is ``"numba"``
unless numba is missing or ``DOMDUAL_DISABLE_NUMBA`` is set to a true value.
Both paths return identical arrays; tests compare them directly.

Subsets are int64 bitmasks, so the subset scans are limited to
``MAX_SUBSET_BITS`` elements.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

MAX_SUBSET_BITS = 24
MAX_CANON_SIZE = 8


def _numba_disabled() -> bool:
    flag = os.environ.get("DOMDUAL_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false", "no")


HAVE_NUMBA = numba is not None
BACKEND = "numba" if HAVE_NUMBA and not _numba_disabled() else "numpy"


def _jit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# -- transitive closure -----------------------------------------------------


def _closure_loop(rel):
    n = rel.shape[0]
    out = rel.copy()
    for i in range(n):
        out[i, i] = True
    for k in range(n):
        for i in range(n):
            if out[i, k]:
                for j in range(n):
                    if out[k, j]:
                        out[i, j] = True
    return out


def closure_numpy(rel):
    out = np.array(rel, dtype=np.bool_, copy=True)
    np.fill_diagonal(out, True)
    for k in range(out.shape[0]):
        out |= out[:, k : k + 1] & out[k : k + 1, :]
    return out


closure_numba = _jit(_closure_loop)


# -- upper sets -------------------------------------------------------------


def _upper_sets_loop(up):
    n = up.shape[0]
    total = np.int64(1) << n
    keep = np.zeros(total, dtype=np.bool_)
    count = 0
    for s in range(total):
        ok = True
        for x in range(n):
            if (s >> x) & 1 and (s & up[x]) != up[x]:
                ok = False
                break
        if ok:
            keep[s] = True
            count += 1
    out = np.empty(count, dtype=np.int64)
    j = 0
    for s in range(total):
        if keep[s]:
            out[j] = s
            j += 1
    return out


def upper_sets_numpy(up):
    n = len(up)
    masks = np.arange(np.int64(1) << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=np.bool_)
    for x in range(n):
        ux = np.int64(up[x])
        has_x = ((masks >> x) & 1).astype(np.bool_)
        ok &= ~has_x | ((masks & ux) == ux)
    return masks[ok]


upper_sets_numba = _jit(_upper_sets_loop)


# -- prime filters ----------------------------------------------------------


def _prime_filters_loop(up, meet, join, top, bottom):
    n = up.shape[0]
    total = np.int64(1) << n
    keep = np.zeros(total, dtype=np.bool_)
    count = 0
    for s in range(total):
        if not (s >> top) & 1 or (s >> bottom) & 1:
            continue
        ok = True
        for x in range(n):
            if (s >> x) & 1 and (s & up[x]) != up[x]:
                ok = False
                break
        if not ok:
            continue
        for x in range(n):
            inx = (s >> x) & 1
            for y in range(x + 1, n):
                iny = (s >> y) & 1
                if inx and iny and not (s >> meet[x, y]) & 1:
                    ok = False
                    break
                if (s >> join[x, y]) & 1 and not inx and not iny:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            keep[s] = True
            count += 1
    out = np.empty(count, dtype=np.int64)
    j = 0
    for s in range(total):
        if keep[s]:
            out[j] = s
            j += 1
    return out


def prime_filters_numpy(up, meet, join, top, bottom):
    n = len(up)
    cand = upper_sets_numpy(up)
    cand = cand[((cand >> top) & 1).astype(bool) & ~((cand >> bottom) & 1).astype(bool)]
    bits = ((cand[:, None] >> np.arange(n)) & 1).astype(np.bool_)
    ok = np.ones(len(cand), dtype=np.bool_)
    for x in range(n):
        for y in range(x + 1, n):
            both = bits[:, x] & bits[:, y]
            ok &= ~both | bits[:, meet[x, y]]
            ok &= ~bits[:, join[x, y]] | bits[:, x] | bits[:, y]
    return cand[ok]


prime_filters_numba = _jit(_prime_filters_loop)


# -- canonical codes --------------------------------------------------------


def _min_code_loop(leq, perms):
    m, n = perms.shape
    best = np.uint64(0)
    best_i = -1
    for p in range(m):
        code = np.uint64(0)
        for i in range(n):
            pi = perms[p, i]
            for j in range(n):
                if leq[pi, perms[p, j]]:
                    code |= np.uint64(1) << np.uint64(i * n + j)
        if best_i < 0 or code < best:
            best = code
            best_i = p
    return best, best_i


def min_code_numpy(leq, perms):
    m, n = perms.shape
    bits = leq[perms[:, :, None], perms[:, None, :]].reshape(m, n * n)
    weights = np.left_shift(np.uint64(1), np.arange(n * n, dtype=np.uint64))
    codes = (bits.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    i = int(np.argmin(codes))
    return codes[i], i


min_code_numba = _jit(_min_code_loop)


# -- dispatch ---------------------------------------------------------------


def transitive_closure(rel):
    """Reflexive-transitive closure of a boolean relation matrix."""
    rel = np.ascontiguousarray(rel, dtype=np.bool_)
    if BACKEND == "numba":
        return closure_numba(rel)
    return closure_numpy(rel)


def upper_set_masks(up_masks):
    """All subsets S with ``up[x] ⊆ S`` for every x in S, ascending by mask."""
    up = np.asarray(up_masks, dtype=np.int64)
    _check_bits(len(up))
    if BACKEND == "numba":
        return upper_sets_numba(up)
    return upper_sets_numpy(up)


def prime_filter_masks(up_masks, meet, join, top, bottom):
    """Masks of proper prime filters of a lattice given by its tables."""
    up = np.asarray(up_masks, dtype=np.int64)
    _check_bits(len(up))
    meet = np.ascontiguousarray(meet, dtype=np.int64)
    join = np.ascontiguousarray(join, dtype=np.int64)
    if BACKEND == "numba":
        return prime_filters_numba(up, meet, join, int(top), int(bottom))
    return prime_filters_numpy(up, meet, join, int(top), int(bottom))


def min_code(leq, perms):
    """Smallest packed matrix code over ``perms`` and the index achieving it.

    Bit ``i*n + j`` of a code is ``leq[perm[i], perm[j]]``; n is at most 8 so
    codes fit in a uint64.
    """
    leq = np.ascontiguousarray(leq, dtype=np.bool_)
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if leq.shape[0] > MAX_CANON_SIZE:
        raise ValueError(f"canonical codes need n <= {MAX_CANON_SIZE}")
    if BACKEND == "numba":
        code, i = min_code_numba(leq, perms)
    else:
        code, i = min_code_numpy(leq, perms)
    return int(code), int(i)


def _check_bits(n):
    if n > MAX_SUBSET_BITS:
        raise ValueError(f"subset scan over {n} elements exceeds {MAX_SUBSET_BITS} bits")
