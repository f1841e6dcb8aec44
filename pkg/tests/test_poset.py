import numpy as np
import pytest

from domdual.errors import CycleDetected, DuplicateLabel, NotAPartialOrder
from domdual.fixtures import a2, antichain, chain, diamond, j5, l8, n5
from domdual.poset import FinitePoset, close_order, find_cycle, members, poset_from_labels, to_mask

import oracles


def test_masks_roundtrip():
    assert members(0b10110) == (1, 2, 4)
    assert to_mask([4, 1, 2]) == 0b10110
    assert members(0) == ()


def test_closure_matches_reference():
    pairs = [(0, 1), (1, 2), (3, 2), (2, 4)]
    P = close_order(list("abcde"), pairs)
    assert oracles.leq_sets(P) == oracles.closure(5, pairs)


def test_chain_and_antichain_shapes():
    C = chain(4)
    assert C.covers() == ((0, 1), (1, 2), (2, 3))
    assert C.least() == 0 and C.greatest() == 3
    A = antichain(3)
    assert A.covers() == ()
    assert A.least() is None and A.minimal_elements() == (0, 1, 2)


def test_diamond_bounds():
    D = diamond()
    a, b = D.index("a"), D.index("b")
    assert D.meet(a, b) == D.index("0")
    assert D.join(a, b) == D.index("1")
    assert D.upper_bounds([a, b]) == (D.index("1"),)
    assert D.up_set([a]) == (a, D.index("1"))


def test_a2_has_no_join():
    P = a2()
    assert P.join(0, 1) is None
    assert P.mubs([0, 1]) == ()
    assert P.upper_bounds([0, 1]) == ()


def test_j5_mubs_and_mlbs():
    P = j5()
    m1, m2, j1, j2, e = (P.index(s) for s in ("m1", "m2", "j1", "j2", "e"))
    assert P.mubs([m1, m2]) == (j1, j2)
    assert P.join(m1, m2) is None
    assert P.meet(m1, m2) == e
    assert P.mlbs([j1, j2]) == (m1, m2)


def test_inverted_j5_pair_with_two_maximal_lower_bounds():
    P = j5().dual()
    m1, m2 = P.index("m1"), P.index("m2")
    assert P.mlbs([m1, m2]) == (P.index("j1"), P.index("j2"))
    assert P.meet(m1, m2) is None
    assert P.upper_bounds([m1, m2]) == (P.index("e"),)


def test_directed_sets():
    P = n5()
    assert P.is_directed([P.index("a"), P.index("b")])
    assert not P.is_directed([P.index("a"), P.index("c")])
    assert not P.is_directed([])


def test_l8_covers_are_the_inclusion_reduction():
    P = l8()
    expected = {("0", "de"), ("de", "dm1"), ("de", "dm2"), ("dm1", "m1vm2"), ("dm2", "m1vm2"),
                ("m1vm2", "dj1"), ("m1vm2", "dj2"), ("dj1", "1"), ("dj2", "1")}
    assert set(P.cover_labels()) == expected


def test_duplicate_label_rejected():
    with pytest.raises(DuplicateLabel):
        poset_from_labels(["a", "b", "a"], [])


def test_cycle_detected_with_path():
    with pytest.raises(CycleDetected) as info:
        close_order(list("abc"), [(0, 1), (1, 2), (2, 0)])
    cyc = info.value.cycle
    assert cyc[0] == cyc[-1] and set(cyc) == {0, 1, 2}


def test_find_cycle_ignores_self_loops():
    assert find_cycle(2, [(0, 0), (0, 1)]) is None


def test_invalid_matrix_rejected():
    leq = np.array([[True, True], [True, True]])
    with pytest.raises(NotAPartialOrder):
        FinitePoset(["a", "b"], leq)
    leq = np.array([[True, True, False], [False, True, True], [False, False, True]])
    with pytest.raises(NotAPartialOrder) as info:
        FinitePoset(list("abc"), leq)
    assert info.value.witness.kind == "transitive"


def test_dual_and_permute():
    P = n5()
    assert P.dual().dual() == P
    Q = P.permuted([4, 3, 2, 1, 0])
    assert Q.labels == tuple(reversed(P.labels))
    assert oracles.isomorphic(P, Q)
    assert Q.least() == 4
