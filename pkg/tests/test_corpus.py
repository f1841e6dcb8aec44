import itertools

import pytest

from domdual.corpus import (CorpusSpec, canonical_code, canonical_poset, decode, encode,
                            enumerate_structures, is_isomorphic_bruteforce, poset_levels,
                            run_suite)
from domdual.errors import SpecTooLarge
from domdual.fixtures import FIXTURES, diamond, l8, m3, n5
from domdual.lattice import certify_lattice
from domdual.poset import close_order

import oracles

# posets with exactly n elements up to isomorphism
POSET_CENSUS = [1, 1, 2, 5, 16, 63, 318, 2045]
# lattices / distributive lattices with exactly n elements
LATTICE_CENSUS = [1, 1, 1, 2, 5, 15, 53]
DISTRIBUTIVE_CENSUS = [1, 1, 1, 2, 3, 5, 8]


def all_posets_bruteforce(n):
    """Every labelled partial order on n points, deduplicated by pairwise iso tests."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    reps = []
    for r in range(len(pairs) + 1):
        for rel in itertools.combinations(pairs, r):
            s = set(rel)
            if any((b, a) in s for a, b in s):
                continue
            if oracles.closure(n, rel) != s | {(i, i) for i in range(n)}:
                continue
            P = close_order([str(i) for i in range(n)], rel)
            if not any(oracles.isomorphic(P, Q) for Q in reps):
                reps.append(P)
    return reps


@pytest.mark.parametrize("n", range(5))
def test_dedup_matches_pairwise_iso(n):
    levels = poset_levels(n)
    brute = all_posets_bruteforce(n)
    assert len(levels[n]) == len(brute)
    for P in brute:
        hits = [Q for Q in levels[n] if is_isomorphic_bruteforce(P, Q)]
        assert len(hits) == 1
        assert canonical_code(P) == canonical_code(hits[0])


def test_poset_census():
    levels = poset_levels(7)
    assert [len(level) for level in levels] == POSET_CENSUS


@pytest.mark.slow
def test_poset_census_size_8():
    assert len(poset_levels(8)[8]) == 16999


def test_lattice_census():
    for n in range(1, 8):
        spec = CorpusSpec(n, target="bounded_lattices", min_size=n)
        found = list(enumerate_structures(spec))
        assert len(found) == LATTICE_CENSUS[n - 1]
        fdd = list(enumerate_structures(CorpusSpec(n, target="fdd_lattices", min_size=n)))
        assert len(fdd) == DISTRIBUTIVE_CENSUS[n - 1]


def test_canonical_code_is_invariant():
    P = n5()
    for perm in itertools.permutations(range(5)):
        assert canonical_code(P.permuted(perm)) == canonical_code(P)
    assert canonical_code(n5()) != canonical_code(m3())


def test_canonical_poset_is_isomorphic():
    P = l8()
    assert oracles.isomorphic(canonical_poset(P), P)


def test_encode_decode():
    P = l8()
    Q = decode(encode(P))
    assert Q.labels == tuple(str(i) for i in range(8))
    assert (Q.leq == P.leq).all()


def test_exhaustive_posets_exact_size_three():
    assert len(list(enumerate_structures(CorpusSpec(3, min_size=3)))) == 5
    assert len(list(enumerate_structures(CorpusSpec(3)))) == 1 + 2 + 5


def test_bounded_lattices_to_five_contain_known_shapes():
    found = list(enumerate_structures(CorpusSpec(5, target="bounded_lattices")))
    for P in (diamond(), n5(), m3(), FIXTURES["CHAIN2"]()):
        assert sum(oracles.isomorphic(P, Q) for Q in found) == 1


def test_random_mode_is_reproducible():
    spec = CorpusSpec(6, mode="random", seed=42, count=10)
    a = [encode(P) for P in enumerate_structures(spec)]
    b = [encode(P) for P in enumerate_structures(spec)]
    assert a == b and len(a) == 10
    assert a != [encode(P) for P in enumerate_structures(CorpusSpec(6, mode="random", seed=43,
                                                                     count=10))]


def test_random_lattice_targets():
    for P in enumerate_structures(CorpusSpec(7, mode="random", seed=1, count=5,
                                             target="fdd_lattices")):
        assert oracles.is_fdd(P)
    for P in enumerate_structures(CorpusSpec(6, mode="random", seed=2, count=5,
                                             target="l_domains")):
        assert oracles.is_L_domain(P)


def test_spec_limits():
    with pytest.raises(SpecTooLarge):
        CorpusSpec(9).validate()
    with pytest.raises(SpecTooLarge):
        CorpusSpec(8, target="bounded_lattices").validate()
    CorpusSpec(50, mode="random").validate()
    with pytest.raises(ValueError):
        CorpusSpec(3, target="groups").validate()


def test_empty_corpus():
    r = run_suite(CorpusSpec(5, mode="random", count=0))
    assert r.structures == [] and r.failures == []
    assert r.to_json()["summary"]["structures"] == 0


def test_classification_totals():
    r = run_suite(CorpusSpec(4), arrow_samples=10)
    counts = r.classification_counts()
    assert sum(counts.values()) == len(r.structures) == 1 + 2 + 5 + 16


def test_l8_fixture_classified():
    r = run_suite(CorpusSpec(2, fixtures=("L8",)), arrow_samples=5)
    entry = next(s for s in r.structures if s.get("name") == "L8")
    assert entry["class"] == "distributive_non_fdd"
    assert entry["fdd_witness"]["names"] == ["dj1", "dj2"]
    assert entry["pt_l_domain"] is False
    assert entry["pt_l_domain_witness"]["names"] == ["g_dm1", "g_dm2"]


def test_failures_are_replayable():
    r = run_suite(CorpusSpec(5, target="bounded_lattices"), arrow_samples=10)
    for f in r.failures:
        assert f["severity"] == "bug"
        P = decode(f["structure"])
        assert certify_lattice(P)


def test_timing_is_isolated():
    r = run_suite(CorpusSpec(3), arrow_samples=5)
    assert "timing" not in r.to_json(timing=False)
    assert set(r.to_json()) - set(r.to_json(timing=False)) == {"timing"}
