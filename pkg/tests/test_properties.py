"""Laws checked on generated structures."""

import numpy as np
from hypothesis import assume, given, strategies as st

from domdual.corpus import bounded_extension, canonical_code
from domdual.domain import (certify_domain, certify_spectral, compact_opens, is_L_domain,
                            is_mub_complete, random_monotone_map, upper_set_lattice)
from domdual.duality import (check_naturality, co_arrow, eta, points, points_bruteforce,
                             pt_arrow, theta)
from domdual.lattice import (certify_hom, certify_lattice, co_primes, is_distributive, is_fdd,
                             is_lattice, iter_lattice_homs)

from conftest import posets
import oracles


@given(posets())
def test_order_axioms(P):
    leq = P.leq
    assert leq.diagonal().all()
    assert not (leq & leq.T & ~np.eye(P.n, dtype=bool)).any()
    assert ((leq.astype(int) @ leq.astype(int) > 0) <= leq).all()


@given(posets(max_size=5), st.data())
def test_canonical_code_ignores_labelling(P, data):
    perm = data.draw(st.permutations(range(P.n)))
    assert canonical_code(P.permuted(perm)) == canonical_code(P)


@given(posets(max_size=5))
def test_domain_checks_agree_with_reference(P):
    assert bool(is_L_domain(P)) == oracles.is_L_domain(P)
    assert bool(is_mub_complete(P)) == oracles.is_mub_complete(P)


@given(posets(max_size=4))
def test_lattice_checks_agree_with_reference(P):
    Q = bounded_extension(P)
    assert bool(is_lattice(Q)) == oracles.is_lattice(Q)
    if oracles.is_lattice(Q):
        L = certify_lattice(Q)
        assert bool(is_distributive(L)) == oracles.is_distributive(Q)
        assert bool(is_fdd(L)) == oracles.is_fdd(Q)
        assert co_primes(L) == oracles.coprimes(Q)


@given(posets(max_size=5))
def test_upper_set_lattice_laws(P):
    L = upper_set_lattice(P).lattice
    for x in range(L.n):
        for y in range(L.n):
            assert L.meet(x, L.join(x, y)) == x
            assert L.join(x, L.meet(x, y)) == x
            assert L.meet(x, y) == L.meet(y, x)
    assert is_distributive(L)


@given(posets(max_size=5))
def test_theta_and_co_on_domains(P):
    assume(is_L_domain(P))
    D = certify_domain(P)
    theta(D)
    L = compact_opens(D).lattice
    assert is_fdd(L)
    assert oracles.isomorphic(points(L).poset, P)


@given(posets(max_size=4))
def test_points_match_oracle_on_upper_set_lattices(P):
    L = upper_set_lattice(P).lattice
    assert points(L, check=False).true_sets() == points_bruteforce(L).true_sets()
    eta(L, check=False, oracle=True)


@given(posets(max_size=4), posets(max_size=4), st.integers(0, 2**32 - 1))
def test_spectral_maps_are_natural(P, Q, seed):
    assume(is_L_domain(P) and is_L_domain(Q))
    g = random_monotone_map(P, Q, np.random.default_rng(seed))
    assume(g is not None)
    g = certify_spectral(g.mapping, P, Q)
    assert check_naturality(g, "theta").commutes
    h = co_arrow(g)
    assert check_naturality(h, "eta", check=False).commutes
    assert pt_arrow(h, check=False).mapping is not None


@given(posets(max_size=3), posets(max_size=3), st.data())
def test_homs_between_distributive_lattices(P, Q, data):
    L, M = upper_set_lattice(P).lattice, upper_set_lattice(Q).lattice
    homs = list(iter_lattice_homs(L, M))
    assume(homs)
    f = data.draw(st.sampled_from(homs))
    assert certify_hom(f.mapping, L, M).mapping == f.mapping
    assert check_naturality(f, "eta", check=False).commutes
