import pytest

from domdual.domain import SpectralMap, certify_domain, is_L_domain
from domdual.duality import (check_functor_laws, check_naturality, check_separation, co_arrow,
                             directed_sups_are_points, eta, gamma, point_domain, point_violation,
                             points, points_bruteforce, pt_arrow, theta)
from domdual.errors import NotCoprime, NotFDD, NotLDomain, OracleBoundExceeded
from domdual.fixtures import FIXTURES, a2, chain, j5
from domdual.lattice import certify_hom, certify_lattice, is_fdd, iter_lattice_homs

import oracles


def lat(name):
    return certify_lattice(FIXTURES[name]())


@pytest.mark.parametrize("name", ["CHAIN2", "DIAMOND", "L8", "V5", "M3", "N5"])
def test_oracle_points_are_lattice_homs_to_two(name):
    L = lat(name)
    assert sorted(points_bruteforce(L).true_sets(), key=lambda s: (len(s), sorted(s))) == \
        oracles.lattice_homs_to_two(L.poset)


def test_diamond_points():
    L = lat("DIAMOND")
    pp = points(L)
    assert pp.poset.labels == ("g_a", "g_b")
    assert pp.poset.covers() == ()
    assert pp.true_sets() == points_bruteforce(L).true_sets()


def test_diamond_point_domain_is_unpointed_antichain():
    D = point_domain(lat("DIAMOND"))
    assert not D.certificate.pointed
    assert oracles.isomorphic(D.poset, a2())


def test_chain2_has_one_point():
    assert points(lat("CHAIN2")).poset.labels == ("g_1",)


def test_gamma_rejects_non_coprime():
    L = lat("DIAMOND")
    with pytest.raises(NotCoprime):
        gamma(L, L.top)
    assert gamma(L, L.poset.index("a")).true_set == frozenset({1, 3})


def test_point_invariants():
    L = lat("DIAMOND")
    assert point_violation(L, {1, 3}) is None
    assert point_violation(L, {3}).kind == "prime"
    assert point_violation(L, {1, 2, 3}).kind == "meet"


def test_points_need_fdd():
    with pytest.raises(NotFDD):
        points(lat("L8"))


def test_l8_oracle_points_fail_l_domain():
    pp = points_bruteforce(lat("L8"))
    assert oracles.isomorphic(pp.poset, j5().dual())
    v = is_L_domain(pp.poset)
    assert not v
    assert v.witness.names == ("g_dm1", "g_dm2")
    assert pp.poset.names(v.witness.extra["mlbs"]) == ("g_dj1", "g_dj2")


def test_oracle_bound():
    with pytest.raises(OracleBoundExceeded):
        points_bruteforce(certify_lattice(chain(21)))


def test_v_lattice_point_poset_is_not_an_l_domain():
    # FDD, but the point poset has two minimal points below a common top
    L = lat("V5")
    assert is_fdd(L)
    pp = points(L)
    assert pp.poset.labels == ("g_t", "g_a", "g_b")
    assert pp.poset.least() is None
    with pytest.raises(NotLDomain) as info:
        point_domain(L)
    assert info.value.witness.names == ("g_a", "g_b")
    assert not oracles.is_L_domain(pp.poset)


def test_eta_table_for_diamond():
    rows = list(eta(lat("DIAMOND")).rows())
    assert rows == [("0", ""), ("a", "g_a"), ("b", "g_b"), ("1", "g_a,g_b")]


def test_eta_l8_through_oracle():
    iso = eta(lat("L8"), check=False, oracle=True)
    assert len(list(iso.rows())) == 8


def test_theta_table_for_a2():
    assert list(theta(certify_domain(a2())).rows()) == [("x", "g_x"), ("y", "g_y")]


def test_theta_on_j5():
    # θ(k) is generated by the co-prime ↑k, named by its members
    rows = dict(theta(j5()).rows())
    assert rows["e"] == "g_e,m1,m2,j1,j2"
    assert rows["j1"] == "g_j1"


def test_separation_diamond():
    L = lat("DIAMOND")
    a, b = L.poset.index("a"), L.poset.index("b")
    p = check_separation(L, a, b)
    assert p.true_set == frozenset({a, L.top})
    assert check_separation(L, a, L.top) is None


def test_order_reversal_on_chain():
    L = certify_lattice(chain(4))
    pp = points(L)
    gens = [p.generator for p in pp.points]
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            assert bool(pp.poset.leq[i, j]) == L.le(b, a)


def test_pt_of_diamond_to_chain2():
    f = certify_hom((0, 0, 1, 1), lat("DIAMOND"), lat("CHAIN2"))
    g = pt_arrow(f)
    assert [(g.source.labels[i], g.target.labels[j]) for i, j in enumerate(g.mapping)] == \
        [("g_1", "g_b")]


def test_naturality_on_all_small_homs():
    names = ["CHAIN2", "DIAMOND", "V5"]
    for a in names:
        for b in names:
            for f in iter_lattice_homs(lat(a), lat(b)):
                assert check_naturality(f, "eta").commutes
                assert check_naturality(pt_arrow(f), "theta", check=False).commutes


def test_co_of_swap_on_a2():
    A = a2()
    g = SpectralMap(A, A, (1, 0))
    h = co_arrow(g)
    assert [h.source.name(i) + "->" + h.target.name(j) for i, j in enumerate(h.mapping)] == \
        ["->", "x->y", "y->x", "x,y->x,y"]
    assert check_naturality(g, "theta").commutes


def test_functor_laws_diamond_chain():
    D, C = lat("DIAMOND"), lat("CHAIN2")
    f = certify_hom((0, 0, 1, 1), D, C)
    g = certify_hom((0, 3), C, D)
    report = check_functor_laws([[f, g], [g, f]])
    assert report.ok and report.compositions == 2


def test_directed_sups_of_points():
    assert directed_sups_are_points(points_bruteforce(lat("L8")))
