"""Finite-scale Stone duality between FDD-lattices and Lawson compact algebraic L-domains."""

from ._kernels import BACKEND
from .corpus import CorpusSpec, SuiteReport, canonical_form, enumerate_structures, run_suite
from .domain import (CompactOpenLattice, FiniteDomain, SpectralMap, certify_domain,
                     certify_spectral, compact_elements, compact_opens, coprimes_of_CO,
                     is_L_domain, is_mub_complete)
from .duality import (Point, PointPoset, check_functor_laws, check_naturality,
                      check_separation, co_arrow, eta, gamma, point_domain, points,
                      points_bruteforce, pt_arrow, theta)
from .errors import DomDualError, Verdict, Witness
from .fixtures import FIXTURES, fixture
from .lattice import (FiniteLattice, LatticeHom, certify_hom, certify_lattice, co_primes,
                      disjoint_decomposition, is_distributive, is_fdd, iter_lattice_homs)
from .poset import FinitePoset, close_order, poset_from_labels

__all__ = [
    "BACKEND", "CompactOpenLattice", "CorpusSpec", "DomDualError", "FIXTURES", "FiniteDomain",
    "FiniteLattice", "FinitePoset", "LatticeHom", "Point", "PointPoset", "SpectralMap",
    "SuiteReport", "Verdict", "Witness", "canonical_form", "certify_domain", "certify_hom",
    "certify_lattice", "certify_spectral", "check_functor_laws", "check_naturality",
    "check_separation", "close_order", "co_arrow", "co_primes", "compact_elements",
    "compact_opens", "coprimes_of_CO", "disjoint_decomposition", "enumerate_structures", "eta",
    "fixture", "gamma", "is_L_domain", "is_distributive", "is_fdd", "is_mub_complete",
    "iter_lattice_homs", "point_domain", "points", "points_bruteforce", "poset_from_labels",
    "pt_arrow", "run_suite", "theta",
]
