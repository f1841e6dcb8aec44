"""Small named structures used as a shared regression corpus."""

from .poset import FinitePoset, poset_from_labels


def chain(n: int) -> FinitePoset:
    labels = [str(i) for i in range(n)]
    return poset_from_labels(labels, zip(labels, labels[1:]))


def antichain(n: int, prefix: str = "x") -> FinitePoset:
    return poset_from_labels([f"{prefix}{i}" for i in range(n)], [])


def chain2() -> FinitePoset:
    return chain(2)


def a2() -> FinitePoset:
    return poset_from_labels(["x", "y"], [])


def diamond() -> FinitePoset:
    return poset_from_labels(["0", "a", "b", "1"],
                             [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def m3() -> FinitePoset:
    return poset_from_labels(["0", "a", "b", "c", "1"],
                             [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])


def n5() -> FinitePoset:
    return poset_from_labels(["0", "a", "b", "c", "1"],
                             [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def j5() -> FinitePoset:
    return poset_from_labels(["e", "m1", "m2", "j1", "j2"],
                             [("e", "m1"), ("e", "m2"),
                              ("m1", "j1"), ("m1", "j2"), ("m2", "j1"), ("m2", "j2")])


def j5_inverted() -> FinitePoset:
    return j5().dual()


# Down-sets of J5 by inclusion; m1vm2 is the down-set {e, m1, m2}.
L8_SETS = {
    "0": (),
    "de": ("e",),
    "dm1": ("e", "m1"),
    "dm2": ("e", "m2"),
    "m1vm2": ("e", "m1", "m2"),
    "dj1": ("e", "m1", "m2", "j1"),
    "dj2": ("e", "m1", "m2", "j2"),
    "1": ("e", "m1", "m2", "j1", "j2"),
}


def l8() -> FinitePoset:
    labels = list(L8_SETS)
    covers = [(a, b) for a in labels for b in labels
              if set(L8_SETS[a]) < set(L8_SETS[b])]
    return poset_from_labels(labels, covers)


def v_lattice() -> FinitePoset:
    """0 < t < a, b < 1: FDD, yet its point poset has no least element below the top."""
    return poset_from_labels(["0", "t", "a", "b", "1"],
                             [("0", "t"), ("t", "a"), ("t", "b"), ("a", "1"), ("b", "1")])


FIXTURES = {
    "CHAIN2": chain2,
    "A2": a2,
    "DIAMOND": diamond,
    "M3": m3,
    "N5": n5,
    "J5": j5,
    "J5OP": j5_inverted,
    "L8": l8,
    "V5": v_lattice,
}


def fixture(name: str) -> FinitePoset:
    return FIXTURES[name.upper()]()
