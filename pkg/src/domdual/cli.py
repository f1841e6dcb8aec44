"""Command line front end: ``domdual check|dualize|roundtrip|hom-check|enumerate|hasse``.

Exit codes: 0 success, 1 usage, 2 parse/validation, 3 precondition not met
(not FDD, not a domain, not a hom, ...), 4 internal theorem-check failure.
"""

import argparse
import json
import sys

from .corpus import TARGETS, CorpusSpec, run_suite
from .domain import certify_domain, certify_spectral, compact_opens, is_L_domain
from .duality import (check_naturality, co_arrow, eta, points,
                      points_bruteforce, pt_arrow, theta)
from .errors import (CycleDetected, DomDualError, DuplicateLabel, IsoFailure,
                     InternalInconsistency, NotALattice, NotFDD, ParseError, SpecTooLarge,
                     Unbounded, ValidationError)
from .io import load_map, load_structure, serialize_structure, structure_document, to_dot
from .lattice import (certify_hom, certify_lattice, co_primes, empty_decompositions,
                      is_distributive, is_fdd)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BUG = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _shape(P) -> str:
    n = P.n
    if n == 1:
        return "a singleton"
    if not P.covers():
        return f"a {n}-antichain"
    if len(P.covers()) == n - 1 and all(P.le(a, b) or P.le(b, a)
                                        for a in range(n) for b in range(n)):
        return f"a {n}-chain"
    return f"a {n}-element poset"


# -- check -----------------------------------------------------------------------


def classify(P) -> dict:
    """Every yes/no classification with a witness for each negative."""
    out = {"size": P.n}
    try:
        L = certify_lattice(P)
    except (NotALattice, Unbounded) as exc:
        L = None
        out["lattice"] = False
        out["lattice_witness"] = exc.witness.to_json() if exc.witness else None
    if L is not None:
        out["lattice"] = True
        out["bounded"] = True
        dist = is_distributive(L)
        out["distributive"] = dist.ok
        if not dist:
            out["distributive_witness"] = dist.witness.to_json()
        else:
            fdd = is_fdd(L)
            out["fdd"] = fdd.ok
            out["co_primes"] = list(L.poset.names(co_primes(L)))
            if not fdd:
                out["fdd_witness"] = fdd.witness.to_json()
            else:
                out["empty_disjoint_joins"] = [list(L.poset.names(pq))
                                               for pq in empty_decompositions(L)]
                pp = points(L)
                out["pt_size"] = len(pp)
                out["pt_shape"] = _shape(pp.poset)
                v = is_L_domain(pp.poset)
                out["pt_l_domain"] = v.ok
                if not v:
                    out["pt_l_domain_witness"] = v.witness.to_json()
    try:
        D = certify_domain(P)
        out["l_domain"] = True
        out["lawson_compact_algebraic"] = D.certificate.mub_complete and D.certificate.finite_mubs
        out["pointed"] = D.certificate.pointed
    except DomDualError as exc:
        out["l_domain"] = False
        out["l_domain_witness"] = exc.witness.to_json() if exc.witness else None
        out["pointed"] = P.least() is not None
    out["summary"] = _summary(out)
    return out


def _w(obj) -> str:
    if not obj:
        return ""
    return f"({', '.join(obj['names'])})"


def _summary(c: dict) -> str:
    if not c["lattice"]:
        if c["l_domain"]:
            return "not a lattice; certified L-domain"
        return f"not a lattice; not an L-domain; witness {_w(c['l_domain_witness'])}"
    if not c["distributive"]:
        return f"lattice, NOT distributive; witness triple {_w(c['distributive_witness'])}"
    if not c["fdd"]:
        w = c["fdd_witness"]
        if w["kind"] == "disjoint":
            return f"distributive, NOT FDD; witness co-prime pair {_w(w)}"
        return f"distributive, NOT FDD; witness {w['kind']} {_w(w)}"
    s = f"bounded distributive FDD-lattice; pt will be {c['pt_shape']}"
    if not c["pt_l_domain"]:
        s += f", which is NOT an L-domain; witness {_w(c['pt_l_domain_witness'])}"
    return s


def _yes(flag, witness=None, note=""):
    if flag:
        return "yes" + (f" ({note})" if note else "")
    if witness:
        return f"no; witness {witness['kind']} ({', '.join(witness['names'])}) {witness['note']}".rstrip()
    return "no"


def cmd_check(args) -> int:
    doc = load_structure(args.path)
    P = doc.to_poset()
    c = classify(P)
    if args.json:
        print(json.dumps({"name": doc.name, "kind": doc.kind, **c}, indent=2))
        return EXIT_OK
    print(f"structure: {doc.name} ({P.n} elements, declared {doc.kind})")
    print("lattice: " + _yes(c["lattice"], c.get("lattice_witness")))
    if c["lattice"]:
        print(f"bounded: yes (bottom {P.labels[P.least()]}, top {P.labels[P.greatest()]})")
        print("distributive: " + _yes(c["distributive"], c.get("distributive_witness")))
        if c["distributive"]:
            print("FDD: " + _yes(c["fdd"], c.get("fdd_witness"),
                                 "co-primes " + ", ".join(c["co_primes"])))
            for p, q in c.get("empty_disjoint_joins", []):
                print(f"  note: {p}∧{q} = bottom, decomposed by the empty disjoint join")
    print("L-domain: " + _yes(c["l_domain"], c.get("l_domain_witness")))
    if c["l_domain"]:
        print("Lawson-compact algebraic: " + _yes(c["lawson_compact_algebraic"],
                                                  note="mub-complete, finite mubs"))
    print("pointed: " + ("yes" if c["pointed"] else "no"))
    print("summary: " + c["summary"])
    return EXIT_OK


# -- dualize -----------------------------------------------------------------------


def cmd_dualize(args) -> int:
    doc = load_structure(args.path)
    P = doc.to_poset()
    if args.pt:
        L = certify_lattice(P)
        pp = points_bruteforce(L) if args.oracle else points(L)
        v = is_L_domain(pp.poset)
        kind = "domain" if v else "poset"
        out = structure_document(pp.poset, kind, f"pt({doc.name})")
        print(serialize_structure(out), end="")
        if not v:
            fdd = bool(is_fdd(L))
            print(f"note: point poset is not an L-domain; witness {v.witness}", file=sys.stderr)
            if fdd:
                print("internal check failed: pt of an FDD-lattice must be an L-domain",
                      file=sys.stderr)
                return EXIT_BUG
        return EXIT_OK
    D = certify_domain(P)
    co = compact_opens(D)
    out = structure_document(co.lattice.poset, "lattice", f"CO({doc.name})")
    print(serialize_structure(out), end="")
    return EXIT_OK


# -- roundtrip -----------------------------------------------------------------------


def _table(rows, arrow):
    rows = list(rows)
    width = max([len(repr(a)) for a, _ in rows] + [1])
    return [f"  {repr(a):<{width}} {arrow} {repr(b)}" for a, b in rows]


def cmd_roundtrip(args) -> int:
    doc = load_structure(args.path)
    P = doc.to_poset()
    try:
        L = certify_lattice(P) if doc.kind != "domain" else None
    except (NotALattice, Unbounded):
        L = None
    result = {"name": doc.name}
    lines = []
    code = EXIT_OK
    if L is not None:
        c = classify(P)
        result["classification"] = c["summary"]
        lines.append(f"classification: {c['summary']}")
        if not c["distributive"] or (not c["fdd"] and not args.oracle):
            fdd = is_fdd(L)
            raise NotFDD(f"not FDD: {fdd.witness}; --oracle skips this check for "
                         "distributive lattices", fdd.witness)
        iso = eta(L, check=not args.oracle, oracle=args.oracle)
        result["map"] = "eta"
        result["table"] = [list(r) for r in iso.rows()]
        lines.append(f"η_{doc.name}: {doc.name} → CO(pt({doc.name})), {L.n} rows")
        lines += _table(iso.rows(), "↦")
        pp = iso.points
        v = is_L_domain(pp.poset)
        result["pt_l_domain"] = v.ok
        if not v:
            lines.append(f"pt({doc.name}) is NOT an L-domain; witness {v.witness}")
            lines.append(f"so CO(pt({doc.name})) and pt(CO(pt({doc.name}))) lie outside the "
                         "duality; θ is not defined on pt")
            if c.get("fdd"):
                code = EXIT_BUG
        result["verdict"] = "ISO"
        lines.append("verdict: ISO (lattice isomorphism verified in both directions)")
    else:
        D = certify_domain(P)
        iso = theta(D)
        result["map"] = "theta"
        result["table"] = [list(r) for r in iso.rows()]
        result["verdict"] = "ISO"
        lines.append(f"θ_{doc.name}: {doc.name} → pt(CO({doc.name})), {P.n} rows")
        lines += _table(iso.rows(), "↦")
        lines.append("verdict: ISO (order isomorphism verified in both directions)")
    if args.json:
        print(json.dumps(result, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))
    return code


# -- hom-check -----------------------------------------------------------------------


def cmd_hom_check(args) -> int:
    m = load_map(args.path)
    S, T = m.source.to_poset(), m.target.to_poset()
    table = m.table()
    kinds = (m.source.kind, m.target.kind)
    as_lattices = "lattice" in kinds and "domain" not in kinds
    if as_lattices:
        try:
            L, M = certify_lattice(S), certify_lattice(T)
        except (NotALattice, Unbounded):
            as_lattices = False
    lines, code = [], EXIT_OK
    if as_lattices:
        f = certify_hom(table, L, M)
        lines.append(f"hom ok: {f.describe()}")
        if not (is_fdd(L) and is_fdd(M)):
            lines.append("dual arrow skipped: source or target is not FDD")
            print("\n".join(lines))
            return EXIT_OK
        g = pt_arrow(f)
        lines.append(f"pt(f): pt({m.target.name}) → pt({m.source.name})")
        lines += _table([(g.source.labels[i], g.target.labels[j])
                         for i, j in enumerate(g.mapping)], "↦")
        squares = [("eta-square", check_naturality(f, "eta")),
                   ("theta-square", check_naturality(g, "theta", check=False))]
    else:
        g = certify_spectral(table, S, T)
        lines.append(f"spectral ok: {g.describe()}")
        h = co_arrow(g)
        lines.append(f"CO(g): CO({m.target.name}) → CO({m.source.name})")
        lines += _table([(h.source.name(i), h.target.name(j))
                         for i, j in enumerate(h.mapping)], "↦")
        squares = [("theta-square", check_naturality(g, "theta")),
                   ("eta-square", check_naturality(h, "eta", check=False))]
    for name, r in squares:
        if r.commutes:
            lines.append(f"{name}: commutes")
        else:
            lines.append(f"{name}: FAILS; witness {r.witness}")
            code = EXIT_BUG
    print("\n".join(lines))
    return code


# -- enumerate / hasse ---------------------------------------------------------------


def cmd_enumerate(args) -> int:
    spec = CorpusSpec(max_size=args.max_size, mode="random" if args.random else "exhaustive",
                      seed=args.seed, count=args.count, target=args.target,
                      min_size=args.min_size, fixtures=tuple(f.upper() for f in args.fixture))
    try:
        spec.validate()
    except (SpecTooLarge, ValueError) as exc:
        raise UsageError(str(exc)) from None
    report = run_suite(spec, arrow_samples=args.arrow_samples)
    if args.json:
        text = json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"
    else:
        text = report.to_text() + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_BUG if report.bug_count else EXIT_OK


def cmd_hasse(args) -> int:
    doc = load_structure(args.path)
    print(to_dot(doc.to_poset(), doc.name or "P"), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="domdual", description="Finite duality between FDD-lattices and L-domains.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="classify a structure")
    c.add_argument("path")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("dualize", help="emit pt(L) or CO(D) as a structure document")
    d.add_argument("path")
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--pt", action="store_true")
    g.add_argument("--co", action="store_true")
    d.add_argument("--oracle", action="store_true", help="brute-force points, skip the FDD check")
    d.set_defaults(func=cmd_dualize)

    r = sub.add_parser("roundtrip", help="verify η or θ and print its table")
    r.add_argument("path")
    r.add_argument("--oracle", action="store_true")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_roundtrip)

    h = sub.add_parser("hom-check", help="certify a map and check both naturality squares")
    h.add_argument("path")
    h.set_defaults(func=cmd_hom_check)

    e = sub.add_parser("enumerate", help="run the duality suite over a corpus")
    m = e.add_mutually_exclusive_group()
    m.add_argument("--exhaustive", action="store_true")
    m.add_argument("--random", action="store_true")
    e.add_argument("--max-size", type=int, required=True)
    e.add_argument("--min-size", type=int, default=1)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--count", type=int, default=10)
    e.add_argument("--target", choices=TARGETS, default="posets")
    e.add_argument("--fixture", action="append", default=[],
                   help="add a named structure to the corpus (repeatable)")
    e.add_argument("--arrow-samples", type=int, default=200)
    e.add_argument("--json", action="store_true")
    e.add_argument("--output", "-o")
    e.set_defaults(func=cmd_enumerate)

    x = sub.add_parser("hasse", help="Hasse diagram as DOT")
    x.add_argument("path")
    x.set_defaults(func=cmd_hasse)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, DuplicateLabel, CycleDetected) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: no such file or fixture: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (IsoFailure, InternalInconsistency) as exc:
        print(f"internal check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BUG
    except DomDualError as exc:
        print(f"precondition failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
