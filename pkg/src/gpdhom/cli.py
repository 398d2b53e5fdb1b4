"""Command-line front end.

One process, batch execution: parse input files, dispatch to the library,
print human-readable tables or JSON.  Exit codes: 0 success (and PASS for
verification commands), 1 failed verification, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import abelian, delta, fileio, products, sft, tilings, znaction
from .chains import Chain, Cochain, RingMismatch, Z, boundary, coboundary
from .groupoid import AxiomViolation, DegreeError, NerveBudgetExceeded
from .homology import (NotACycle, NotACocycle, basis_chains, basis_cochains,
                       cohomology, homology)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def group_json(g):
    return {"free_rank": g.free_rank, "torsion": list(g.torsion)}


def emit(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def add_common(parser):
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--budget", type=int, default=None,
                        help="maximum nerve size that will be enumerated")
    parser.add_argument("--max-degree", type=int, default=None, dest="max_degree",
                        help="largest accepted chain degree")


def cmd_homology(args, co=False):
    g = fileio.load_groupoid(args.file)
    ring = fileio.parse_ring(args.ring)
    fn = cohomology if co else homology
    grp = fn(g, args.degree, ring, budget=args.budget, max_degree=args.max_degree)
    name = f"H^{args.degree}" if co else f"H_{args.degree}"
    emit(args, [str(grp)],
         {"command": "cohomology" if co else "homology", "degree": args.degree,
          "ring": str(ring), "group": group_json(grp)})
    return EXIT_OK


def _load_two_cochains(args, g):
    xi = fileio.load_cochain(g, args.left)
    eta = fileio.load_cochain(g, args.right)
    return xi, eta


def cmd_cup(args):
    g = fileio.load_groupoid(args.file)
    xi, eta = _load_two_cochains(args, g)
    prod = products.cup(xi, eta)
    nerve = g.nerve(prod.degree)
    entries = [[list(s), v] for s, v in zip(nerve.strings, prod.table) if v]
    lines = [f"degree {prod.degree} cochain over {prod.ring}:"]
    lines += [f"  {list(s)} -> {v}" for s, v in zip(nerve.strings, prod.table) if v]
    payload = {"command": "cup", "degree": prod.degree, "ring": str(prod.ring),
               "values": entries}
    if args.classes:
        target, coords = products.cup_class(xi, eta)
        lines.append(f"class in H^{prod.degree} = {target}: {list(coords)}")
        payload["group"] = group_json(target)
        payload["class"] = list(coords)
    emit(args, lines, payload)
    return EXIT_OK


def cmd_cap(args):
    g = fileio.load_groupoid(args.file)
    f = fileio.load_chain(g, args.chain)
    xi = fileio.load_cochain(g, args.cochain)
    prod = products.cap(f, xi)
    entries = [[list(s), v] for s, v in sorted(prod.values.items())]
    lines = [f"degree {prod.degree} chain over {prod.ring}:"]
    lines += [f"  {list(s)} -> {v}" for s, v in sorted(prod.values.items())]
    payload = {"command": "cap", "degree": prod.degree, "ring": str(prod.ring),
               "values": entries}
    if args.classes:
        target, coords = products.cap_class(f, xi)
        lines.append(f"class in H_{prod.degree} = {target}: {list(coords)}")
        payload["group"] = group_json(target)
        payload["class"] = list(coords)
    emit(args, lines, payload)
    return EXIT_OK


def cmd_pairing(args):
    g = fileio.load_groupoid(args.file)
    ring = fileio.parse_ring(args.ring)
    table = products.cap_pairing_table(g, args.n, args.m, ring)
    lines = [f"H_{args.n} = {table.hn}; H^{args.m} = {table.hm}; "
             f"target H_{args.n - args.m} = {table.target}"]
    for i, row in enumerate(table.entries):
        for j, coords in enumerate(row):
            lines.append(f"  [h{i}] cap [c{j}] = {list(coords)}")
    payload = {"command": "pairing", "n": args.n, "m": args.m, "ring": str(ring),
               "hn": group_json(table.hn), "hm": group_json(table.hm),
               "target": group_json(table.target),
               "entries": [[list(c) for c in row] for row in table.entries]}
    emit(args, lines, payload)
    return EXIT_OK


def cmd_induced(args):
    dom = fileio.load_groupoid(args.domain)
    cod = fileio.load_groupoid(args.codomain)
    pi = fileio.load_hom(dom, cod, args.hom)
    ring = fileio.parse_ring(args.ring)
    hom = products.induced_on_homology(pi, args.degree, ring)
    cohom = products.induced_on_cohomology(pi, args.degree, ring)
    lines = [f"H_{args.degree}(pi): {hom.domain} -> {hom.codomain}",
             f"  columns: {[list(c) for c in hom.columns]}",
             f"H^{args.degree}(pi): {cohom.domain} -> {cohom.codomain}",
             f"  columns: {[list(c) for c in cohom.columns]}"]
    payload = {"command": "induced", "degree": args.degree, "ring": str(ring),
               "homology": {"domain": group_json(hom.domain),
                            "codomain": group_json(hom.codomain),
                            "columns": [list(c) for c in hom.columns]},
               "cohomology": {"domain": group_json(cohom.domain),
                              "codomain": group_json(cohom.codomain),
                              "columns": [list(c) for c in cohom.columns]}}
    emit(args, lines, payload)
    return EXIT_OK


def cmd_sft(args):
    if args.matrix:
        adj = sft.validate_adjacency(json.loads(args.matrix))
    elif args.file:
        adj = fileio.load_adjacency(args.file)
    else:
        raise fileio.InputError("sft needs --matrix or --file")
    hom = sft.sft_homology(adj)
    cap = sft.winding_cap(adj, hom)
    cap_rows = [[cap.columns[j][i] for j in range(hom.h1.ngens)]
                for i in range(hom.h0.ngens)]
    lines = [f"H0 ≅ {hom.h0}, H1 ≅ {hom.h1}, "
             f"cap = {cap_rows if cap_rows else '[]'}",
             f"kernel basis columns: {[list(c) for c in hom.kernel.columns()]}"]
    payload = {"command": "sft", "h0": group_json(hom.h0), "h1": group_json(hom.h1),
               "kernel_basis": [list(c) for c in hom.kernel.columns()],
               "cap_columns": [list(c) for c in cap.columns]}
    emit(args, lines, payload)
    return EXIT_OK


def cmd_zn_verify(args):
    action, cocycles = fileio.load_action(args.file)
    if len(cocycles) < action.n:
        raise fileio.InputError(
            f"need {action.n} cocycles in the action file, found {len(cocycles)}")
    report = znaction.verify_pairing(action, cocycles[:action.n])
    lines = []
    for p, lhs, rhs in report.rows():
        mark = "" if lhs == rhs else "   <- MISMATCH"
        lines.append(f"  {p}: closed form {lhs}  direct {rhs}{mark}")
    lines.append("PASS" if report.ok else "FAIL")
    payload = {"command": "zn-verify", "ok": report.ok,
               "boundary_vanishes": report.boundary_vanishes,
               "rows": [[str(p), lhs, rhs] for p, lhs, rhs in report.rows()]}
    emit(args, lines, payload)
    return EXIT_OK if report.ok else EXIT_FAIL


def _delta_groups(complex_, agg):
    if agg is None:
        return delta.delta_cohomology(complex_)
    return delta.coarse_cohomology(complex_, agg)


def cmd_delta_cohomology(args):
    complex_, agg, _ = fileio.load_delta(args.file)
    h1, h2 = _delta_groups(complex_, agg)
    def torsion_text(g):
        return " ⊕ ".join(f"Z/{d}" for d in g.torsion) if g.torsion else "none"
    lines = [f"H1 rank {h1.free_rank} torsion {torsion_text(h1)}; "
             f"H2 rank {h2.free_rank} torsion {torsion_text(h2)}"]
    payload = {"command": "delta-cohomology", "h1": group_json(h1),
               "h2": group_json(h2)}
    emit(args, lines, payload)
    return EXIT_OK


def cmd_delta_cup(args):
    complex_, agg, bases = fileio.load_delta(args.file)
    if agg is None:
        agg = delta.Aggregation.identity(complex_)
    if args.left or args.right:
        if not (args.left and args.right):
            raise fileio.InputError("--left and --right must be given together")
        xi = _edge_vector(complex_, agg, json.loads(args.left))
        eta = _edge_vector(complex_, agg, json.loads(args.right))
        prod = delta.coarse_cup(complex_, agg, xi, eta)
        lines = [f"cup product face vector: "
                 f"{dict((fid, v) for (fid, _), v in zip(agg.faces, prod) if v)}"]
        payload = {"command": "delta-cup",
                   "faces": [fid for fid, _ in agg.faces], "product": prod}
        emit(args, lines, payload)
        return EXIT_OK
    if not bases or not bases["h1"] or not bases["h2"]:
        raise fileio.InputError(
            f"{args.file} declares no cohomology bases; pass --left/--right")
    table = tilings.cup_table(complex_, agg, bases)
    lines = []
    for (name_i, name_j), coords in table.items():
        terms = tilings.basis_combination(coords, bases["h2"])
        lines.append(f"[{name_i}] cup [{name_j}] = {terms}")
    payload = {"command": "delta-cup",
               "h2_basis": list(bases["h2"]),
               "table": {f"{a} cup {b}": list(v) for (a, b), v in table.items()}}
    emit(args, lines, payload)
    return EXIT_OK


def _edge_vector(complex_, agg, data):
    if isinstance(data, dict):
        vec = [0] * len(agg.edges)
        pos = {e: k for k, e in enumerate(agg.edges)}
        for e, v in data.items():
            if e not in pos:
                raise fileio.InputError(f"unknown edge {e!r}")
            vec[pos[e]] = int(v)
        return vec
    vec = [int(v) for v in data]
    if len(vec) != len(agg.edges):
        raise fileio.InputError("edge vector length mismatch")
    return vec


def cmd_check(args):
    g = fileio.load_groupoid(args.file)
    rng = random.Random(args.seed)
    degree_cap = args.max_degree if args.max_degree is not None else 3
    failures = []

    def report(name, ok):
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok:
            failures.append(name)

    from .chains import boundary_matrix, coboundary_matrix, pushforward
    for n in range(1, degree_cap + 1):
        d_n = boundary_matrix(g, n, budget=args.budget)
        d_n1 = boundary_matrix(g, n + 1, budget=args.budget)
        report(f"boundary^2 = 0 at degree {n + 1}", (d_n * d_n1).is_zero())
    for n in range(2, degree_cap + 2):
        ok = True
        for i in range(n):
            for j in range(i + 1, n + 1):
                lhs = [g.face_map(n - 1, i)(g.face_map(n, j)(k))
                       for k in range(len(g.nerve(n)))]
                rhs = [g.face_map(n - 1, j - 1)(g.face_map(n, i)(k))
                       for k in range(len(g.nerve(n)))]
                ok = ok and lhs == rhs
        report(f"face identity at degree {n}", ok)

    def random_chain(n):
        nerve = g.nerve(n)
        return Chain.from_vector(g, n, [rng.randint(-3, 3) for _ in nerve])

    def random_cochain(n, ring=Z):
        nerve = g.nerve(n)
        return Cochain(g, n, [rng.randint(-3, 3) for _ in nerve], ring)

    ok = True
    for _ in range(args.samples):
        n = rng.randint(1, degree_cap)
        i = rng.randint(0, n)
        fm = g.face_map(n, i)
        f = random_chain(n)
        xi = random_cochain(n - 1)
        push = pushforward(fm, f)
        lhs = [a * b for a, b in zip(push.to_vector(), xi.table)]
        pulled = [xi.table[fm(k)] for k in range(len(g.nerve(n)))]
        nerve = g.nerve(n)
        prod = {s: v * pulled[nerve.index[s]] for s, v in f.values.items()}
        rhs = pushforward(fm, Chain(g, n, prod)).to_vector()
        ok = ok and lhs == list(rhs)
    report("pushforward product rule", ok)

    ok_leibniz = True
    ok_assoc = True
    ok_compat = True
    ok_cap = True
    for _ in range(args.samples):
        degrees = [(n, m) for n in range(0, degree_cap)
                   for m in range(0, degree_cap) if n + m + 1 <= degree_cap + 1]
        n, m = degrees[rng.randrange(len(degrees))]
        xi = random_cochain(n)
        eta = random_cochain(m)
        lhs = coboundary(products.cup(xi, eta))
        sign = -1 if n % 2 else 1
        rhs = products.cup(coboundary(xi), eta).add(
            products.cup(xi, coboundary(eta)).scale(sign))
        ok_leibniz = ok_leibniz and lhs == rhs
        l = rng.randint(0, max(0, degree_cap - n - m))
        zeta = random_cochain(l)
        ok_assoc = ok_assoc and (
            products.cup(products.cup(xi, eta), zeta)
            == products.cup(xi, products.cup(eta, zeta)))
        total = rng.randint(n + m, degree_cap + 1)
        f = random_chain(total)
        ok_compat = ok_compat and (
            products.cap(f, products.cup(xi, eta))
            == products.cap(products.cap(f, xi), eta))
        if m < total:
            lhs2 = boundary(products.cap(f, eta))
            sgn = -1 if m % 2 else 1
            rhs2 = (products.cap(boundary(f), eta)
                    .add(products.cap(f, coboundary(eta)).neg())).scale(sgn)
            ok_cap = ok_cap and lhs2 == rhs2
    report("cup Leibniz rule", ok_leibniz)
    report("cup associativity", ok_assoc)
    report("cup/cap compatibility", ok_compat)
    report("cap Leibniz rule", ok_cap)
    return EXIT_OK if not failures else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gpdhom",
        description="Exact homology, cohomology and cup/cap products of "
                    "finite discrete groupoids, with shift-of-finite-type, "
                    "Z^N-action and tiling-complex calculators.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="H_n of a groupoid file")
    p.add_argument("--file", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--ring", default="z")
    add_common(p)
    p.set_defaults(fn=lambda a: cmd_homology(a, co=False))

    p = sub.add_parser("cohomology", help="H^n of a groupoid file")
    p.add_argument("--file", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--ring", default="z")
    add_common(p)
    p.set_defaults(fn=lambda a: cmd_homology(a, co=True))

    p = sub.add_parser("cup", help="cochain cup product")
    p.add_argument("--file", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--classes", action="store_true")
    add_common(p)
    p.set_defaults(fn=cmd_cup)

    p = sub.add_parser("cap", help="chain cap product")
    p.add_argument("--file", required=True)
    p.add_argument("--chain", required=True)
    p.add_argument("--cochain", required=True)
    p.add_argument("--classes", action="store_true")
    add_common(p)
    p.set_defaults(fn=cmd_cap)

    p = sub.add_parser("pairing", help="full cap pairing table")
    p.add_argument("--file", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--ring", default="z")
    add_common(p)
    p.set_defaults(fn=cmd_pairing)

    p = sub.add_parser("induced", help="maps induced by a homomorphism")
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    p.add_argument("--hom", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--ring", default="z")
    add_common(p)
    p.set_defaults(fn=cmd_induced)

    p = sub.add_parser("sft", help="shift-of-finite-type homology and cap map")
    p.add_argument("--matrix", help="adjacency matrix as JSON, e.g. '[[2,1],[1,2]]'")
    p.add_argument("--file")
    add_common(p)
    p.set_defaults(fn=cmd_sft)

    p = sub.add_parser("zn-verify", help="check the Z^N pairing formula")
    p.add_argument("--file", required=True)
    add_common(p)
    p.set_defaults(fn=cmd_zn_verify)

    p = sub.add_parser("delta-cohomology", help="H^1, H^2 of a 2d complex")
    p.add_argument("file")
    add_common(p)
    p.set_defaults(fn=cmd_delta_cohomology)

    p = sub.add_parser("delta-cup", help="cup products of a 2d complex")
    p.add_argument("file")
    p.add_argument("--left", help="edge vector as JSON")
    p.add_argument("--right", help="edge vector as JSON")
    add_common(p)
    p.set_defaults(fn=cmd_delta_cup)

    p = sub.add_parser("check", help="run the chain-level invariant suite")
    p.add_argument("--file", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=25)
    add_common(p)
    p.set_defaults(fn=cmd_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (fileio.InputError, AxiomViolation, DegreeError, NerveBudgetExceeded,
            RingMismatch, NotACycle, NotACocycle, abelian.IncompatibleComplex,
            abelian.NotChainMap, abelian.NotInLattice, delta.InconsistentIncidence,
            delta.NotACocycle, znaction.NonCommuting, znaction.CocycleViolation,
            sft.NegativeEntry, sft.NotIrreducible, sft.IsPermutation,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
