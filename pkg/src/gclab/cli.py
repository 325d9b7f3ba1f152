"""``gclab`` command line.

Exit codes: 0 success, 1 invalid input or failed validation, 2 a valid
computation with a negative answer (not a cocycle, not equivalent, not
eliminable), 3 I/O problems or an exceeded enumeration cap.
"""

import argparse
import sys

import numpy as np

from . import __version__
from .algebra import AbelianGroup, group_from_cyclic_factors, trivial_module
from .cohomology import cohomology_group, is_cocycle
from .errors import CapExceeded, GclabError
from .report import Report
from .specfile import load_spec

EXIT_OK, EXIT_INVALID, EXIT_NEGATIVE, EXIT_IO = 0, 1, 2, 3

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def group_name(factors):
    factors = [m for m in factors if m > 1]
    return " × ".join(f"ℤ/{m}" for m in factors) if factors else "0"


def coords_str(coords):
    return "(" + ",".join(str(int(c)) for c in coords) + ")"


def cochain_table(h):
    """Degree-2 cochain as a matrix of coefficient indices."""
    A = h.module.coeffs
    strides = np.array([A.index(A.reduce(tuple(int(i == j) for j in range(A.rank))))
                        for i in range(A.rank)], dtype=np.int64)
    return (h.values * strides).sum(axis=-1)


def cochain_records(h):
    return [[list(args), list(v)] for args, v in sorted(h.to_records().items())]


def _pick(doc, kind, name):
    return doc.get(name, kind) if name else doc.only(kind)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, rep):
    doc = load_spec(args.file)
    built = doc.build_all()
    for name in doc.records:
        obj = built[name]
        kind = doc.kinds[name]
        rep.line(f"{name}: {kind} ok{_summary(kind, obj)}")
    rep.put("records", {n: doc.kinds[n] for n in doc.records})
    rep.put("valid", True)
    return EXIT_OK


def _summary(kind, obj):
    if kind == "group":
        return f" (order {obj.order})"
    if kind == "abelian":
        return f" ({group_name(obj.moduli)})"
    if kind == "cochain":
        ok = obj.degree > 2 or bool(is_cocycle(obj))
        return f" (degree {obj.degree}, {'cocycle' if ok else 'not a cocycle'})"
    if kind == "extension":
        return f" (order {obj.total.order})"
    if kind == "groupoid":
        return f" ({obj.n_objects} objects, {obj.n_morphisms} morphisms)"
    if kind == "torsor":
        return f" ({obj.size} points over {obj.n_base})"
    return ""


def cmd_cohomology(args, rep):
    doc = load_spec(args.file)
    M = _pick(doc, "module", args.module)
    H = cohomology_group(M, args.degree, check=args.check)
    d = str(args.degree).translate(_SUP)
    rep.line(f"H{d} ≅ {group_name(H.invariant_factors)}")
    rep.line(f"order {H.order}")
    for i, r in enumerate(H.representatives):
        rep.line(f"generator {i} (order {H.invariant_factors[i]}): {cochain_records(r)}")
        if args.degree == 2:
            rep.table(f"generator_{i}", cochain_table(r),
                      title=f"H2 generator {i}")
    rep.put("degree", args.degree)
    rep.put("invariant_factors", H.invariant_factors)
    rep.put("order", H.order)
    rep.put("generators", [cochain_records(r) for r in H.representatives])
    return EXIT_OK


def cmd_extension(args, rep):
    from .extensions import extension_from_cocycle

    doc = load_spec(args.file)
    h = doc.get(args.cocycle, "cochain")
    chk = is_cocycle(h)
    if not chk:
        rep.line(f"not a cocycle; witness {chk.witness}")
        rep.put("cocycle", False)
        rep.put("witness", chk.witness)
        return EXIT_NEGATIVE
    E = extension_from_cocycle(h.module, h)
    T = E.total
    H = cohomology_group(h.module, 2)
    coords = H.class_of(h)
    rep.line(f"extension of order {T.order}, {'abelian' if T.is_abelian else 'nonabelian'}")
    rep.line(f"class = {coords_str(coords)} in H² ≅ {group_name(H.invariant_factors)}")
    rep.line("element orders: " + " ".join(str(T.element_order(g)) for g in range(T.order)))
    rep.table("cayley", T.table, title="Cayley table of the extension")
    rep.put("order", T.order)
    rep.put("abelian", T.is_abelian)
    rep.put("class", coords)
    rep.put("cayley", T.table)
    rep.put("labels", [T.label(g) for g in range(T.order)])
    return EXIT_OK


def cmd_cocycle(args, rep):
    from .extensions import cocycle_from_extension

    doc = load_spec(args.file)
    E = doc.get(args.extension, "extension")
    j = doc.get(args.section, "section")
    f = cocycle_from_extension(E, j)
    H = cohomology_group(E.module, 2)
    coords = H.class_of(f)
    rep.line(f"cocycle: {cochain_records(f)}")
    rep.line(f"class = {coords_str(coords)} in H² ≅ {group_name(H.invariant_factors)}")
    rep.line(f"section is {'a homomorphism' if j.homomorphic else 'not a homomorphism'}")
    rep.table("cocycle", cochain_table(f), title="extracted cocycle")
    rep.put("cocycle", cochain_records(f))
    rep.put("class", coords)
    return EXIT_OK


def cmd_morita(args, rep):
    from .morita import are_morita_equivalent, linking_groupoid

    X = _pick(load_spec(args.file_a), "groupoid", args.a)
    Y = _pick(load_spec(args.file_b), "groupoid", args.b)
    B = are_morita_equivalent(X, Y)
    if B is None:
        rep.line("not Morita equivalent")
        rep.put("equivalent", False)
        return EXIT_NEGATIVE
    L = linking_groupoid(B)
    rep.line(f"Morita equivalent; bitorsor with {B.size} points")
    rep.line(f"linking groupoid: {L.groupoid.n_objects} objects, "
             f"{L.groupoid.n_morphisms} morphisms")
    rep.put("equivalent", True)
    rep.put("bitorsor", {"aX": B.aX, "aY": B.aY,
                         "left": [[int(f), int(q), int(B.left[f, q])]
                                  for f, q in zip(*np.nonzero(B.left >= 0))],
                         "right": [[int(q), int(g), int(B.right[q, g])]
                                   for q, g in zip(*np.nonzero(B.right >= 0))]})
    return EXIT_OK


def cmd_eliminable(args, rep):
    from .galois import is_eliminable

    doc = load_spec(args.file)
    ctx, Xe, _ = _pick(doc, "equivariant", args.name)
    v = is_eliminable(ctx, Xe, search=not args.no_search)
    rep.line(v.describe())
    rep.line(f"H² ≅ {group_name(v.invariant_factors)}")
    rep.line(f"cocycle: {cochain_records(v.cocycle)}")
    rep.table("cocycle", cochain_table(v.cocycle), title="cocycle of the canonical torsor")
    rep.put("class", v.class_coords)
    rep.put("invariant_factors", v.invariant_factors)
    rep.put("eliminable", v.eliminable)
    rep.put("cocycle", cochain_records(v.cocycle))
    if v.search_agrees is not None:
        rep.line(f"invariant-torsor search agrees: {v.search_agrees}")
        rep.put("search_agrees", v.search_agrees)
    if v.eliminable:
        rep.line(f"certificate: coboundary {cochain_records(v.coboundary)}")
        rep.put("coboundary", cochain_records(v.coboundary))
        if v.invariant_torsor is not None:
            T = v.invariant_torsor
            rep.line(f"certificate: invariant torsor on {T.torsor.size} points, "
                     f"transport {[list(r) for r in T.gamma]}")
            rep.put("invariant_torsor", {"anchor": T.torsor.anchor, "gamma": T.gamma})
        return EXIT_OK
    return EXIT_NEGATIVE


def cmd_baer(args, rep):
    from .galois import cocycle_from_torsor, equivariant_baer_sum

    ctx_p, Pe, x = _pick(load_spec(args.file_p), "equivariant_torsor", None)
    ctx_q, Qe, y = _pick(load_spec(args.file_q), "equivariant_torsor", None)
    if not ctx_p.coeff.same_as(ctx_q.coeff):
        rep.line("torsors have different coefficient modules")
        return EXIT_INVALID
    H = cohomology_group(ctx_p.coeff, 2)
    hp = cocycle_from_torsor(ctx_p, Pe, x)
    hq = cocycle_from_torsor(ctx_q, Qe, y)
    S = equivariant_baer_sum(ctx_p, Pe, Qe, x, y)
    hs = cocycle_from_torsor(ctx_p, S.torsor, S.basepoint)
    cp, cq, cs = H.class_of(hp), H.class_of(hq), H.class_of(hs)
    expect = tuple((a + b) % m for a, b, m in zip(cp, cq, H.invariant_factors))
    rep.line(f"class P = {coords_str(cp)}")
    rep.line(f"class Q = {coords_str(cq)}")
    rep.line(f"class P ⊞ Q = {coords_str(cs)}")
    rep.line(f"sum of classes = {coords_str(expect)}: {'match' if cs == expect else 'MISMATCH'}")
    rep.table("sum_cocycle", cochain_table(hs), title="cocycle of the Baer sum")
    rep.put("classes", {"P": cp, "Q": cq, "sum": cs})
    rep.put("match", cs == expect)
    return EXIT_OK if cs == expect else EXIT_INVALID


def cmd_demo_quantum(args, rep):
    from .quantum import pgl_obstruction_cocycle, quantum_torus_data

    d = quantum_torus_data(args.n, args.p)
    h = pgl_obstruction_cocycle(args.n, args.p)
    H = cohomology_group(h.module, 2)
    coords = H.class_of(h)
    pts = (args.p - 1) ** 2
    rep.line(f"quantum torus n={args.n} over F_{args.p}, zeta = {d.zeta}")
    rep.line(f"uv = zeta vu at all {pts} points; commutator of g's = zeta I; g^n = I")
    rep.line(f"obstruction class = {coords_str(coords)} in H² ≅ {group_name(H.invariant_factors)}"
             f" ({'nontrivial' if any(coords) else 'trivial'})")
    rep.table("obstruction", cochain_table(h), title="projective obstruction cocycle")
    rep.put("zeta", d.zeta)
    rep.put("points_checked", pts)
    rep.put("g_alpha", d.g_alpha)
    rep.put("g_beta", d.g_beta)
    rep.put("class", coords)
    rep.put("cocycle", cochain_records(h))
    return EXIT_OK


def parse_extension_spec(text):
    """``Z4`` | ``Z2xZ2`` | ``m,k,c``: extension of Z/m by Z/k with class coordinate ``c``."""
    aliases = {"Z4": "2,2,1", "Z2xZ2": "2,2,0"}
    text = aliases.get(text, text)
    try:
        m, k, c = (int(v) for v in text.split(","))
    except ValueError:
        raise GclabError(f"bad extension spec {text!r}; use Z4, Z2xZ2 or m,k,c") from None
    from .extensions import extension_from_cocycle

    M = trivial_module(group_from_cyclic_factors((m,)), AbelianGroup((k,)))
    H = cohomology_group(M, 2)
    coords = (c,) if H.invariant_factors else ()
    return extension_from_cocycle(M, H.element(coords))


def cmd_demo_dxg(args, rep):
    from .dxg import dxg_structure, representative_change, translation_action

    E = parse_extension_spec(args.ext)
    H = E.quotient
    D = dxg_structure(args.orbits * H.order, translation_action(H, args.orbits), E)
    alt = tuple(a * H.order + H.order - 1 for a in range(args.orbits))
    D2, iso = representative_change(D, alt)
    rep.line(f"|X| = {len(D.orbit_of)}, |H| = {H.order}, |G| = {E.total.order}, |D| = {len(D.points)}")
    rep.line("projection D -> X: " + " ".join(map(str, D.projection)))
    rep.line(f"torsor over X/H with {D.torsor.n_base} base points: valid")
    rep.line(f"representatives {list(D.representatives)} -> {list(alt)}: "
             + ("isomorphism " + " ".join(map(str, iso.map)) if iso else "NO isomorphism"))
    rep.table("action", D.torsor.action, title="torsor action (morphism x point)")
    rep.put("size", len(D.points))
    rep.put("projection", D.projection)
    rep.put("isomorphism", iso.map if iso else None)
    return EXIT_OK if iso else EXIT_NEGATIVE


def cmd_demo_heisenberg(args, rep):
    from .quantum import heisenberg_extension

    E = heisenberg_extension(args.n)
    T = E.total
    rep.line(f"Heisenberg extension n={args.n}: order {T.order}, "
             f"{'abelian' if T.is_abelian else 'nonabelian'}")
    if args.n > 1:
        H = cohomology_group(E.module, 2)
        h = _canonical_cocycle(E)
        coords = H.class_of(h)
        rep.line(f"class = {coords_str(coords)} in H² ≅ {group_name(H.invariant_factors)}")
        rep.put("class", coords)
    rep.table("cayley", T.table, title=f"Heisenberg group n={args.n}")
    rep.put("order", T.order)
    rep.put("abelian", T.is_abelian)
    return EXIT_OK


def _canonical_cocycle(E):
    from .extensions import cocycle_from_extension

    return cocycle_from_extension(E, E.canonical_section())


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="DIR", help="write report.tsv and PNG heatmaps")

    p = argparse.ArgumentParser(prog="gclab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"gclab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate every record of a spec file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cohomology", parents=[common], help="compute H^1 or H^2")
    s.add_argument("--degree", type=int, choices=(1, 2), required=True)
    s.add_argument("--module", help="module record (default: the only one)")
    s.add_argument("--check", action="store_true", help="cross-check by brute force")
    s.add_argument("file")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("extension", parents=[common], help="extension from a cocycle")
    s.add_argument("--cocycle", required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_extension)

    s = sub.add_parser("cocycle", parents=[common], help="cocycle of an extension and section")
    s.add_argument("--extension", required=True)
    s.add_argument("--section", required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_cocycle)

    s = sub.add_parser("morita", parents=[common], help="decide Morita equivalence")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--a", help="groupoid record in the first file")
    s.add_argument("--b", help="groupoid record in the second file")
    s.set_defaults(func=cmd_morita)

    s = sub.add_parser("eliminable", parents=[common], help="decide eliminability")
    s.add_argument("file")
    s.add_argument("--name", help="equivariant record (default: the only one)")
    s.add_argument("--no-search", action="store_true", help="skip the invariant-torsor search")
    s.set_defaults(func=cmd_eliminable)

    s = sub.add_parser("baer", parents=[common], help="Baer sum of equivariant torsors")
    s.add_argument("file_p")
    s.add_argument("file_q")
    s.set_defaults(func=cmd_baer)

    demo = sub.add_parser("demo", help="built-in examples")
    dsub = demo.add_subparsers(dest="demo", required=True)
    s = dsub.add_parser("quantum-torus", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_demo_quantum)
    s = dsub.add_parser("dxg", parents=[common])
    s.add_argument("--orbits", type=int, required=True)
    s.add_argument("--ext", required=True, help="Z4, Z2xZ2 or m,k,c")
    s.set_defaults(func=cmd_demo_dxg)
    s = dsub.add_parser("heisenberg", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_demo_heisenberg)
    return p


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    name = args.command if args.command != "demo" else f"demo {args.demo}"
    rep = Report(name)
    try:
        code = args.func(args, rep)
    except CapExceeded as exc:
        rep.line(f"error: {exc}")
        rep.put("error", {"type": "CapExceeded", "message": str(exc)})
        code = EXIT_IO
    except OSError as exc:
        rep.line(f"error: {exc}")
        rep.put("error", {"type": "IOError", "message": str(exc)})
        code = EXIT_IO
    except GclabError as exc:
        rep.line(f"error: {type(exc).__name__}: {exc}")
        if exc.witness is not None:
            rep.line(f"witness: {exc.witness}")
        rep.put("error", {"type": type(exc).__name__, "message": str(exc),
                          "witness": exc.witness})
        code = EXIT_INVALID
    rep.put("exit_code", code)
    if args.out:
        try:
            rep.write(args.out)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=stderr)
            code = EXIT_IO
    stdout.write(rep.json() if args.json else rep.text())
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
