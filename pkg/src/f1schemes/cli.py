"""Command-line front end.

Usage: ``f1 <verb> <targets> [-f doc.f1m] [--out json|dot|text] ...``.
The document defining the named monoids and schemes is read from the
file given by ``-f`` or from standard input.  All reports go to
standard out; diagnostics go to standard error.  Exit status 0 means
success, 2 a domain error (syntax errors, unsupported instances);
a non-polynomial zeta verdict is a successful report, not an error.
"""

import argparse
import json
import os
import random
import sys

from .abelian import unit_group_presentation
from .dsl import resolve
from .errors import DslError, F1Error
from .modules import is_coherent, picard, regular_aset, tilde
from .monoidring import FiniteRing, monoid_hom_count, ring_hom_count, \
    zext_compat_fibre
from .monoids import dk, hom_enumerate, pushout, trivial_monoid
from .schemes import monomial_matrices, points_over
from .zeta import (count_table, format_weil, format_zeta, hasse_weil_crosscheck,
                   limit_check, zeta_report)


def _load(args):
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            src = fh.read()
    else:
        src = sys.stdin.read()
    return resolve(src)


def _parse_krange(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _emit(args, payload_json, payload_text, payload_dot=None):
    if args.out == "json":
        print(payload_json)
    elif args.out == "dot":
        if payload_dot is None:
            raise F1Error("no DOT form for this report")
        print(payload_dot)
    else:
        print(payload_text)


# ---------------------------------------------------------------------------
# Verbs

def cmd_spec(args, env):
    a = env.monoid(args.monoid)
    from .spectrum import spec
    sp = spec(a)
    pts = sorted(p.label() for p in sp.points)
    text = "\n".join(["point\t" + p for p in pts])
    _emit(args, sp.to_json(), text, sp.to_dot())


def cmd_sections(args, env):
    x = env.scheme(args.scheme)
    gamma, _ = x.global_sections()
    if gamma.is_finite:
        elems = sorted(gamma.label(e) for e in gamma.elements())
        data = {"scheme": args.scheme, "size": gamma.size,
                "elements": elems}
        text = "\n".join(f"section\t{e}" for e in elems)
    else:
        gens = sorted(list(g) for g in gamma.gens)
        data = {"scheme": args.scheme, "size": None,
                "lattice_generators": gens}
        text = "\n".join("generator\t" + ",".join(map(str, g)) for g in gens)
    _emit(args, json.dumps(data, sort_keys=True, indent=2), text)


def cmd_hom(args, env):
    a = env.monoid(args.source)
    b = env.monoid(args.target)
    homs = hom_enumerate(a, b)
    keys = sorted(str(h.graph_key()) for h in homs)
    data = {"source": args.source, "target": args.target,
            "count": len(homs), "gen_images": keys}
    text = "\n".join([f"count\t{len(homs)}"] + [f"hom\t{k}" for k in keys])
    _emit(args, json.dumps(data, sort_keys=True, indent=2), text)


def cmd_points(args, env):
    x = env.scheme(args.scheme)
    rows = [(k, points_over(x, dk(k))) for k in args.k]
    data = {"scheme": args.scheme, "counts": [[k, c] for k, c in rows]}
    text = "\n".join(f"{k}\t{c}" for k, c in rows)
    _emit(args, json.dumps(data, sort_keys=True, indent=2), text)


def cmd_zeta(args, env):
    x = env.scheme(args.scheme)
    rep = zeta_report(x, ks=args.k, p=args.prime, trunc=args.trunc,
                      scheme_id=args.scheme)
    lines = [f"{k}\t{c}" for k, c in rep.counts]
    if rep.polynomial:
        lines.append("# N(x) coefficients (ascending): "
                     + ",".join(map(str, rep.coeffs)))
        lines.append("# zeta(s) = " + rep.zeta_string())
        lines.append("# Z(p=%d,T) = %s"
                     % (args.prime, format_weil(rep.weil_factors, args.prime)))
        dev, _ = limit_check(rep.coeffs, [1.5, 2.5, 3.5])
        lines.append(f"# limit check max deviation: {dev:.3e}")
    else:
        lines.append("# verdict: not polynomial"
                     + ("" if rep.first_failure is None
                        else f" (first failing k = {rep.first_failure})"))
    for r in rep.remarks:
        lines.append("# remark: " + r)
    if args.plot:
        _plot_counts(rep, args.plot)
        lines.append(f"# figure written to {args.plot}")
    _emit(args, rep.to_json(), "\n".join(lines))


def _plot_counts(rep, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from .zeta import poly_eval
    from fractions import Fraction
    fig, ax = plt.subplots(figsize=(6, 4))
    ks = [k for k, _ in rep.counts]
    cs = [c for _, c in rep.counts]
    ax.scatter(ks, cs, color="tab:blue", zorder=3, label="#X(D_k)")
    if rep.polynomial:
        lo, hi = min(ks), max(ks)
        grid = [lo + (hi - lo) * t / 200 for t in range(201)]
        vals = [float(poly_eval([Fraction(c) for c in rep.coeffs],
                                Fraction(g).limit_denominator(10 ** 6)))
                for g in grid]
        ax.plot(grid, vals, color="tab:orange", label="N(x)")
    ax.set_xlabel("k")
    ax.set_ylabel("points")
    ax.set_title(f"point counts for {rep.scheme_id}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def cmd_pic(args, env):
    x = env.scheme(args.scheme)
    g = picard(x)
    rank, torsion = g.invariants()
    data = {"scheme": args.scheme, "rank": rank, "torsion": torsion,
            "trivial": g.is_trivial()}
    text = f"rank\t{rank}\ntorsion\t{','.join(map(str, torsion)) or '-'}"
    _emit(args, json.dumps(data, sort_keys=True, indent=2), text)


def cmd_glnorder(args, env):
    n = args.n
    rows = []
    for k in args.k:
        a = dk(k)
        count = sum(1 for _ in monomial_matrices(n, a))
        rows.append((k, count))
    f1_count = sum(1 for _ in monomial_matrices(n, trivial_monoid()))
    data = {"n": n, "counts": [[k, c] for k, c in rows],
            "order_over_f1": f1_count}
    text = "\n".join([f"{k}\t{c}" for k, c in rows]
                     + [f"# GL_{n}(F1) order: {f1_count}"])
    _emit(args, json.dumps(data, sort_keys=True, indent=2), text)


def cmd_adjunction(args, env):
    a = env.monoid(args.monoid)
    r = FiniteRing(args.ring)
    lhs = ring_hom_count(a, r)
    rhs = monoid_hom_count(a, r)
    data = {"monoid": args.monoid, "ring": repr(r),
            "ring_hom_count": lhs, "monoid_hom_count": rhs,
            "equal": lhs == rhs}
    text = f"ring_homs\t{lhs}\nmonoid_homs\t{rhs}\nequal\t{lhs == rhs}"
    _emit(args, json.dumps(data, sort_keys=True, indent=2), text)


def cmd_pushout(args, env):
    f = env.morphism(args.f)
    g = env.morphism(args.g)
    if f.source is not g.source:
        raise F1Error("the two morphisms must share their source monoid")
    p, ia, ib = pushout(f.source, f.target, g.target, f, g)
    compat = zext_compat_fibre(f.source, f.target, g.target, f, g)
    elems = sorted(p.label(e) for e in p.elements()) if p.is_finite else None
    data = {"size": p.size if p.is_finite else None, "elements": elems,
            "z_compatible": compat}
    text = "\n".join([f"size\t{data['size']}", f"z_compatible\t{compat}"]
                     + [f"elem\t{e}" for e in (elems or [])])
    _emit(args, json.dumps(data, sort_keys=True, indent=2), text)


def cmd_coherent(args, env):
    a = env.monoid(args.monoid)
    if not a.is_finite:
        raise F1Error("coherence check is implemented for finite monoids")
    sheaf = tilde(regular_aset(a))
    ok, witness = is_coherent(sheaf)
    data = {"monoid": args.monoid, "module": "regular", "coherent": ok,
            "witness": witness}
    text = f"coherent\t{ok}\nwitness\t{witness}"
    _emit(args, json.dumps(data, sort_keys=True, indent=2), text)


# ---------------------------------------------------------------------------
# Dispatch

def build_parser():
    ap = argparse.ArgumentParser(
        prog="f1",
        description="computations with monoid schemes: spectra, sections, "
                    "points, Picard groups and zeta functions")
    ap.add_argument("-f", "--file", help="input document (.f1m); "
                    "standard input when omitted")
    ap.add_argument("--out", choices=("json", "dot", "text"), default="json")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("spec", help="prime spectrum of a monoid")
    p.add_argument("monoid")
    p.set_defaults(run=cmd_spec)

    p = sub.add_parser("sections", help="global sections of a scheme")
    p.add_argument("scheme")
    p.set_defaults(run=cmd_sections)

    p = sub.add_parser("hom", help="enumerate monoid homomorphisms")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(run=cmd_hom)

    p = sub.add_parser("points", help="#X(D_k) over a k range")
    p.add_argument("scheme")
    p.add_argument("--k", type=_parse_krange, default=list(range(2, 11)))
    p.set_defaults(run=cmd_points)

    p = sub.add_parser("zeta", help="zeta report for a scheme")
    p.add_argument("scheme")
    p.add_argument("--k", type=_parse_krange, default=list(range(2, 13)))
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--trunc", type=int, default=10)
    p.add_argument("--plot", metavar="FILE",
                   help="write a matplotlib figure of the counts")
    p.set_defaults(run=cmd_zeta)

    p = sub.add_parser("pic", help="Picard group of a scheme")
    p.add_argument("scheme")
    p.set_defaults(run=cmd_pic)

    p = sub.add_parser("glnorder", help="#GL_n(D_k) by monomial matrices")
    p.add_argument("n", type=int)
    p.add_argument("--k", type=_parse_krange, default=list(range(2, 9)))
    p.set_defaults(run=cmd_glnorder)

    p = sub.add_parser("adjunction",
                       help="ring homs out of Z[A] vs monoid homs into (R,x)")
    p.add_argument("monoid")
    p.add_argument("--ring", type=int, default=6, help="modulus n for Z/n")
    p.set_defaults(run=cmd_adjunction)

    p = sub.add_parser("pushout",
                       help="pushout of two morphisms with a common source")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(run=cmd_pushout)

    p = sub.add_parser("coherent",
                       help="coherence of the regular module sheaf on Spec A")
    p.add_argument("monoid")
    p.set_defaults(run=cmd_coherent)
    return ap


def main(argv=None):
    seed = os.environ.get("F1_SEED")
    if seed is not None:
        random.seed(int(seed))
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        env = _load(args)
        args.run(args, env)
    except DslError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except F1Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
