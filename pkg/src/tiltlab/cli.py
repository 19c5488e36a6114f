"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check fails, 2 unreadable input,
3 an internal invariant broke (for instance a non-unique mutation).
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import List, Optional

from . import clustercat as cc
from .exactlin import QQ
from .fileformat import FIXTURES, FormatError, field_from_flag, format_algebra, load_algebra, load_fixture, load_module
from .homalg import (BudgetExceeded, I, P, S, dim_str, ext_dim, global_dim, gorenstein_report, is_finite,
                     min_resolution, presentation_ext_mismatches)
from .quiveralg import FiniteAlgebra, NotAssociative, NotBasic
from .report import Report, default_environment
from .repmod import SplitFailure
from .stablecm import (NotGorenstein, NotSelfinjective, cy3_report, ext_dim_injective, is_selfinjective,
                       preprojective_algebra, relative_cy_report, stable_cy_report)

KNOWN_GORENSTEIN = {"a4_cluster": 1, "d4_cluster": 1, "sixvertex_gls": 0, "cycle4_radsq": 0, "a7_3cluster": 1}
INTERNAL = (cc.AmbiguousComplement, cc.ApproximationFailure, cc.CompositionUnsupported,
            SplitFailure, NotAssociative)


# hypotheses of a command that the input does not satisfy
REFUSED = (NotGorenstein, NotSelfinjective, NotBasic, BudgetExceeded, cc.NotFound, cc.NotTilting,
           cc.HomologyDegreeOutOfRange)


def _field(args):
    return field_from_flag(args.field) or QQ


def _fixture_name(path: str) -> Optional[str]:
    stem = Path(path).name
    stem = stem[:-4] if stem.endswith(".alg") else stem
    return stem if stem in FIXTURES else None


def load(args):
    """An algebra file, or a bundled fixture name (with or without fixtures/ and .alg)."""
    p = Path(args.algebra)
    if p.exists():
        return load_algebra(p, args.max_path_len, field_from_flag(args.field))
    name = _fixture_name(args.algebra)
    if name:
        return load_fixture(name, args.max_path_len, field_from_flag(args.field))
    raise FormatError(f"no such algebra file or fixture: {args.algebra}")


def module_arg(a, spec: str):
    """P3, I1, S2 (vertex labels) or a module file."""
    m = re.fullmatch(r"([PIS])(.+)", spec)
    if m and m.group(2) in [str(v) for v in a.quiver.vertices]:
        v = a.quiver.vertex_index(m.group(2))
        return {"P": P, "I": I, "S": S}[m.group(1)](a, v)
    if Path(spec).exists():
        return load_module(spec, a)
    raise FormatError(f"bad module {spec!r}: use P<v>, I<v>, S<v> or a module file")


def orbit_object(spec: str) -> cc.OrbitObject:
    m = re.fullmatch(r"M(\d+)(?:\[(-?\d+)\])?", spec.strip())
    if not m:
        raise FormatError(f"bad object {spec!r}: use M<k> or M<k>[s]")
    return cc.OrbitObject(int(m.group(1)), int(m.group(2) or 0))


def object_set(C, spec: Optional[str]):
    if not spec:
        return list(C.seed())
    out = [C.canonical(C.lift(orbit_object(s))) for s in spec.split(",")]
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args, rep: Report):
    a = load(args)
    rep.results.update({"algebra": a.name, "vertices": a.n, "arrows": len(a.quiver.arrows), "dim": a.dim,
                        "cartan": a.cartan()})
    try:
        FiniteAlgebra.from_bound_quiver(a).check_associative(limit=a.dim)
        ok = True
    except NotAssociative:
        ok = False
    rep.add("associative", ok, True, "TRIVIAL", "normal forms multiply associatively")


def cmd_resolve(args, rep: Report):
    a = load(args)
    M = module_arg(a, args.module)
    r = min_resolution(M, args.kind, args.cutoff)
    rep.results.update({"module": M.label(), "kind": args.kind, "terms": r.term_names(), "complete": r.complete,
                        "length": r.length if r.complete else f">={args.cutoff}"})
    rep.add("certificate", r.verify(), {"complex": True, "exact": True, "minimal": True}, "TRIVIAL",
            "resolution axioms")


def cmd_ext(args, rep: Report):
    a = load(args)
    X, Y = module_arg(a, args.X), module_arg(a, args.Y)
    e = ext_dim(X, Y, args.degree)
    rep.results.update({"X": X.label(), "Y": Y.label(), "degree": args.degree, "dim": e})
    rep.add("injective_coresolution", ext_dim_injective(X, Y, args.degree), e, "DERIVED",
            "Ext from the injective coresolution of Y")


def cmd_gorenstein(args, rep: Report):
    a = load(args)
    g = gorenstein_report(a, args.cutoff)
    rep.results.update(g.as_dict())
    rep.results["global_dim"] = dim_str(global_dim(a, args.cutoff))
    if is_finite(g.dimension):
        rep.add("two_sided", max(g.inj_dim_projectives), max(g.proj_dim_injectives), "DERIVED",
                "id of projectives equals pd of injectives when both are finite")
    name = _fixture_name(args.algebra)
    if name in KNOWN_GORENSTEIN:
        rep.add("gorenstein_dimension", dim_str(g.dimension), str(KNOWN_GORENSTEIN[name]), "PAPER",
                f"published value for fixture {name}")


def cmd_cy3(args, rep: Report):
    a = load(args)
    rows = cy3_report(a, cutoff=args.cutoff)
    rep.results["pairs"] = [{"X": r.X, "Y": r.Y, "ext2_YX": r.lhs, "underline_ext1_XY": r.rhs,
                             "ext1_XY": r.naive_ext1, "exempt": r.exempt} for r in rows]
    rep.add("duality_failures", [(r.X, r.Y) for r in rows if not r.equal], [], "PAPER",
            "Ext^2(Y, X) dual to underline-Ext^1(X, Y) over Gorenstein dimension <= 1")
    rep.add("naive_failures_exempt", [(r.X, r.Y) for r in rows if not r.naive_equal and not r.exempt], [],
            "PAPER", "naive Ext^1/Ext^2 duality holds under CM hypotheses")


def cmd_stablecm(args, rep: Report):
    a = load(args)
    r = stable_cy_report(a, args.cy, cutoff=args.cutoff)
    rep.results.update({"gorenstein_dimension": dim_str(r.gorenstein_dimension), "selfinjective": r.selfinjective,
                        "cy": args.cy, "mismatches": [(c.X, c.Y, c.n, c.lhs, c.rhs) for c in r.checks if not c.equal]})
    rep.add("stable_cy_symmetry", r.passed, True, "DERIVED",
            f"dim CM(X, S^n Y) = dim CM(Y, S^(cy-n) X) for cy = {args.cy}")


def cmd_preproj(args, rep: Report):
    lam = preprojective_algebra(args.rank, _field(args), args.max_path_len)
    rep.results.update({"algebra": lam.name, "dim": lam.dim})
    rep.add("selfinjective", is_selfinjective(lam), True, "PAPER",
            "preprojective algebras of Dynkin type are selfinjective")
    if args.emit:
        rep.results["file"] = format_algebra(lam)


def cmd_relcy(args, rep: Report):
    lam = preprojective_algebra(args.rank, _field(args), args.max_path_len)
    r = relative_cy_report(lam, cutoff=args.cutoff)
    rep.results.update({"summands": r.summands, "endo_dim": r.endo_dim, "transcript": r.transcript})
    rep.add("global_dim", dim_str(r.global_dim), "3", "PAPER", "End(Lambda + maximal rigid) has global dimension 3")
    rep.add("duality_failures", [row for row in r.table if row[-1] != row[-2]], [], "PAPER",
            "dim Ext^i(X, Y) = dim Ext^(3-i)(Y, X), Y stable simple")


def cmd_cluster(args, rep: Report):
    C = cc.ClusterCategory(args.type, args.rank, args.d, _field(args))
    rep.results.update({"type": f"{C.kind}{C.rank}", "d": C.d, "domain": [str(X) for X in C.domain]})
    verb = args.verb
    if verb == "enumerate":
        sets = C.enumerate_cluster_tilting()
        rep.results["count"] = len(sets)
        rep.results["sets"] = [[str(X) for X in T] for T in sets]
        lifts = [C.lift(X) for X in C.domain]
        rep.add("serre_failures", sum(C.hom_dim(x, y) != C.hom_dim(y, C.D.shift(x, C.d))
                                      for x in lifts for y in lifts), 0, "PAPER", "orbit category is d-CY")
        if C.d == 2:
            closure, _ = C.mutation_closure()
            rep.add("closure_equals_enumeration", len(closure), len(sets), "DERIVED", "mutation closure from the seed")
    elif verb == "mutate":
        T = object_set(C, args.set)
        T2 = C.mutate(T, args.k)
        rep.results["mutated"] = [str(X) for X in T2]
        rep.add("involution", sorted(map(str, C.mutate(T2, args.k))), sorted(map(str, T)), "PAPER",
                "mutation at a summand is an involution")
    elif verb == "endo":
        T = object_set(C, args.set)
        ok, cert = C.is_cluster_tilting(T)
        pres = C.endo_presentation(T, name=f"End({','.join(map(str, T))})")
        A = pres.algebra
        rep.results.update({"set": [str(X) for X in T], "certificate": cert, "file": format_algebra(A),
                            "dim": A.dim, "no_loops": C.no_loops(T)})
        rep.add("cluster_tilting", ok, True, "TRIVIAL", "input is a cluster-tilting set")
        rep.add("arrows_and_relations_vs_ext", presentation_ext_mismatches(A, pres.arrow_counts, pres.relation_counts),
                [], "PAPER", "arrows count Ext^1 and minimal relations count Ext^2 between simples")
        if C.d == 2:
            g = gorenstein_report(A, args.cutoff).dimension
            rep.add("gorenstein_le_1", is_finite(g) and g <= 1, True, "PAPER",
                    "cluster-tilted algebras are Gorenstein of dimension at most 1")
            m = C.module_category_check(T)
            rep.add("module_count", m["knitted"], m["domain"] - m["cluster"], "PAPER",
                    "mod End(T) is C modulo add(tau T)")
    elif verb == "neighbors":
        T = object_set(C, args.set)
        r = C.neighbor_check(T, args.k)
        rep.results.update({"exchange": r["exchange"], "simples": r["simples"], "residual": r["residual"]})
        rep.add("neighbor_conditions", r["ok"], True, "PAPER",
                "necessary conditions for the equivalence of neighbouring module categories")
    elif verb == "resolve-in-C":
        T = object_set(C, args.set)
        objs = [C.canonical(C.lift(orbit_object(args.object)))] if args.object else C.domain
        rows = [C.triangular_resolution(T, Y) for Y in objs]
        rep.results["resolutions"] = [{k: r[k] for k in ("Y", "terms", "a", "b", "c")} for r in rows]
        rep.add("resolution_properties", [r["Y"] for r in rows if not (r["a"] and r["b"] and r["c"])], [],
                "PAPER", "triangular add(S)-resolutions with the homology properties")
    elif verb == "from-tilting":
        if args.tilting:
            T = [tuple(int(x) for x in part.split(":")) for part in args.tilting.split(",")]
        else:
            T = [C.D.label((0, v)) for v in range(C.rank)]
        r = C.tilting_to_dcluster(T)
        rep.results.update({"tilting": [f"M{m}[{s}]" for m, s in T], "projection": r["projection"],
                            "hom_formula": r["hom_formula"]})
        rep.add("cluster_tilting", r["cluster_tilting"], True, "PAPER", "projection of a tilting object")
        rep.add("hom_formula", r["hom_formula_ok"], True, "DERIVED", "both sides computed independently")


def cmd_suite(args, rep: Report):
    from .suite import Options, run_suite
    opts = Options(args.cutoff, args.max_path_len, _field(args))
    run_suite(rep, opts, only=args.only or None, log=lambda s: print(s, file=sys.stderr))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, default=20, help="homological degree cutoff")
    common.add_argument("--max-path-len", type=int, default=30, help="rewriting truncation length")
    common.add_argument("--json", metavar="PATH", help="write the machine report here")
    common.add_argument("--field", default=None, help="Q (default) or Fp:<prime>")

    p = argparse.ArgumentParser(prog="tiltlab", description="Exact checks for cluster-tilted algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def alg(name, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("algebra", help="algebra file or fixture name")
        return s

    alg("check", "parse an algebra and check its multiplication")
    s = alg("resolve", "minimal projective or injective resolution")
    s.add_argument("module", help="P<v>, I<v>, S<v> or a module file")
    s.add_argument("--kind", choices=("projective", "injective"), default="projective")
    s = alg("ext", "dimension of Ext^n(X, Y)")
    s.add_argument("X")
    s.add_argument("Y")
    s.add_argument("--degree", "-n", type=int, default=1)
    alg("gorenstein", "Gorenstein and global dimension")
    alg("cy3", "3-CY duality table over the simples")
    s = alg("stablecm", "stable CM Calabi-Yau symmetry")
    s.add_argument("--cy", type=int, default=3)
    s = sub.add_parser("preproj", parents=[common], help="preprojective algebra of type A")
    s.add_argument("--rank", type=int, default=2)
    s.add_argument("--emit", action="store_true", help="include the algebra file in the report")
    s = sub.add_parser("relcy", parents=[common], help="relative 3-CY duality for a preprojective algebra")
    s.add_argument("--rank", type=int, default=2)
    s = sub.add_parser("cluster", parents=[common], help="Dynkin d-cluster categories")
    s.add_argument("verb", choices=("enumerate", "mutate", "endo", "neighbors", "resolve-in-C", "from-tilting"))
    s.add_argument("--type", default="A")
    s.add_argument("--rank", type=int, default=3)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--set", help="comma-separated objects M<k>[s]; default the seed")
    s.add_argument("--k", type=int, default=0, help="summand position to mutate")
    s.add_argument("--object", help="object to resolve (default: whole fundamental domain)")
    s.add_argument("--tilting", help="comma-separated module:shift pairs in D")
    s = sub.add_parser("suite", parents=[common], help="run the full verification battery")
    s.add_argument("--only", nargs="*", help="criterion keys, e.g. 1 2 3+4")
    return p


COMMANDS = {"check": cmd_check, "resolve": cmd_resolve, "ext": cmd_ext, "gorenstein": cmd_gorenstein,
            "cy3": cmd_cy3, "stablecm": cmd_stablecm, "preproj": cmd_preproj, "relcy": cmd_relcy,
            "cluster": cmd_cluster, "suite": cmd_suite}


def run(argv: Optional[List[str]] = None):
    """Returns (exit code, report or None)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (0 if e.code == 0 else 2), None
    field_name = args.field or "Q"
    rep = Report(argv, default_environment(field_name, args.cutoff, args.max_path_len))
    try:
        COMMANDS[args.command](args, rep)
    except INTERNAL as e:
        print(f"tiltlab: internal invariant violated: {type(e).__name__}: {e}", file=sys.stderr)
        return 3, rep
    except REFUSED as e:
        print(f"tiltlab: {type(e).__name__}: {e}", file=sys.stderr)
        return 1, rep
    except (FormatError, FileNotFoundError, ValueError) as e:
        print(f"tiltlab: input error: {e}", file=sys.stderr)
        return 2, rep
    print(rep.human())
    if args.json:
        Path(args.json).write_text(rep.to_json(), encoding="utf-8")
    return (0 if rep.passed else 1), rep


def main(argv: Optional[List[str]] = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
