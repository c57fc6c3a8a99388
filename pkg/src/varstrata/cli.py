"""Command-line front end.

Exit codes: 0 success (including reported mismatches), 1 invalid input or
violated precondition, 2 unparsable input.
"""

import argparse
import json
import sys

from . import census, compare, serialize
from .complexes import homology_profile, rank_profiles
from .dgla import check_axioms, dgla0_dim, dgla_stratum_dim, e1_stratum_dim, fiber_dim_oracle
from .errors import ParseError, PreconditionError, ResourceError, ValidationError, VarstrataError
from .gstrata import (aut_g_dim, build_g_map_witness, g_grassmannian_dim, g_stratum_dim,
                      g_stratum_nonempty, hom_g_dim, orbit_dim_g_grassmannian, orbit_dim_g_map,
                      intertwiner_dim_oracle, submodule_basis)
from .oracles import orbit_dim_chain_map, orbit_dim_differential, orbit_dim_subcomplex
from .repring import class_leq, module_from_class
from .strata import (StratumSpec, build_chain_map_witness, build_differential_witness,
                     build_subcomplex_witness, complex_with_profile, complexes_components,
                     complexes_nonempty, dim_complexes_stratum, dim_exact_stratum,
                     exact_rank_vector, map_stratum_nonempty, paper_dim_map_stratum,
                     paper_dim_quasi_iso, paper_dim_subcomplex, quasi_iso_components,
                     quasi_iso_nonempty, subcomplex_nonempty, validate_subcomplex)

VECTOR_FLAGS = ("v", "w", "h", "r", "s", "h_v", "h_w")
CLASS_FLAGS = ("n", "m", "e1", "e2", "cls")

COMPLEX_KINDS = ("complexes", "exact", "subcomplex", "chain-map", "quasi-iso")
G_KINDS = ("g-map", "g-grassmannian", "hom-g", "aut-g", "e1", "dgla", "dgla0")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise ParseError(f"--kind {args.kind} needs {flags}")
    return [getattr(args, n) for n in names]


def _emit(value, oracles=None):
    if oracles is None:
        print(json.dumps(compare._jsonable(value)))
    else:
        print(json.dumps(compare._jsonable({"value": value, "oracles": oracles})))


# -- check ----------------------------------------------------------------------

def cmd_check(args):
    obj = serialize.load_path(args.path)
    kind = serialize.detect_kind(obj)
    if kind == "complex":
        C = serialize.complex_from_json(obj)
        prof = homology_profile(C)
        report = {"kind": kind, "valid": True, "dims": C.dims, "ranks": C.rank_vector(),
                  "homology": prof.h}
    elif kind == "chain-map":
        f = serialize.chain_map_from_json(obj)
        rk, hrk = rank_profiles(f)
        report = {"kind": kind, "valid": True, "rk": rk, "hrk": hrk}
    elif kind == "subcomplex":
        W, bases = serialize.subcomplex_from_json(obj)
        r, s = validate_subcomplex(W, bases)
        report = {"kind": kind, "valid": True, "r": r, "s": s}
    else:
        e = serialize.dgla_from_json(obj)
        axioms = check_axioms(e)
        if not axioms.ok:
            names = ", ".join(res.name for res in axioms.failures())
            raise ValidationError(f"DGLA axioms fail: {names}")
        report = {"kind": kind, "valid": True, "dims": e.dims}
    print(json.dumps(compare._jsonable(report)))
    return 0


# -- dim / nonempty ------------------------------------------------------------------

def _dim_value(args):
    k = args.kind
    if k == "complexes":
        v, r = _need(args, "v", "r")
        if not args.oracle:
            return dim_complexes_stratum(v, r), None
        C = build_differential_witness(v, r)
        spec = StratumSpec.make("differential", v=v, r=r)
        oracles, est = compare.census_degree(spec, sum(a * b for a, b in zip(v, v[1:])))
        return dim_complexes_stratum(v, r), {"orbit": orbit_dim_differential(C), **oracles, **est}
    if k == "exact":
        (v,) = _need(args, "v")
        d = dim_exact_stratum(v)
        if d is None:
            return "empty", None
        if not args.oracle:
            return d, None
        return d, {"orbit": orbit_dim_differential(build_differential_witness(v, exact_rank_vector(v)))}
    if k == "subcomplex":
        w, h, r, s = _need(args, "w", "h", "r", "s")
        val = paper_dim_subcomplex(w, h, r, s)
        if not args.oracle:
            return val, None
        W = complex_with_profile(w, h)
        L = build_subcomplex_witness(W, r, s)
        spec = StratumSpec.make("subcomplex", w=w, h=h, r=r, s=s)
        oracles, est = compare.census_degree(spec, sum(a * (b - a) for a, b in zip(r, w)))
        return val, {"orbit": orbit_dim_subcomplex(W, L), **oracles, **est}
    if k == "chain-map":
        v, hv, w, hw, r, s = _need(args, "v", "h_v", "w", "h_w", "r", "s")
        val = paper_dim_map_stratum(v, hv, w, hw, r, s)
        if not args.oracle:
            return val, None
        f = build_chain_map_witness(complex_with_profile(v, hv), complex_with_profile(w, hw), r, s)
        return val, {"orbit": orbit_dim_chain_map(f)}
    if k == "quasi-iso":
        v, h = _need(args, "v", "h")
        val = paper_dim_quasi_iso(v, h)
        if not args.oracle:
            return val, None
        V = complex_with_profile(v, h)
        return val, {"orbit": orbit_dim_chain_map(build_chain_map_witness(V, V, v, h))}
    if k == "g-map":
        n, m, s = _need(args, "n", "m", "cls")
        val = g_stratum_dim(n, m, s)
        return val, {"orbit": orbit_dim_g_map(*build_g_map_witness(n, m, s))} if args.oracle else None
    if k == "g-grassmannian":
        n, s = _need(args, "n", "cls")
        val = g_grassmannian_dim(n, s)
        if not args.oracle:
            return val, None
        M = module_from_class(n)
        return val, {"orbit": orbit_dim_g_grassmannian(M, submodule_basis(M, s))}
    if k == "hom-g":
        n, m = _need(args, "n", "m")
        val = hom_g_dim(n, m)
        if not args.oracle:
            return val, None
        return val, {"solver": intertwiner_dim_oracle(module_from_class(n), module_from_class(m))}
    if k == "aut-g":
        (n,) = _need(args, "n")
        return aut_g_dim(n), None
    if k == "e1":
        n, v = _need(args, "e1", "cls")
        val = e1_stratum_dim(n, v)
        val = "empty" if val is None else val
        if not args.oracle:
            return val, None
        try:
            est = census.e1_dimension_by_census(n, v).as_dict()
        except ResourceError as exc:
            est = {"unavailable": str(exc)}
        return val, {"census": est}
    if k == "dgla":
        n1, n2, v = _need(args, "e1", "e2", "cls")
        return dgla_stratum_dim(n1, n2, v), None
    if k == "dgla0":
        n1, n2 = _need(args, "e1", "e2")
        val = dgla0_dim(n1, n2)
        if not args.oracle:
            return val, None
        return val, {"solver": fiber_dim_oracle(module_from_class(n1), module_from_class(n2))}
    raise ParseError(f"unknown kind {k!r}")


def cmd_dim(args):
    val, oracles = _dim_value(args)
    _emit(val, oracles)
    return 0


def cmd_nonempty(args):
    k = args.kind
    if k == "complexes":
        v, r = _need(args, "v", "r")
        val = complexes_nonempty(v, r)
    elif k == "exact":
        (v,) = _need(args, "v")
        val = exact_rank_vector(v) is not None
    elif k == "subcomplex":
        w, h, r, s = _need(args, "w", "h", "r", "s")
        val = subcomplex_nonempty(w, h, r, s)
    elif k == "chain-map":
        v, hv, w, hw, r, s = _need(args, "v", "h_v", "w", "h_w", "r", "s")
        val = map_stratum_nonempty(v, hv, w, hw, r, s)
    elif k == "quasi-iso":
        v, w, h = _need(args, "v", "w", "h")
        val = quasi_iso_nonempty(v, w, h)
    elif k == "g-map":
        n, m, s = _need(args, "n", "m", "cls")
        val = g_stratum_nonempty(n, m, s)
    elif k == "g-grassmannian":
        n, s = _need(args, "n", "cls")
        val = class_leq(s, n)
    elif k == "e1":
        n, v = _need(args, "e1", "cls")
        val = e1_stratum_dim(n, v) is not None
    else:
        raise ParseError(f"nonempty does not support --kind {k}")
    oracles = None
    if args.oracle and k in ("complexes", "exact", "subcomplex", "chain-map", "quasi-iso"):
        spec = _census_spec(args)
        oracles = {"census_q2_count": census.exhaustive_census(2, spec).count}
    _emit(val, oracles)
    return 0


def _census_spec(args):
    k = args.kind
    if k == "complexes":
        return StratumSpec.make("differential", v=args.v, r=args.r)
    if k == "exact":
        return StratumSpec.make("exact", v=args.v)
    if k == "subcomplex":
        return StratumSpec.make("subcomplex", w=args.w, h=args.h, r=args.r, s=args.s)
    if k == "chain-map":
        return StratumSpec.make("chain-map", v=args.v, h_v=args.h_v, w=args.w, h_w=args.h_w,
                                r=args.r, s=args.s)
    return StratumSpec.make("quasi-iso", v=args.v, w=args.w, h=args.h)


# -- witness ---------------------------------------------------------------------------

def _witness_doc(args):
    k = args.kind
    if k == "complexes":
        v, r = _need(args, "v", "r")
        return serialize.complex_to_json(build_differential_witness(v, r))
    if k == "exact":
        (v,) = _need(args, "v")
        e = exact_rank_vector(v)
        if e is None:
            raise PreconditionError("exact locus nonempty", f"v={v}")
        return serialize.complex_to_json(build_differential_witness(v, e))
    if k == "subcomplex":
        w, h, r, s = _need(args, "w", "h", "r", "s")
        W = complex_with_profile(w, h)
        return serialize.subcomplex_to_json(build_subcomplex_witness(W, r, s))
    if k == "chain-map":
        v, hv, w, hw, r, s = _need(args, "v", "h_v", "w", "h_w", "r", "s")
        f = build_chain_map_witness(complex_with_profile(v, hv), complex_with_profile(w, hw), r, s)
        return serialize.chain_map_to_json(f)
    if k == "quasi-iso":
        v, h = _need(args, "v", "h")
        V = complex_with_profile(v, h)
        return serialize.chain_map_to_json(build_chain_map_witness(V, V, v, h))
    raise ParseError(f"witness does not support --kind {k}")


def cmd_witness(args):
    text = serialize.dumps(_witness_doc(args))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- components and compare ---------------------------------------------------------

def cmd_components(args):
    if args.kind == "complexes":
        (v,) = _need(args, "v")
        comps = complexes_components(v)
    elif args.kind == "quasi-iso":
        v, w, h = _need(args, "v", "w", "h")
        comps = quasi_iso_components(v, w, h)
    else:
        raise ParseError("components supports --kind complexes or quasi-iso")
    print(json.dumps([list(c) for c in sorted(comps)]))
    return 0


def cmd_compare(args):
    report = compare.run_suite(args.suite, seed=args.seed)
    text = serialize.dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        counts = compare.summarize(report)
        print(json.dumps({"suite": args.suite, "records": len(report["records"]), **counts}))
    else:
        sys.stdout.write(text)
    return 0


# -- argument parsing ---------------------------------------------------------------------

def _spec_flags(p, kinds):
    p.add_argument("--kind", required=True, choices=kinds)
    for name in VECTOR_FLAGS:
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=_vector, default=None,
                       help="comma-separated, degree-ascending")
    for name in CLASS_FLAGS:
        p.add_argument("--" + name, dest=name, type=_class, default=None,
                       help="sl2 class as weight:multiplicity pairs, e.g. 0:1,2:3")
    p.add_argument("--oracle", action="store_true", help="add oracle values")


def _vector(text):
    try:
        return serialize.vector_from_text(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _class(text):
    try:
        return serialize.class_from_text(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    parser = argparse.ArgumentParser(prog="varstrata", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a complex, chain map, subcomplex or DGLA file")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    for name, func, kinds in (("dim", cmd_dim, COMPLEX_KINDS + G_KINDS),
                              ("nonempty", cmd_nonempty, COMPLEX_KINDS + ("g-map", "g-grassmannian", "e1")),
                              ("witness", cmd_witness, COMPLEX_KINDS)):
        p = sub.add_parser(name)
        _spec_flags(p, kinds)
        if name == "witness":
            p.add_argument("--out", default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("components", help="maximal rank vectors")
    _spec_flags(p, ("complexes", "quasi-iso"))
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("compare", help="closed forms against oracles")
    p.add_argument("--suite", required=True, choices=compare.SUITES + ("all",))
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return 2
    except (ValidationError, PreconditionError, VarstrataError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
