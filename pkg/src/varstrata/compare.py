"""Closed forms against oracles, as machine-readable records.

Each record carries the stratum parameters, the closed-form value, whatever
oracle values were computed (orbit, solver, census) and a verdict.  Formulas
checked in CI are tagged ``"verified"``; the ``paper_*`` values are tagged
``"claimed"`` and only reported.  A disagreement is data, not an error.
"""

import platform
import random
from importlib.metadata import PackageNotFoundError, version
from itertools import product

from . import census, serialize
from .complexes import (homology_profile, hom0_dimension_oracle, paper_hom0_dimension,
                        split_hom0_dimension, validate_chain_map, validate_complex)
from .dgla import (adjoint_module, dgla0_dim, dgla_stratum_dim, derivation_g_rank,
                   e1_stratum_dim, fiber_dim_oracle)
from .errors import PreconditionError, ResourceError
from .grading import box_points
from .gstrata import (build_g_map_witness, class_box, g_grassmannian_dim, g_stratum_dim,
                      g_stratum_nonempty, hom_g_dim, intertwiner_dim_oracle, orbit_dim_g_grassmannian,
                      orbit_dim_g_map, submodule_basis)
from .linalg import QQ, Matrix, inverse, random_invertible
from .oracles import orbit_dim_chain_map, orbit_dim_differential, orbit_dim_subcomplex
from .repring import RepClass, class_leq, module_from_class
from .strata import (StratumSpec, build_chain_map_witness, build_differential_witness,
                     build_subcomplex_witness, complex_with_profile, complexes_nonempty,
                     dim_complexes_stratum, dim_exact_stratum, exact_rank_vector,
                     map_stratum_nonempty, paper_dim_map_stratum, paper_dim_quasi_iso,
                     paper_dim_subcomplex, rank_vector_of, stratum_homology, subcomplex_nonempty)

SUITES = ("complexes", "subcomplex", "chain-map", "quasi-iso", "g", "dgla")
VERDICTS = ("verified-match", "claimed-match", "claimed-mismatch", "oracle-unavailable")

# small boxes: every dimension entry <= MAX_ENTRY, top degree < MAX_LEN
MAX_ENTRY = 2
MAX_LEN = 3


def _jsonable(x):
    if isinstance(x, RepClass):
        return x.to_json()
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(y) for k, y in x.items()}
    return x


def _verdict(cls, paper, oracles):
    ran = [v for v in oracles.values() if v is not None]
    if not ran:
        return "oracle-unavailable"
    if all(v == paper for v in ran):
        return "verified-match" if cls == "verified" else "claimed-match"
    return "claimed-mismatch"


def make_record(claim, cls, instance, paper, oracles, witness=None, derived=None):
    """One comparison record; a mismatch always embeds the witness instance."""
    verdict = _verdict(cls, paper, oracles)
    rec = {"claim": claim, "class": cls, "instance": _jsonable(instance),
           "paper": _jsonable(paper), "oracles": _jsonable(oracles), "verdict": verdict}
    if derived is not None:
        rec["derived"] = _jsonable(derived)
    if witness is not None and verdict == "claimed-mismatch":
        rec["witness"] = witness
    return rec


# -- instance boxes -------------------------------------------------------------

def dim_vectors(max_len=MAX_LEN, max_entry=MAX_ENTRY):
    for n in range(1, max_len + 1):
        yield from product(range(max_entry + 1), repeat=n)


def profiles(max_len=MAX_LEN, max_entry=MAX_ENTRY):
    """All (v, h) that are dimension and homology vectors of some complex."""
    for v in dim_vectors(max_len, max_entry):
        for h in box_points(v):
            try:
                rank_vector_of(v, h)
            except PreconditionError:
                continue
            yield v, tuple(h)


def example_c1():
    return validate_complex((2, 2), [Matrix([[0, 1], [0, 0]], QQ, ncols=2)], QQ)


# -- suites -------------------------------------------------------------------------

def suite_complexes(seed):
    rng = random.Random(seed)
    out = []
    for v in dim_vectors():
        upper = tuple(v[i + 1] if i + 1 < len(v) else 0 for i in range(len(v)))
        for r in box_points(upper):
            r = tuple(r)
            if not complexes_nonempty(v, r):
                continue
            C = build_differential_witness(v, r)
            phis = [random_invertible(d, rng) for d in v]
            conj = validate_complex(v, [phis[i + 1] @ C.d(i) @ inverse(phis[i]) for i in range(C.n)])
            inst = {"v": v, "r": r}
            out.append(make_record("differential-stratum-dim", "verified", inst,
                                   dim_complexes_stratum(v, r),
                                   {"orbit": orbit_dim_differential(C),
                                    "orbit_conjugated": orbit_dim_differential(conj)},
                                   witness=serialize.complex_to_json(C)))
            out.append(make_record("differential-stratum-homology", "verified", inst,
                                   stratum_homology(v, r), {"solver": homology_profile(C).h},
                                   witness=serialize.complex_to_json(C)))
        e = exact_rank_vector(v)
        inst = {"v": v}
        if e is None:
            # empty locus: the census at q = 2 must find no exact complex
            res = census.exhaustive_census(2, StratumSpec.make("exact", v=v))
            out.append(make_record("exact-locus-dim", "verified", inst, "empty",
                                   {"census_q2": "empty" if res.count == 0 else res.count}))
        else:
            C = build_differential_witness(v, e)
            out.append(make_record("exact-locus-dim", "verified", inst, dim_exact_stratum(v),
                                   {"orbit": orbit_dim_differential(C)},
                                   witness=serialize.complex_to_json(C)))
    return out


# censuses in reports stay below this many ambient points per field
REPORT_CENSUS_CAP = 2 ** 16


def census_degree(spec, ambient_dim):
    """``(oracles, estimates)`` entries for a census over the fields under the report cap.

    Only an interpolated (exact) degree counts as an oracle value; a
    single-field exponent is reported as an estimate and never decides a verdict.
    """
    qs = [q for q in census.SUPPORTED_PRIMES if q ** ambient_dim <= REPORT_CENSUS_CAP]
    try:
        est = census.dimension_by_census(spec, qs) if qs else None
    except ResourceError:
        est = None
    if est is None:
        return {"census_degree": None}, {}
    if est.approximate:
        return {"census_degree": None}, {"census_estimate": est.as_dict()}
    return {"census_degree": est.dim}, {}


def _subcomplex_record(W, w, h, r, s):
    L = build_subcomplex_witness(W, r, s)
    spec = StratumSpec.make("subcomplex", w=w, h=h, r=r, s=s)
    ambient = sum(r[i] * (w[i] - r[i]) for i in range(len(w)))
    oracles, estimates = census_degree(spec, ambient)
    return make_record("subcomplex-stratum-dim", "claimed", {"w": w, "h": h, "r": r, "s": s},
                       paper_dim_subcomplex(w, h, r, s),
                       {"orbit": orbit_dim_subcomplex(W, L), **oracles},
                       witness=serialize.subcomplex_to_json(L), derived=estimates or None)


def pinned_subcomplex():
    return _subcomplex_record(example_c1(), (2, 2), (1, 1), (1, 1), (0, 0))


def suite_subcomplex(seed):
    out = [pinned_subcomplex()]
    for w, h in profiles(max_len=2):
        W = complex_with_profile(w, h)
        for r in box_points(w):
            for s in box_points(h):
                r, s = tuple(r), tuple(s)
                try:
                    ok = subcomplex_nonempty(w, h, r, s)
                except PreconditionError:
                    continue
                if not ok:
                    continue
                out.append(_subcomplex_record(W, w, h, r, s))
    return out


def _rkd(C):
    return C.rank_vector()


def pinned_hom0():
    C = example_c1()
    h = homology_profile(C)
    return make_record("hom0-dim", "claimed", {"source": "C1", "target": "C1", "h": h.h,
                                                "rkd": _rkd(C)},
                       paper_hom0_dimension(h.h, _rkd(C), h.h, _rkd(C)),
                       {"solver": hom0_dimension_oracle(C, C)},
                       witness=serialize.complex_to_json(C),
                       derived=split_hom0_dimension(h.h, h.b, h.h, h.b))


def pinned_map_identity():
    C = example_c1()
    f = build_chain_map_witness(C, C, (2, 2), (1, 1))
    inst = {"v": (2, 2), "h_v": (1, 1), "w": (2, 2), "h_w": (1, 1), "r": (2, 2), "s": (1, 1)}
    return make_record("chain-map-stratum-dim", "claimed", inst,
                       paper_dim_map_stratum((2, 2), (1, 1), (2, 2), (1, 1), (2, 2), (1, 1)),
                       {"orbit": orbit_dim_chain_map(f)},
                       witness=serialize.chain_map_to_json(f))


def pinned_map_nonempty():
    """Predicate false, yet a chain map with these profiles exists."""
    V = validate_complex((0, 1), [Matrix.zeros(1, 0, QQ)])
    W = validate_complex((1, 1), [Matrix([[1]], QQ, ncols=1)])
    f = validate_chain_map(V, W, [Matrix.zeros(1, 0, QQ), Matrix([[1]], QQ, ncols=1)])
    inst = {"v": (0, 1), "h_v": (0, 1), "w": (1, 1), "h_w": (0, 0), "r": (0, 1), "s": (0, 0)}
    spec = StratumSpec.make("chain-map", **inst)
    count = census.exhaustive_census(2, spec).count
    return make_record("chain-map-stratum-nonempty", "claimed", inst,
                       map_stratum_nonempty(*(inst[k] for k in ("v", "h_v", "w", "h_w", "r", "s"))),
                       {"census_q2": count > 0}, witness=serialize.chain_map_to_json(f))


def suite_chain_map(seed):
    out = [pinned_hom0(), pinned_map_identity(), pinned_map_nonempty()]
    profs = list(profiles(max_len=2))
    complexes = {p: complex_with_profile(*p) for p in profs}
    for (v, hv), (w, hw) in product(profs, repeat=2):
        if len(v) != len(w):
            continue
        V, W = complexes[v, hv], complexes[w, hw]
        pv, pw = homology_profile(V), homology_profile(W)
        out.append(make_record("hom0-dim", "claimed",
                               {"v": v, "h_v": hv, "w": w, "h_w": hw},
                               paper_hom0_dimension(hv, _rkd(V), hw, _rkd(W)),
                               {"solver": hom0_dimension_oracle(V, W)},
                               derived=split_hom0_dimension(hv, pv.b, hw, pw.b)))
        for r in box_points(tuple(min(a, b) for a, b in zip(v, w))):
            for s in box_points(tuple(min(a, b) for a, b in zip(hv, hw))):
                r, s = tuple(r), tuple(s)
                try:
                    ok = map_stratum_nonempty(v, hv, w, hw, r, s)
                except PreconditionError:
                    continue
                if not ok:
                    continue
                f = build_chain_map_witness(V, W, r, s)
                out.append(make_record("chain-map-stratum-dim", "claimed",
                                       {"v": v, "h_v": hv, "w": w, "h_w": hw, "r": r, "s": s},
                                       paper_dim_map_stratum(v, hv, w, hw, r, s),
                                       {"orbit": orbit_dim_chain_map(f)},
                                       witness=serialize.chain_map_to_json(f)))
    return out


def suite_quasi_iso(seed):
    out = []
    for v, h in profiles(max_len=2):
        V = complex_with_profile(v, h)
        f = build_chain_map_witness(V, V, v, h)
        spec = StratumSpec.make("quasi-iso", v=v, w=v, h=h)
        oracles, estimates = census_degree(spec, hom0_dimension_oracle(V, V))
        out.append(make_record("quasi-iso-dim", "claimed", {"v": v, "w": v, "h": h},
                               paper_dim_quasi_iso(v, h),
                               {"orbit": orbit_dim_chain_map(f), **oracles},
                               witness=serialize.chain_map_to_json(f),
                               derived=estimates or None))
    return out


G_BOX = dict(types=range(3), max_mult=2, max_types=2)


def suite_g(seed):
    out = []
    box = class_box(**G_BOX)
    modules = {c: module_from_class(c) for c in box}
    for n, m in product(box, repeat=2):
        A, B = modules[n], modules[m]
        out.append(make_record("hom-g-dim", "verified", {"n": n, "m": m}, hom_g_dim(n, m),
                               {"solver": intertwiner_dim_oracle(A, B)}))
        for s in box:
            if not g_stratum_nonempty(n, m, s):
                continue
            A, B, X = build_g_map_witness(n, m, s)
            out.append(make_record("g-stratum-dim", "verified", {"n": n, "m": m, "s": s},
                                   g_stratum_dim(n, m, s), {"orbit": orbit_dim_g_map(A, B, X)}))
    for n in box:
        for s in box:
            if class_leq(s, n):
                M = modules[n]
                out.append(make_record("g-grassmannian-dim", "verified", {"n": n, "s": s},
                                       g_grassmannian_dim(n, s),
                                       {"orbit": orbit_dim_g_grassmannian(M, submodule_basis(M, s))}))
    return out


def dgla0_box():
    """Zero plus single-type classes m*S^a with a <= 4, m <= 2."""
    return [RepClass()] + [RepClass({a: m}) for a in range(5) for m in (1, 2)]


def suite_dgla(seed):
    out = []
    box = dgla0_box()
    for n1, n2 in product(box, repeat=2):
        out.append(make_record("dgla0-dim", "verified", {"e1": n1, "e2": n2}, dgla0_dim(n1, n2),
                               {"solver": fiber_dim_oracle(module_from_class(n1),
                                                           module_from_class(n2))}))
    # derivation-rank strata of E^1 against the census
    for n in box:
        for v in box:
            if not v or not class_leq(v, n):
                continue
            closed = e1_stratum_dim(n, v)
            try:
                est = census.e1_dimension_by_census(n, v).dim
            except ResourceError:
                est = None
            out.append(make_record("e1-stratum-dim", "verified", {"e1": n, "v": v},
                                   "empty" if closed is None else closed,
                                   {"census_degree": est}))
    # the adjoint worked example: formula path vs fiber oracle plus census
    n1, n2, v = RepClass({2: 1}), RepClass({2: 1}), RepClass({2: 1})
    M1, M2 = adjoint_module(), module_from_class(n2)
    y = (0, 0, 1)
    fiber = fiber_dim_oracle(M1, M2, y)
    e1 = census.e1_dimension_by_census(n1, v).dim
    out.append(make_record("dgla-stratum-dim", "claimed", {"e1": n1, "e2": n2, "v": v, "y": y},
                           dgla_stratum_dim(n1, n2, v),
                           {"fiber_plus_census": fiber + e1},
                           derived={"fiber": fiber, "e1_census_degree": e1,
                                    "derivation_rank": derivation_g_rank(M1, y)}))
    return out


RUNNERS = {"complexes": suite_complexes, "subcomplex": suite_subcomplex,
           "chain-map": suite_chain_map, "quasi-iso": suite_quasi_iso, "g": suite_g,
           "dgla": suite_dgla}


def _versions():
    import numpy
    try:
        own = version("varstrata")
    except PackageNotFoundError:
        own = "unknown"
    return {"varstrata": own, "numpy": numpy.__version__,
            "python": ".".join(platform.python_version_tuple()[:2])}


def run_suite(name, seed=0):
    names = SUITES if name == "all" else (name,)
    if any(n not in RUNNERS for n in names):
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    records = []
    for n in names:
        for rec in RUNNERS[n](seed):
            rec["suite"] = n
            records.append(rec)
    return {"suite": name, "seed": seed, "versions": _versions(), "records": records}


def summarize(report):
    counts = {v: 0 for v in VERDICTS}
    for rec in report["records"]:
        counts[rec["verdict"]] += 1
    return counts
