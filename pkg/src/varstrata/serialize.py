"""JSON schemas for complexes, chain maps, witnesses, classes and DGLA data.

Matrices are lists of rows of rational literals ("p/q" or "p").  Loading
raises :class:`ParseError` for malformed documents and lets validation
errors from the structure constructors through unchanged.
"""

import json

from .complexes import validate_chain_map, validate_complex
from .dgla import DGLAStructure
from .errors import ParseError
from .linalg import QQ, Matrix, field_from_name, format_rational, parse_rational
from .repring import RepClass


def dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


def load_path(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from None


def _fmt(field, x):
    return format_rational(x) if field is QQ else str(int(x))


def matrix_to_json(M):
    return [[_fmt(M.field, x) for x in row] for row in M.rows()]


def _scalar(x):
    if isinstance(x, bool):
        raise ParseError(f"boolean {x!r} is not a rational literal")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    raise ParseError(f"{x!r} is not a rational literal; use \"p/q\" strings or integers")


def matrix_from_json(rows, field, shape):
    nrows, ncols = shape
    if not isinstance(rows, list) or len(rows) != nrows:
        raise ParseError(f"expected {nrows} rows, got {rows!r:.60}")
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != ncols:
            raise ParseError(f"expected rows of length {ncols}, got {row!r:.60}")
        out.append([_scalar(x) for x in row])
    return Matrix(out, field, ncols=ncols)


def _dims(obj):
    dims = obj.get("dims")
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and d >= 0 for d in dims):
        raise ParseError("'dims' must be a non-empty list of non-negative integers")
    return tuple(dims)


def _field(obj):
    try:
        return field_from_name(obj.get("field", "QQ"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# -- complexes and chain maps -------------------------------------------------

def complex_to_json(C):
    return {"dims": list(C.dims), "diffs": [matrix_to_json(C.d(i)) for i in range(C.n)],
            "field": repr(C.field)}


def complex_from_json(obj):
    if not isinstance(obj, dict):
        raise ParseError("a complex is a JSON object")
    dims = _dims(obj)
    field = _field(obj)
    diffs = obj.get("diffs", [])
    if not isinstance(diffs, list) or len(diffs) != len(dims) - 1:
        raise ParseError(f"'diffs' must list {len(dims) - 1} matrices")
    mats = [matrix_from_json(m, field, (dims[i + 1], dims[i])) for i, m in enumerate(diffs)]
    return validate_complex(dims, mats, field)


def chain_map_to_json(f):
    return {"source": complex_to_json(f.source), "target": complex_to_json(f.target),
            "comps": [matrix_to_json(m) for m in f.comps]}


def chain_map_from_json(obj):
    for key in ("source", "target", "comps"):
        if key not in obj:
            raise ParseError(f"chain map is missing {key!r}")
    V, W = complex_from_json(obj["source"]), complex_from_json(obj["target"])
    comps = obj["comps"]
    if not isinstance(comps, list) or len(comps) != len(V.dims) or len(V.dims) != len(W.dims):
        raise ParseError("'comps' must hold one matrix per degree")
    mats = [matrix_from_json(m, V.field, (W.dims[i], V.dims[i])) for i, m in enumerate(comps)]
    return validate_chain_map(V, W, mats)


def subcomplex_to_json(witness):
    return {"ambient": complex_to_json(witness.ambient),
            "bases": [{"cols": b.ncols, "rows": matrix_to_json(b)} for b in witness.bases]}


# -- representation classes and DGLA data -----------------------------------

def class_from_text(text):
    """``"0:1,2:3"`` -> 1*S^0 + 3*S^2; the empty string is the zero class."""
    mult = {}
    text = text.strip()
    if not text:
        return RepClass()
    for part in text.split(","):
        try:
            k, m = part.split(":")
            mult[int(k)] = mult.get(int(k), 0) + int(m)
        except ValueError:
            raise ParseError(f"bad class term {part!r}; expected 'weight:multiplicity'") from None
    try:
        return RepClass(mult)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def dgla_to_json(e):
    n0, n1, n2 = e.dims
    return {
        "e0": {"bracket": [[[_fmt(QQ, x) for x in v] for v in row] for row in e.bracket]},
        "e1": {"rho": [matrix_to_json(m) for m in e.rho1]},
        "e2": {"rho": [matrix_to_json(m) for m in e.rho2]},
        "d0": matrix_to_json(e.d0),
        "d1": matrix_to_json(e.d1),
        "f": [matrix_to_json(F) for F in e.f],
    }


def dgla_from_json(obj):
    try:
        bracket = obj["e0"]["bracket"]
        rho1, rho2 = obj["e1"]["rho"], obj["e2"]["rho"]
        n0 = len(bracket)
        n1 = len(rho1[0]) if rho1 else 0
        n2 = len(rho2[0]) if rho2 else 0
        br = tuple(tuple(tuple(_scalar(x) for x in v) for v in row) for row in bracket)
        for row in br:
            if len(row) != n0 or any(len(v) != n0 for v in row):
                raise ParseError("bracket constants must be dim0 x dim0 x dim0")
        e = DGLAStructure(
            bracket=tuple(tuple(tuple(QQ.reduce(x) for x in v) for v in row) for row in br),
            rho1=tuple(matrix_from_json(m, QQ, (n1, n1)) for m in rho1),
            rho2=tuple(matrix_from_json(m, QQ, (n2, n2)) for m in rho2),
            d0=matrix_from_json(obj["d0"], QQ, (n1, n0)),
            d1=matrix_from_json(obj["d1"], QQ, (n2, n1)),
            f=tuple(matrix_from_json(F, QQ, (n1, n1)) for F in obj["f"]),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed DGLA document: {exc!r}") from None
    e.check_shapes()
    return e


def detect_kind(obj):
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    if "comps" in obj:
        return "chain-map"
    if "e0" in obj:
        return "dgla"
    if "bases" in obj:
        return "subcomplex"
    if "dims" in obj:
        return "complex"
    raise ParseError("cannot tell the document kind (expected 'dims', 'comps', 'bases' or 'e0')")


def subcomplex_from_json(obj):
    W = complex_from_json(obj["ambient"])
    bases = obj.get("bases")
    if not isinstance(bases, list) or len(bases) != len(W.dims):
        raise ParseError("'bases' must hold one matrix per degree")
    mats = []
    for i, b in enumerate(bases):
        mats.append(matrix_from_json(b.get("rows"), W.field, (W.dims[i], int(b.get("cols", 0)))))
    return W, tuple(mats)


def vector_from_text(text):
    text = text.strip()
    try:
        out = tuple(int(x) for x in text.split(",")) if text else ()
    except ValueError:
        raise ParseError(f"bad vector {text!r}; expected comma-separated integers") from None
    if not out or any(x < 0 for x in out):
        raise ParseError(f"bad vector {text!r}; entries must be non-negative")
    return out


def parse_json_text(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON ({exc})") from None
