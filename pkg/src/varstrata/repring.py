"""Representation-ring arithmetic, with explicit sl2 modules.

A :class:`RepClass` is a finitely supported multiplicity vector over
irreducible types.  For sl2 the type ``k`` is the highest weight of
``S^k(C^2)`` (dimension ``k + 1``).  Other algebras can be used through a
:class:`TypeTable` carrying type dimensions; fusion (tensor products,
symmetric squares) is built in for sl2 only.

Ladder normalization on ``S^k`` with basis ``v_0..v_k`` (``v_0`` highest)::

    h v_j = (k - 2j) v_j,   f v_j = (j + 1) v_{j+1},   e v_j = (k - j + 1) v_{j-1}

All entries are integers and ``[e, f] = h`` holds exactly.
"""

from collections import Counter
from dataclasses import dataclass
from math import comb

from .errors import PreconditionError, ShapeError
from .linalg import QQ, Echelon, Matrix, block_diagonal, rank


@dataclass(frozen=True)
class TypeTable:
    name: str
    dims: tuple = ()  # ((key, dim), ...) for user tables; empty means sl2
    trivial: object = 0

    def dim(self, key):
        if self.name == "sl2":
            return int(key) + 1
        for k, d in self.dims:
            if k == key:
                return d
        raise KeyError(f"type {key!r} not in table {self.name}")


SL2 = TypeTable("sl2")


class RepClass:
    """Element of the representation ring; zero multiplicities are dropped."""

    __slots__ = ("table", "_mult")

    def __init__(self, mult=None, table=SL2):
        mult = dict(mult or {})
        if table is SL2 or table.name == "sl2":
            clean = {}
            for k, m in mult.items():
                k = int(k)
                if k < 0:
                    raise ValueError(f"negative highest weight {k}")
                clean[k] = clean.get(k, 0) + int(m)
            mult = clean
        self.table = table
        self._mult = tuple(sorted((k, m) for k, m in mult.items() if m))

    @classmethod
    def irreducible(cls, k, mult=1, table=SL2):
        return cls({k: mult}, table)

    @property
    def mult(self):
        return dict(self._mult)

    def __getitem__(self, key):
        return self.mult.get(key, 0)

    def support(self):
        return tuple(k for k, _ in self._mult)

    def items(self):
        return self._mult

    def is_effective(self):
        return all(m >= 0 for _, m in self._mult)

    def _check_table(self, other):
        if self.table != other.table:
            raise ShapeError("classes over different type tables")

    def __add__(self, other):
        self._check_table(other)
        out = Counter(self.mult)
        out.update(other.mult)
        return RepClass(out, self.table)

    def __sub__(self, other):
        self._check_table(other)
        out = Counter(self.mult)
        out.subtract(other.mult)
        return RepClass(out, self.table)

    def __rmul__(self, c):
        return RepClass({k: c * m for k, m in self._mult}, self.table)

    def __eq__(self, other):
        return isinstance(other, RepClass) and self._mult == other._mult and self.table == other.table

    def __hash__(self):
        return hash((self._mult, self.table))

    def __bool__(self):
        return bool(self._mult)

    def __repr__(self):
        if not self._mult:
            return "RepClass(0)"
        body = " + ".join(f"{m}*S^{k}" if m != 1 else f"S^{k}" for k, m in self._mult)
        return f"RepClass({body})"

    def to_json(self):
        return {"algebra": self.table.name, "mult": {str(k): m for k, m in self._mult}}

    @classmethod
    def from_json(cls, obj):
        if obj.get("algebra", "sl2") != "sl2":
            raise ValueError("only sl2 classes can be loaded without a type table")
        return cls({int(k): int(m) for k, m in obj.get("mult", {}).items()})


def _require_effective(*classes):
    for c in classes:
        if not c.is_effective():
            raise PreconditionError("class is effective", repr(c))


def class_leq(a, b):
    keys = set(a.support()) | set(b.support())
    return all(a[k] <= b[k] for k in keys)


def class_min(a, b):
    keys = set(a.support()) | set(b.support())
    return RepClass({k: min(a[k], b[k]) for k in keys}, a.table)


def class_dim(a):
    _require_effective(a)
    return sum(m * a.table.dim(k) for k, m in a.items())


def _require_sl2(*classes):
    for c in classes:
        if c.table.name != "sl2":
            raise ShapeError(f"no fusion data for type table {c.table.name!r}")


# -- sl2 fusion ----------------------------------------------------------------

def _cg(a, b):
    return range(abs(a - b), a + b + 1, 2)


def tensor_sl2(a, b):
    """Clebsch-Gordan, extended bilinearly."""
    _require_sl2(a, b)
    _require_effective(a, b)
    out = Counter()
    for ka, ma in a.items():
        for kb, mb in b.items():
            for k in _cg(ka, kb):
                out[k] += ma * mb
    return RepClass(out)


def _sym_square_irrep(r):
    return RepClass({2 * r - 4 * m: 1 for m in range(r // 2 + 1)})


def sym_square_sl2(a):
    """Symmetric square, via ``S^2(A + B) = S^2 A + S^2 B + A (x) B``."""
    _require_sl2(a)
    _require_effective(a)
    out = RepClass()
    items = list(a.items())
    for idx, (k, m) in enumerate(items):
        irr = RepClass.irreducible(k)
        out = out + m * _sym_square_irrep(k) + comb(m, 2) * tensor_sl2(irr, irr)
        for k2, m2 in items[idx + 1:]:
            out = out + (m * m2) * tensor_sl2(irr, RepClass.irreducible(k2))
    return out


def character(a):
    """Weight multiset of an effective sl2 class as a Counter."""
    _require_sl2(a)
    _require_effective(a)
    out = Counter()
    for k, m in a.items():
        for j in range(k + 1):
            out[k - 2 * j] += m
    return out


def decompose_by_weights(weights):
    """The unique effective sl2 class with the given weight multiset (peel highest weights)."""
    w = Counter(weights)
    w = Counter({k: m for k, m in w.items() if m})
    if any(m < 0 for m in w.values()):
        raise ValueError("negative weight multiplicity")
    for k, m in w.items():
        if w.get(-k, 0) != m:
            raise ValueError(f"weight multiset not symmetric at {k}")
    out = Counter()
    while w:
        top = max(w)
        if top < 0:
            raise ValueError("not an sl2 character")
        m = w[top]
        out[top] += m
        for j in range(top + 1):
            wt = top - 2 * j
            w[wt] -= m
            if w[wt] < 0:
                raise ValueError("weight multiset is not realizable by a module")
            if w[wt] == 0:
                del w[wt]
    return RepClass(out)


def tensor_weights(a, b):
    ca, cb = character(a), character(b)
    out = Counter()
    for x, mx in ca.items():
        for y, my in cb.items():
            out[x + y] += mx * my
    return out


def sym_square_weights(a):
    """Weights of the monomials ``u_i u_j`` (i <= j) in a weight basis of ``a``."""
    ws = sorted(character(a).elements())
    out = Counter()
    for i in range(len(ws)):
        for j in range(i, len(ws)):
            out[ws[i] + ws[j]] += 1
    return out


# -- explicit modules ------------------------------------------------------

@dataclass(frozen=True)
class ExplicitModule:
    """A concrete sl2 module: generator matrices and the block layout.

    ``blocks`` lists ``(k, start)`` for each irreducible copy, in order.
    """

    dim: int
    gens: tuple  # ((name, Matrix), ...) with names "e", "f", "h"
    blocks: tuple
    field: object = QQ

    def gen(self, name):
        return dict(self.gens)[name]

    def generators(self):
        return [m for _, m in self.gens]

    def weights(self):
        h = self.gen("h")
        return [h[i, i] for i in range(self.dim)]

    def over(self, field):
        return ExplicitModule(self.dim, tuple((n, m.over(field)) for n, m in self.gens),
                              self.blocks, field)

    def rep_class(self):
        return RepClass(Counter(k for k, _ in self.blocks))


def irrep_matrices_sl2(k, field=QQ):
    n = k + 1
    e = [[0] * n for _ in range(n)]
    f = [[0] * n for _ in range(n)]
    h = [[0] * n for _ in range(n)]
    for j in range(n):
        h[j][j] = k - 2 * j
        if j + 1 < n:
            f[j + 1][j] = j + 1
        if j >= 1:
            e[j - 1][j] = k - j + 1
    gens = (("e", Matrix(e, field, ncols=n)), ("f", Matrix(f, field, ncols=n)),
            ("h", Matrix(h, field, ncols=n)))
    return ExplicitModule(n, gens, ((k, 0),), field)


def module_from_class(a, field=QQ):
    """Block-diagonal module: copies ordered by highest weight, then copy index."""
    _require_sl2(a)
    _require_effective(a)
    irreps, blocks, start = [], [], 0
    for k, m in a.items():
        for _ in range(m):
            irreps.append(irrep_matrices_sl2(k, field))
            blocks.append((k, start))
            start += k + 1
    gens = tuple((name, block_diagonal([M.gen(name) for M in irreps], field) if irreps
                  else Matrix.zeros(0, 0, field)) for name in ("e", "f", "h"))
    return ExplicitModule(start, gens, tuple(blocks), field)


def bracket_identities_hold(M):
    e, f, h = M.gen("e"), M.gen("f"), M.gen("h")
    return (h @ e - e @ h == e * 2) and (h @ f - f @ h == f * -2) and (e @ f - f @ e == h)


def _closure(M, vectors):
    ech = Echelon(M.field)
    basis = []
    frontier = []
    for v in vectors:
        v = tuple(M.field.reduce(x) for x in v)
        if ech.add(dict((i, x) for i, x in enumerate(v) if x)):
            basis.append(v)
            frontier.append(v)
    gens = M.generators()
    while frontier:
        nxt = []
        for v in frontier:
            col = Matrix.column_vector(v, M.field)
            for g in gens:
                w = (g @ col).column(0)
                if ech.add(dict((i, x) for i, x in enumerate(w) if x)):
                    basis.append(w)
                    nxt.append(w)
        frontier = nxt
    return basis


def submodule_generated(M, vectors):
    """Span of ``vectors`` closed under the generators, and its class.

    The class is read off the weight character: ``h`` is diagonal, so the
    dimension of each weight space of the submodule is the rank of its
    projection onto the coordinates of that weight.
    Modules must be over QQ here (weights are read as integers).
    """
    if M.field is not QQ:
        raise ShapeError("weight decomposition needs a module over QQ")
    basis = _closure(M, vectors)
    B = Matrix.from_columns(basis, M.dim, M.field) if basis else Matrix.zeros(M.dim, 0, M.field)
    weights = M.weights()
    char = Counter()
    for wt in set(weights):
        rows = [i for i, x in enumerate(weights) if x == wt]
        r = rank(B.submatrix(rows=rows))
        if r:
            char[int(wt)] += r
    return B, decompose_by_weights(char)
