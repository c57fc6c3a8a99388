"""Exact linear algebra over the rationals and the prime fields GF(2), GF(3), GF(5), GF(7).

No floating point anywhere.  Rational matrices are eliminated fraction-free
(integer rows, content removed after every step); prime-field rows are kept
monic.  Pivoting always takes the leftmost nonzero column of the current row,
so every basis returned here is reproducible bit for bit.
"""

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ParseError, RankError, ShapeError

SUPPORTED_PRIMES = (2, 3, 5, 7)


# -- scalars ---------------------------------------------------------------

def parse_rational(text):
    """Parse ``"p/q"`` or ``"p"``; ``q`` must be positive."""
    if isinstance(text, bool):
        raise ParseError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return text
    if not isinstance(text, str):
        raise ParseError(f"not a rational literal: {text!r}")
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            num, den = int(num), int(den)
            if den <= 0:
                raise ParseError(f"denominator must be positive in {text!r}")
            val = Fraction(num, den)
        else:
            val = Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational literal {text!r}") from exc
    return val.numerator if val.denominator == 1 else val


def format_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Rationals:
    name = "QQ"
    characteristic = 0

    def reduce(self, x):
        if type(x) is int:
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return parse_rational(x)
        if isinstance(x, bool):
            return int(x)
        try:
            return self.reduce(Fraction(x)) if not isinstance(x, float) else _reject_float(x)
        except TypeError:
            raise TypeError(f"cannot coerce {x!r} into QQ") from None

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.reduce(Fraction(1) / Fraction(x))

    def format(self, x):
        return format_rational(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    characteristic = None

    def __init__(self, p):
        if p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported prime {p}; use one of {SUPPORTED_PRIMES}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def reduce(self, x):
        p = self.p
        if type(x) is int:
            return x % p
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"{x} has no image in {self.name}")
            return x.numerator * pow(den, -1, p) % p
        if isinstance(x, float):
            _reject_float(x)
        return int(x) % p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def format(self, x):
        return str(x)

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def _reject_float(x):
    raise TypeError(f"floating point value {x!r} refused; use exact rationals")


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_from_name(name):
    if name in (None, "QQ", "Q"):
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        return GF(int(name[3:-1]))
    raise ParseError(f"unknown field {name!r}")


# -- matrices --------------------------------------------------------------

class Matrix:
    """Immutable dense matrix over QQ or GF(p)."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, rows, field=QQ, ncols=None):
        red = field.reduce
        data = tuple(tuple(red(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ShapeError("column count required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ShapeError(f"ragged rows: expected {ncols} columns, got {len(r)}")
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = object.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m._rows = rows
        return m

    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        return cls._raw(field, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n, field=QQ):
        return cls._raw(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns, nrows, field=QQ):
        columns = [tuple(field.reduce(x) for x in c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise ShapeError(f"column of length {len(c)} in a {nrows}-row matrix")
        rows = tuple(tuple(c[i] for c in columns) for i in range(nrows))
        return cls._raw(field, rows, len(columns))

    @classmethod
    def column_vector(cls, values, field=QQ):
        return cls([[x] for x in values], field, ncols=1)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        return tuple(r[j] for r in self._rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def rows(self):
        return list(self._rows)

    def tolist(self):
        return [list(r) for r in self._rows]

    @property
    def T(self):
        return Matrix._raw(self.field, tuple(zip(*self._rows)) if self.nrows else
                           tuple(() for _ in range(self.ncols)), self.nrows)

    def _check_field(self, other):
        if self.field != other.field:
            raise ShapeError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        red = self.field.reduce
        orows = other._rows
        m = other.ncols
        out = []
        for r in self._rows:
            acc = [0] * m
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(m):
                        b = ok[j]
                        if b:
                            acc[j] += a * b
            out.append(tuple(red(x) for x in acc))
        return Matrix._raw(self.field, tuple(out), m)

    def _zip(self, other, op):
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        red = self.field.reduce
        rows = tuple(tuple(red(op(a, b)) for a, b in zip(r, s))
                     for r, s in zip(self._rows, other._rows))
        return Matrix._raw(self.field, rows, self.ncols)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        red = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(red(-a) for a in r) for r in self._rows), self.ncols)

    def scale(self, c):
        red = self.field.reduce
        c = red(c)
        return Matrix._raw(self.field, tuple(tuple(red(c * a) for a in r) for r in self._rows), self.ncols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.shape == other.shape and self._rows == other._rows)

    def __hash__(self):
        return hash((self.field, self.shape, self._rows))

    def is_zero(self):
        return not any(any(r) for r in self._rows)

    def first_nonzero(self):
        """``(i, j, value)`` of the first nonzero entry in row-major order, or None."""
        for i, r in enumerate(self._rows):
            for j, a in enumerate(r):
                if a:
                    return i, j, a
        return None

    def over(self, field):
        return Matrix(self._rows, field, ncols=self.ncols)

    def submatrix(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        return Matrix._raw(self.field, tuple(tuple(self._rows[i][j] for j in cols) for i in rows),
                           len(cols))

    def select_columns(self, cols):
        return self.submatrix(None, cols)

    def entries(self):
        return [a for r in self._rows for a in r]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(a) for a in r) for r in self._rows)
        return f"Matrix<{self.field}>({self.nrows}x{self.ncols}: [{body}])"


def hstack(*mats, nrows=None, field=None):
    mats = [m for m in mats]
    if not mats:
        if nrows is None:
            raise ShapeError("hstack of nothing needs nrows")
        return Matrix.zeros(nrows, 0, field or QQ)
    n = mats[0].nrows
    for m in mats:
        if m.nrows != n:
            raise ShapeError("hstack row mismatch")
    rows = tuple(sum((m._rows[i] for m in mats), ()) for i in range(n))
    return Matrix._raw(mats[0].field, rows, sum(m.ncols for m in mats))


def vstack(*mats):
    n = mats[0].ncols
    for m in mats:
        if m.ncols != n:
            raise ShapeError("vstack column mismatch")
    return Matrix._raw(mats[0].field, sum((m._rows for m in mats), ()), n)


def block_diagonal(blocks, field=QQ):
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    rows = []
    col = 0
    for b in blocks:
        for r in b._rows:
            rows.append((0,) * col + r + (0,) * (nc - col - b.ncols))
        col += b.ncols
    return Matrix._raw(field, tuple(rows), nc) if nr else Matrix.zeros(0, nc, field)


# -- elimination -----------------------------------------------------------

def _primitive(row):
    """Divide an integer row by its content and make the leading entry positive."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {k: v // g for k, v in row.items()}
    return row


def _integer_row(row):
    dens = 1
    for v in row.values():
        if type(v) is not int:
            d = v.denominator
            dens = dens * d // gcd(dens, d)
    if dens == 1:
        return dict(row)
    return {k: int(v * dens) for k, v in row.items()}


class Echelon:
    """Incremental row echelon form; ``add`` reports whether the row was independent.

    Each stored row is keyed by its pivot, the smallest column it touches.
    """

    def __init__(self, field=QQ):
        self.field = field
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row):
        row = {k: v for k, v in row.items() if v}
        if self.field.characteristic == 0:
            return self._reduce_qq(_primitive(_integer_row(row)) if row else row)
        return self._reduce_fp(row)

    def _reduce_qq(self, row):
        pivots = self.pivots
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                return row
            a, b = row[c], prow[c]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            new = {k: v * ma for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - v * mb
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return row

    def _reduce_fp(self, row):
        p = self.field.p
        pivots = self.pivots
        row = {k: v % p for k, v in row.items() if v % p}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(row[c], -1, p)
                return {k: v * inv % p for k, v in row.items()}
            a = row[c]
            new = dict(row)
            for k, v in prow.items():
                nv = (new.get(k, 0) - a * v) % p
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = new
        return row

    def add(self, row):
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def reduced_rows(self):
        """Reduced row echelon form as ``[(pivot, row)]`` with monic rows, pivots ascending."""
        field = self.field
        done = {}
        for c in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[c])
            if field.characteristic == 0:
                for c2 in sorted(k for k in row if k in done and k != c):
                    coef = Fraction(row[c2])
                    if not coef:
                        continue
                    for k, v in done[c2].items():
                        nv = row.get(k, 0) - coef * v
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
                lead = Fraction(row[c])
                row = {k: field.reduce(Fraction(v) / lead) for k, v in row.items()}
            else:
                p = field.p
                for c2 in sorted(k for k in row if k in done and k != c):
                    coef = row.get(c2, 0)
                    if not coef:
                        continue
                    for k, v in done[c2].items():
                        nv = (row.get(k, 0) - coef * v) % p
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
            done[c] = row
        return sorted(done.items())


def _row_dicts(M):
    return [{j: a for j, a in enumerate(r) if a} for r in M._rows]


def echelon_of(M):
    ech = Echelon(M.field)
    for r in _row_dicts(M):
        ech.add(r)
    return ech


def rank(M):
    return len(echelon_of(M))


def rref(M):
    """``(R, pivots)``: the reduced row echelon form and its pivot columns."""
    rows = echelon_of(M).reduced_rows()
    pivots = [c for c, _ in rows]
    data = [tuple(r.get(j, 0) for j in range(M.ncols)) for _, r in rows]
    return Matrix._raw(M.field, tuple(data), M.ncols), pivots


def _kernel_from_reduced(reduced, ncols, field):
    pivots = {c for c, _ in reduced}
    cols = []
    for j in range(ncols):
        if j in pivots:
            continue
        v = [0] * ncols
        v[j] = 1
        for c, r in reduced:
            a = r.get(j)
            if a:
                v[c] = field.reduce(-a)
        cols.append(v)
    return cols


def kernel_basis(M):
    """Columns spanning ker M, one per free column of the reduced echelon form."""
    reduced = echelon_of(M).reduced_rows()
    return Matrix.from_columns(_kernel_from_reduced(reduced, M.ncols, M.field), M.ncols, M.field)


def nullity(M):
    return M.ncols - rank(M)


def image_basis(M):
    """The columns of M sitting at the pivot columns of its echelon form."""
    pivots = sorted(echelon_of(M).pivots)
    return M.select_columns(pivots)


def complement_basis(sub, ambient_dim):
    """Extend the columns of ``sub`` greedily by standard basis vectors in index order."""
    field = sub.field
    if sub.nrows != ambient_dim:
        raise ShapeError(f"subspace lives in dimension {sub.nrows}, not {ambient_dim}")
    ech = Echelon(field)
    for j, col in enumerate(sub.columns()):
        if not ech.add({i: a for i, a in enumerate(col) if a}):
            raise RankError(f"input column {j} depends on the previous ones")
    extra = []
    for i in range(ambient_dim):
        if ech.add({i: 1}):
            extra.append(i)
    return Matrix.from_columns([[int(k == i) for k in range(ambient_dim)] for i in extra],
                               ambient_dim, field)


def extend_within(base, candidates):
    """Columns of ``candidates`` (in order) that extend the span of ``base`` independently."""
    field = base.field
    ech = Echelon(field)
    for col in base.columns():
        ech.add({i: a for i, a in enumerate(col) if a})
    keep = []
    for col in candidates.columns():
        if ech.add({i: a for i, a in enumerate(col) if a}):
            keep.append(col)
    return Matrix.from_columns(keep, base.nrows, field)


def solve(A, B):
    """X with A X = B, for A of full column rank.  Raises RankError if B leaves the span."""
    if A.nrows != B.nrows:
        raise ShapeError(f"cannot solve {A.shape} X = {B.shape}")
    aug = hstack(A, B)
    reduced = echelon_of(aug).reduced_rows()
    pivots = [c for c, _ in reduced]
    if A.ncols and pivots[:A.ncols] != list(range(A.ncols)):
        raise RankError("coefficient matrix does not have independent columns")
    if any(c >= A.ncols for c in pivots):
        raise RankError("right-hand side is not in the column span")
    rows = []
    for c, r in reduced[:A.ncols]:
        rows.append(tuple(r.get(A.ncols + j, 0) for j in range(B.ncols)))
    return Matrix._raw(A.field, tuple(rows), B.ncols)


def inverse(M):
    if M.nrows != M.ncols:
        raise ShapeError("inverse of a non-square matrix")
    if rank(M) != M.nrows:
        raise RankError("matrix is singular")
    return solve(M, Matrix.identity(M.nrows, M.field))


def in_span(basis, vectors):
    return rank(hstack(basis, vectors)) == rank(basis)


# -- homogeneous systems ---------------------------------------------------

class LinearSystem:
    """Homogeneous linear system in named matrix-shaped unknown blocks.

    Scalar equations are lists of ``(coefficient, block, (i, j))`` terms;
    :meth:`add_product` expands a matrix equation ``sum L X R = 0``.
    Unknowns are flattened block by block in declaration order, row-major.
    """

    def __init__(self, field=QQ):
        self.field = field
        self.blocks = {}
        self.nunknowns = 0
        self.equations = []

    def unknown(self, name, nrows, ncols):
        if name in self.blocks:
            raise ShapeError(f"duplicate unknown block {name!r}")
        self.blocks[name] = (nrows, ncols, self.nunknowns)
        self.nunknowns += nrows * ncols
        return name

    def index(self, name, i, j):
        nrows, ncols, off = self.blocks[name]
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise ShapeError(f"position {(i, j)} outside block {name!r} of shape {(nrows, ncols)}")
        return off + i * ncols + j

    def add_equation(self, terms):
        row = {}
        red = self.field.reduce
        for coeff, name, (i, j) in terms:
            if name not in self.blocks:
                raise ShapeError(f"unknown block {name!r}")
            k = self.index(name, i, j)
            row[k] = row.get(k, 0) + red(coeff)
        row = {k: red(v) for k, v in row.items() if red(v)}
        if row:
            self.equations.append(row)

    def add_product(self, terms):
        """Add the entrywise equations of ``sum_k L_k X_k R_k = 0``.

        Each term is ``(L, name, R)``; ``None`` for L or R means identity, and
        a scalar may be folded into L.
        """
        out_shape = None
        expanded = {}
        for left, name, right in terms:
            nrows, ncols, _ = self.blocks[name]
            lrows = nrows if left is None else left.nrows
            rcols = ncols if right is None else right.ncols
            if left is not None and left.ncols != nrows:
                raise ShapeError(f"left factor {left.shape} incompatible with block {name!r} {(nrows, ncols)}")
            if right is not None and right.nrows != ncols:
                raise ShapeError(f"right factor {right.shape} incompatible with block {name!r} {(nrows, ncols)}")
            if out_shape is None:
                out_shape = (lrows, rcols)
            elif out_shape != (lrows, rcols):
                raise ShapeError(f"inconsistent term shapes {out_shape} vs {(lrows, rcols)}")
            lnz = ([[(p, 1)] for p in range(nrows)] if left is None else
                   [[(i, a) for i, a in enumerate(left.row(p)) if a] for p in range(lrows)])
            rnz = ([[(q, 1)] for q in range(ncols)] if right is None else
                   [[(j, b) for j, b in enumerate(right.column(q)) if b] for q in range(rcols)])
            for p in range(lrows):
                for q in range(rcols):
                    bucket = expanded.setdefault((p, q), [])
                    for i, a in lnz[p]:
                        for j, b in rnz[q]:
                            bucket.append((a * b, name, (i, j)))
        if out_shape is None:
            return
        for p in range(out_shape[0]):
            for q in range(out_shape[1]):
                terms_pq = expanded.get((p, q))
                if terms_pq:
                    self.add_equation(terms_pq)

    def constraint_rank(self):
        ech = Echelon(self.field)
        for eq in self.equations:
            ech.add(eq)
        return len(ech)

    def solution_dimension(self):
        return self.nunknowns - self.constraint_rank()

    def solution_basis(self):
        ech = Echelon(self.field)
        for eq in self.equations:
            ech.add(eq)
        cols = _kernel_from_reduced(ech.reduced_rows(), self.nunknowns, self.field)
        return Matrix.from_columns(cols, self.nunknowns, self.field)

    def unpack(self, vector):
        """Split a flat solution vector into one Matrix per block."""
        out = {}
        for name, (nrows, ncols, off) in self.blocks.items():
            vals = vector[off:off + nrows * ncols]
            rows = [vals[i * ncols:(i + 1) * ncols] for i in range(nrows)]
            out[name] = Matrix(rows, self.field, ncols=ncols)
        return out


def solve_homogeneous(system):
    """Basis (as columns) of the solution space of a :class:`LinearSystem`."""
    return system.solution_basis()


# -- sampling --------------------------------------------------------------

def random_matrix_of_rank(nrows, ncols, r, seed, field=QQ, spread=2):
    """Seeded matrix of exact rank ``r``: a product of full-rank small-integer factors."""
    if not 0 <= r <= min(nrows, ncols):
        raise RankError(f"rank {r} impossible for a {nrows}x{ncols} matrix")
    rng = random.Random(seed)
    if r == 0:
        return Matrix.zeros(nrows, ncols, field)
    while True:
        left = Matrix([[rng.randint(-spread, spread) for _ in range(r)] for _ in range(nrows)], field)
        right = Matrix([[rng.randint(-spread, spread) for _ in range(ncols)] for _ in range(r)], field)
        if rank(left) == r and rank(right) == r:
            return left @ right


def random_invertible(n, rng, field=QQ, spread=2):
    if n == 0:
        return Matrix.zeros(0, 0, field)
    while True:
        M = Matrix([[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)], field)
        if rank(M) == n:
            return M
