"""Exhaustive point counts over GF(q) and dimension estimates from them.

Candidates are enumerated in row-major little-endian order over field
elements and processed in numpy batches; every count is exact.  The
fixed complexes a stratum lives over are the 0/1 witnesses with the
requested profile, so they make sense over any prime field.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .complexes import hom0_system
from .errors import InterpolationError, ResourceError
from .grading import at, dimvec
from .linalg import GF, SUPPORTED_PRIMES, Echelon, Matrix, hstack, image_basis, kernel_basis, rank
from .repring import RepClass, class_dim, module_from_class
from .strata import complex_with_profile

CENSUS_CAP = 2 ** 24
BATCH = 1 << 15
WITNESS_CAP = 8


@dataclass(frozen=True)
class CensusResult:
    q: int
    ambient: int
    count: int
    ambient_dim: int
    witnesses: tuple = dc_field(default=(), compare=False)

    def as_dict(self):
        return {"q": self.q, "ambient": self.ambient, "count": self.count,
                "ambient_dim": self.ambient_dim}


@dataclass(frozen=True)
class CensusDimension:
    dim: object  # int, or None when every sample count is zero
    approximate: bool
    samples: tuple

    def as_dict(self):
        return {"dim_estimate": self.dim, "approximate": self.approximate,
                "samples": [list(s) for s in self.samples], "assumption": "polynomial-count"}


# -- batched arithmetic mod p -------------------------------------------------

def batched_rank(A, p):
    """Ranks of a stack of matrices ``A[N, m, k]`` over GF(p)."""
    A = np.array(A, dtype=np.int64) % p
    if A.shape[2] > A.shape[1]:
        A = A.transpose(0, 2, 1)  # loop over the shorter side
    N, m, k = A.shape
    ranks = np.zeros(N, dtype=np.int64)
    if m == 0 or k == 0:
        return ranks
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    idx = np.arange(N)
    for c in range(k):
        col = A[:, :, c]
        nz = col != 0
        has = nz.any(axis=1)
        if not has.any():
            continue
        piv = nz.argmax(axis=1)
        prow = A[idx, piv] * inv[col[idx, piv]][:, None] % p
        # the pivot row eliminates itself, so it drops out of later columns
        A = (A - col[:, :, None] * prow[:, None, :]) % p
        ranks += has
    return ranks


def _tally(R, table):
    """Add the row counts of the integer array ``R`` into ``table`` (tuple keys)."""
    if R.shape[1] == 0:
        table[()] = table.get((), 0) + len(R)
        return
    base = int(R.max()) + 1 if len(R) else 1
    codes = np.zeros(len(R), dtype=np.int64)
    for j in range(R.shape[1]):
        codes = codes * base + R[:, j]
    counts = np.bincount(codes)
    for code in np.nonzero(counts)[0]:
        key, c = [], int(code)
        for _ in range(R.shape[1]):
            key.append(c % base)
            c //= base
        key = tuple(reversed(key))
        table[key] = table.get(key, 0) + int(counts[code])


def _coefficients(q, dim, start, stop):
    """Rows ``start..stop-1`` of the little-endian enumeration of GF(q)^dim."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, dim), dtype=np.int64)
    for j in range(dim):
        out[:, j] = idx % q
        idx //= q
    return out


def _check_cap(q, dim):
    if q ** dim > CENSUS_CAP:
        raise ResourceError(f"census of {q}^{dim} points exceeds cap {CENSUS_CAP}")


def _np(M):
    return np.array(M.tolist(), dtype=np.int64).reshape(M.nrows, M.ncols)


# -- differentials ------------------------------------------------------------

@lru_cache(maxsize=None)
def _differential_table(v, q):
    """Counts of complexes on ``v`` over GF(q) keyed by rank vector, plus a few witnesses."""
    shapes = [(at(v, i + 1), v[i]) for i in range(len(v) - 1)]
    sizes = [a * b for a, b in shapes]
    N = sum(sizes)
    _check_cap(q, N)
    total = q ** N
    table, witnesses = {}, {}
    for start in range(0, total, BATCH):
        X = _coefficients(q, N, start, min(total, start + BATCH))
        mats, off = [], 0
        for (a, b), s in zip(shapes, sizes):
            mats.append(X[:, off:off + s].reshape(len(X), a, b))
            off += s
        ok = np.ones(len(X), dtype=bool)
        for i in range(len(mats) - 1):
            sq = np.einsum("nab,nbc->nac", mats[i + 1], mats[i]) % q
            ok &= ~sq.reshape(len(X), -1).any(axis=1)
        ranks = [batched_rank(m, q) for m in mats]
        R = np.stack(ranks + [np.zeros(len(X), dtype=np.int64)], axis=1)[ok]
        _tally(R, table)
        if len(witnesses) < 64:
            for row, xrow in zip(R, X[ok]):
                key = tuple(int(x) for x in row)
                lst = witnesses.setdefault(key, [])
                if len(lst) < WITNESS_CAP:
                    lst.append(tuple(int(x) for x in xrow))
    return total, N, table, {k: tuple(w) for k, w in witnesses.items()}


def _differential_census(q, v, predicate):
    total, N, table, wit = _differential_table(v, q)
    keys = [k for k in table if predicate(k)]
    count = sum(table[k] for k in keys)
    witnesses = tuple(w for k in sorted(keys) for w in wit.get(k, ()))[:WITNESS_CAP]
    return CensusResult(q, total, count, N, witnesses)


def _homology_from_ranks(v, r):
    return tuple(v[i] - r[i] - at(r, i - 1) for i in range(len(v)))


# -- chain maps ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _complex_over(v, h, q):
    return complex_with_profile(v, h, GF(q))


@lru_cache(maxsize=None)
def _chain_map_table(v, h_v, w, h_w, q):
    """Counts of chain maps between the fixed complexes keyed by ``(rk, hrk)``."""
    V, W = _complex_over(v, h_v, q), _complex_over(w, h_w, q)
    system = hom0_system(V, W)
    basis = _np(system.solution_basis())  # unknowns x dim
    dim = basis.shape[1]
    _check_cap(q, dim)
    blocks = [system.blocks[i] for i in range(V.n + 1)]
    Z = [_np(kernel_basis(V.d(i))) for i in range(V.n + 1)]
    B = [_np(image_basis(W.d(i - 1))) for i in range(V.n + 1)]
    total = q ** dim
    table, witnesses = {}, {}
    for start in range(0, total, BATCH):
        X = _coefficients(q, dim, start, min(total, start + BATCH))
        F = X @ basis.T % q
        rk, hrk = [], []
        for i, (nr, nc, off) in enumerate(blocks):
            Fi = F[:, off:off + nr * nc].reshape(len(X), nr, nc)
            rk.append(batched_rank(Fi, q))
            FZ = np.einsum("nab,bc->nac", Fi, Z[i]) % q
            aug = np.concatenate([FZ, np.broadcast_to(B[i], (len(X),) + B[i].shape)], axis=2)
            hrk.append(batched_rank(aug, q) - B[i].shape[1])
        R = np.stack(rk + hrk, axis=1)
        _tally(R, table)
        for row, frow in zip(R, F):
            key = tuple(int(x) for x in row)
            lst = witnesses.setdefault(key, [])
            if len(lst) < WITNESS_CAP:
                lst.append(tuple(int(x) for x in frow))
    n1 = V.n + 1
    split = {(k[:n1], k[n1:]): c for k, c in table.items()}
    wsplit = {(k[:n1], k[n1:]): tuple(ws) for k, ws in witnesses.items()}
    return total, dim, split, wsplit


def _chain_map_census(q, v, h_v, w, h_w, predicate):
    total, dim, table, wit = _chain_map_table(v, h_v, w, h_w, q)
    keys = sorted(k for k in table if predicate(*k))
    count = sum(table[k] for k in keys)
    witnesses = tuple(x for k in keys for x in wit.get(k, ()))[:WITNESS_CAP]
    return CensusResult(q, total, count, dim, witnesses)


# -- subcomplexes -------------------------------------------------------------

def grassmannian_points(n, r, q):
    """All r-dimensional subspaces of GF(q)^n as n x r column-echelon matrices."""
    F = GF(q)
    out = []
    for pivots in combinations(range(n), r):
        free = [(row, j) for j, pv in enumerate(pivots) for row in range(pv + 1, n)
                if row not in pivots]
        for vals in product(range(q), repeat=len(free)):
            cols = [[0] * n for _ in range(r)]
            for j, pv in enumerate(pivots):
                cols[j][pv] = 1
            for (row, j), x in zip(free, vals):
                cols[j][row] = x
            out.append(Matrix.from_columns(cols, n, F))
    return out


def grassmannian_count(n, r, q):
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def _subcomplex_table(w, h, r, q):
    W = _complex_over(w, h, q)
    sizes = [grassmannian_count(w[i], r[i], q) for i in range(len(w))]
    total = 1
    for s in sizes:
        total *= s
    if total > CENSUS_CAP:
        raise ResourceError(f"census of {total} subspace tuples exceeds cap {CENSUS_CAP}")
    grs = [grassmannian_points(w[i], r[i], q) for i in range(len(w))]
    table, witnesses = {}, {}
    for L in product(*grs):
        images = [W.d(i) @ L[i] for i in range(len(w))]
        if any(rank(hstack(L[i + 1], images[i])) != r[i + 1] for i in range(len(w) - 1)):
            continue
        dr = [rank(m) for m in images]
        s = tuple(r[i] - dr[i] - (dr[i - 1] if i else 0) for i in range(len(w)))
        table[s] = table.get(s, 0) + 1
        lst = witnesses.setdefault(s, [])
        if len(lst) < WITNESS_CAP:
            lst.append(tuple(tuple(m.entries()) for m in L))
    ambient_dim = sum(r[i] * (w[i] - r[i]) for i in range(len(w)))
    return total, ambient_dim, table, witnesses


# -- dispatch -----------------------------------------------------------------

def exhaustive_census(q, spec):
    """Exact point count of a stratum over GF(q)."""
    kind = spec.kind
    if kind == "differential":
        v, r = dimvec(spec["v"]), tuple(spec["r"])
        r = tuple(at(r, i) for i in range(len(v)))
        return _differential_census(q, v, lambda k: k == r)
    if kind == "exact":
        v = dimvec(spec["v"])
        return _differential_census(q, v, lambda k: not any(_homology_from_ranks(v, k)))
    if kind == "chain-map":
        args = tuple(dimvec(spec[k]) if k in ("v", "w") else tuple(spec[k])
                     for k in ("v", "h_v", "w", "h_w"))
        r, s = tuple(spec["r"]), tuple(spec["s"])
        return _chain_map_census(q, *args, lambda rk, hrk: rk == r and hrk == s)
    if kind == "quasi-iso":
        v, w, h = dimvec(spec["v"]), dimvec(spec["w"]), tuple(spec["h"])
        return _chain_map_census(q, v, h, w, h, lambda rk, hrk: hrk == h)
    if kind == "subcomplex":
        w, h, r, s = (tuple(spec[k]) for k in ("w", "h", "r", "s"))
        total, adim, table, wit = _subcomplex_table(dimvec(w), h, r, q)
        return CensusResult(q, total, table.get(s, 0), adim, tuple(wit.get(s, ())))
    raise ValueError(f"unknown stratum kind {kind!r}")


def _interpolate(points):
    """Coefficients (constant first) of the Lagrange polynomial through ``points``."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for j, (xj, yj) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == j:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xm * basis[t + 1]
            denom *= xj - xm
        for t in range(n):
            coeffs[t] += yj * basis[t] / denom
    return coeffs


def _leading_exponent(q, count):
    """Integer d with q^(2d-1) <= count^2 < q^(2d+1): log_q(count) rounded, without floats."""
    d = 0
    c2 = count * count
    while c2 >= q ** (2 * d + 1):
        d += 1
    return d


def dimension_by_census(spec, qs):
    """Degree of the point-count polynomial, from censuses at the primes ``qs``.

    With more samples than the ambient dimension the polynomial is pinned
    down exactly; otherwise the exponent is read off the largest field and
    the result is flagged approximate.
    """
    qs = sorted(set(qs))
    results = [exhaustive_census(q, spec) for q in qs]
    samples = tuple((r.q, r.count) for r in results)
    return estimate_dimension(samples, max(r.ambient_dim for r in results))


def estimate_dimension(samples, ambient_dim):
    """Degree of the count polynomial through ``samples = ((q, count), ...)``, q ascending."""
    if all(c == 0 for _, c in samples):
        return CensusDimension(None, False, samples)
    if len(samples) > ambient_dim:
        coeffs = _interpolate(samples)
        deg = max(i for i, c in enumerate(coeffs) if c != 0)
        if deg > ambient_dim:
            raise InterpolationError(
                f"point counts {samples} do not fit a polynomial of degree <= {ambient_dim}")
        return CensusDimension(deg, False, samples)
    q, count = samples[-1]
    if count == 0:
        raise InterpolationError(f"zero count at q={q} but nonzero elsewhere: {samples}")
    return CensusDimension(_leading_exponent(q, count), True, samples)


# -- derivation-rank strata in an sl2 module ------------------------------------

E1_CAP = 2 ** 20


def _algebra_closure(gens, q):
    """Basis of the non-unital algebra generated by ``gens`` over GF(q), as arrays."""
    ech = Echelon(GF(q))
    basis = []

    def push(M):
        flat = {i: int(x) for i, x in enumerate(M.reshape(-1)) if x % q}
        if ech.add(flat):
            basis.append(M % q)
            return True
        return False

    frontier = [g for g in gens if push(g)]
    while frontier:
        nxt = []
        for W in frontier:
            for g in gens:
                P = g @ W % q
                if push(P):
                    nxt.append(P)
        frontier = nxt
    return basis


@lru_cache(maxsize=None)
def derivation_rank_table(n, q):
    """Counts of ``y`` in the module of class ``n`` over GF(q), keyed by the class of the
    submodule generated by ``{a . y}``.

    The submodule is ``A y`` for the algebra ``A`` generated by e, f, h.  Each
    isotypic part is (copy of ``S^k``) tensor (multiplicity subspace), so its
    multiplicity is the rank of its projection to the top coordinate of every
    ``S^k`` copy.  Requires ``q > k`` for all types, so each ``S^k`` stays
    irreducible mod q.
    """
    M = module_from_class(n)
    if any(k >= q for k in n.support() if k):
        raise ResourceError(f"GF({q}) too small for the types of {n!r}")
    if q ** M.dim > E1_CAP:
        raise ResourceError(f"census of {q}^{M.dim} points exceeds cap")
    gens = [_np(g) % q for g in M.generators()]
    A = _algebra_closure(gens, q) if M.dim else []
    types = sorted(k for k in n.support() if k)
    tops = {k: [start for kk, start in M.blocks if kk == k] for k in types}
    # T[k]: (|A|, n_k, dim) = rows of each algebra element at the top coordinates
    T = {k: np.stack([a[tops[k], :] for a in A]) if A else None for k in types}
    total = q ** M.dim
    raw = {}
    for start in range(0, total, BATCH):
        Y = _coefficients(q, M.dim, start, min(total, start + BATCH))
        mults = []
        for k in types:
            if T[k] is None:
                mults.append(np.zeros(len(Y), dtype=np.int64))
                continue
            P = np.einsum("wtd,nd->ntw", T[k], Y) % q
            mults.append(batched_rank(P, q))
        R = np.stack(mults, axis=1) if mults else np.zeros((len(Y), 0), dtype=np.int64)
        _tally(R, raw)
    return {RepClass(dict(zip(types, key))): c for key, c in raw.items()}


def e1_census_fields(n, cap=E1_CAP):
    """Supported primes exceeding every highest weight of ``n`` with a census under ``cap``."""
    top = max(n.support(), default=0)
    dim = class_dim(n)
    return [q for q in SUPPORTED_PRIMES if q > top and q ** dim <= cap]


def e1_dimension_by_census(n, v, qs=None):
    """Census dimension estimate for the derivation-rank stratum of class ``v``."""
    if qs is None:
        qs = e1_census_fields(n)
        if len(qs) <= class_dim(n):
            # too few samples to interpolate: only the largest field matters
            qs = qs[-1:]
    qs = sorted(qs)
    if not qs:
        raise ResourceError(f"no supported field admits a census for {n!r}")
    samples = tuple((q, derivation_rank_table(n, q).get(v, 0)) for q in qs)
    return estimate_dimension(samples, class_dim(n))
