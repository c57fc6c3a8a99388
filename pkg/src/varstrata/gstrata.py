"""Equivariant determinantal strata and submodule Grassmannians.

Closed forms work on multiplicity vectors over any type table; the
oracles solve intertwiner systems on explicit sl2 modules.
"""

from itertools import combinations, product

from .errors import PreconditionError, ValidationError
from .linalg import QQ, LinearSystem, Matrix, complement_basis, hstack, image_basis, inverse, rank
from .repring import RepClass, class_leq, module_from_class, submodule_generated


def _types(*classes):
    keys = set()
    for c in classes:
        keys.update(c.support())
    return sorted(keys)


def _effective(*classes):
    for c in classes:
        if not c.is_effective():
            raise PreconditionError("class is effective", repr(c))


def hom_g_dim(n, m):
    _effective(n, m)
    return sum(n[k] * m[k] for k in _types(n, m))


def g_stratum_nonempty(n, m, s):
    _effective(n, m, s)
    return all(s[k] <= min(n[k], m[k]) for k in _types(n, m, s))


def g_stratum_dim(n, m, s):
    if not g_stratum_nonempty(n, m, s):
        raise PreconditionError("stratum nonempty", f"s={s!r}")
    return sum((n[k] + m[k] - s[k]) * s[k] for k in _types(s))


def aut_g_dim(n):
    _effective(n)
    return sum(x * x for _, x in n.items())


def g_closure_contains(s, t):
    """Whether the closure of the rank-``s`` stratum contains maps of rank class ``t``."""
    return class_leq(t, s)


def g_grassmannian_dim(n, s):
    _effective(n, s)
    if not class_leq(s, n):
        raise PreconditionError("s <= n", f"s={s!r}, n={n!r}")
    return sum((n[k] - s[k]) * s[k] for k in _types(s))


# -- oracles on explicit modules -----------------------------------------------

def _intertwiner_system(A, B):
    system = LinearSystem(A.field)
    system.unknown("X", B.dim, A.dim)
    minus = Matrix.identity(B.dim, A.field) * -1
    for (_, ga), (_, gb) in zip(A.gens, B.gens):
        # g_B X - X g_A = 0
        system.add_product([(gb, "X", None), (minus, "X", ga)])
    return system


def intertwiner_basis(A, B):
    system = _intertwiner_system(A, B)
    return [system.unpack(col)["X"] for col in system.solution_basis().columns()]


def intertwiner_dim_oracle(A, B):
    return _intertwiner_system(A, B).solution_dimension()


def is_intertwiner(A, B, X):
    return all(gb @ X == X @ ga for (_, ga), (_, gb) in zip(A.gens, B.gens))


def g_rank_of_map(A, B, X):
    """Class of the image of an intertwiner ``X: A -> B``."""
    if not is_intertwiner(A, B, X):
        raise ValidationError("map does not commute with the algebra action")
    img = image_basis(X)
    sub, cls = submodule_generated(B, img.columns())
    if sub.ncols != img.ncols:
        raise ValidationError("image of an intertwiner is not closed under the action")
    return cls


def build_g_map_witness(n, m, s):
    """Modules for ``n`` and ``m`` and the 0/1 intertwiner matching the first
    ``s_k`` copies of each type."""
    if not g_stratum_nonempty(n, m, s):
        raise PreconditionError("stratum nonempty", f"s={s!r}")
    A, B = module_from_class(n), module_from_class(m)
    rows = [[0] * A.dim for _ in range(B.dim)]
    for k in _types(s):
        src = [start for kk, start in A.blocks if kk == k][:s[k]]
        dst = [start for kk, start in B.blocks if kk == k][:s[k]]
        for a, b in zip(src, dst):
            for j in range(k + 1):
                rows[b + j][a + j] = 1
    return A, B, Matrix(rows, QQ, ncols=A.dim)


def _flatten(M):
    return [x for row in M.rows() for x in row]


def orbit_dim_g_map(A, B, X, ends=None):
    """Rank of ``(x, y) -> y X - X x`` over the intertwiner algebras of ``A`` and ``B``.

    ``ends`` may supply precomputed bases ``(End_g A, End_g B)``.
    """
    end_a, end_b = ends if ends is not None else (intertwiner_basis(A, A), intertwiner_basis(B, B))
    images = [_flatten(X @ x * -1) for x in end_a]
    images += [_flatten(y @ X) for y in end_b]
    if not images or not images[0]:
        return 0
    return rank(Matrix.from_columns(images, len(images[0]), A.field))


def submodule_basis(M, s):
    """Span of the first ``s_k`` copies of each type in ``M``."""
    cols = []
    for k in _types(s):
        starts = [start for kk, start in M.blocks if kk == k][:s[k]]
        for start in starts:
            for j in range(k + 1):
                col = [0] * M.dim
                col[start + j] = 1
                cols.append(col)
    return Matrix.from_columns(cols, M.dim, M.field) if cols else Matrix.zeros(M.dim, 0, M.field)


def orbit_dim_g_grassmannian(M, U):
    """Rank of ``x -> (U -> M/U)`` induced by the intertwiner algebra of ``M``."""
    Q = complement_basis(U, M.dim)
    Pinv = inverse(hstack(U, Q, nrows=M.dim, field=M.field))
    quot = Pinv.submatrix(rows=range(U.ncols, M.dim))
    images = [_flatten(quot @ x @ U) for x in intertwiner_basis(M, M)]
    if not images or not images[0]:
        return 0
    return rank(Matrix.from_columns(images, len(images[0]), M.field))


def class_box(types, max_mult, max_types):
    """All classes with at most ``max_types`` distinct types from ``types``, multiplicities 1..max_mult."""
    out = [RepClass()]
    for t in range(1, max_types + 1):
        for ks in combinations(types, t):
            for ms in product(range(1, max_mult + 1), repeat=t):
                out.append(RepClass(dict(zip(ks, ms))))
    return out
