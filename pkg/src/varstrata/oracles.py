"""Orbit-tangent dimensions: image rank of the linearized group action at a point.

Each oracle assembles the images of a spanning set of the Lie algebra (or of
the chain endomorphisms) as flattened columns and takes the exact rank.
Under transitivity of the action on the stratum this is the stratum dimension.
"""

from .complexes import hom0_basis
from .linalg import Matrix, complement_basis, hstack, inverse, rank


def _flatten(mats):
    out = []
    for m in mats:
        for row in m.rows():
            out.extend(row)
    return out


def _image_rank(images, field):
    if not images:
        return 0
    length = len(images[0])
    if length == 0:
        return 0
    return rank(Matrix.from_columns(images, length, field))


def _unit(nrows, ncols, a, b, field):
    rows = [[0] * ncols for _ in range(nrows)]
    rows[a][b] = 1
    return Matrix(rows, field, ncols=ncols)


def orbit_dim_differential(C):
    """Rank of ``x -> (x^{i+1} d^i - d^i x^i)_i`` over graded endomorphisms ``x``."""
    field = C.field
    images = []
    for k, dk in enumerate(C.dims):
        for a in range(dk):
            for b in range(dk):
                x = _unit(dk, dk, a, b, field)
                parts = []
                for i in range(C.n):
                    if i == k:
                        parts.append(-(C.d(i) @ x))
                    elif i + 1 == k:
                        parts.append(x @ C.d(i))
                    else:
                        parts.append(Matrix.zeros(C.dims[i + 1], C.dims[i], field))
                images.append(_flatten(parts))
    return _image_rank(images, field)


def orbit_dim_chain_map(f):
    """Rank of ``(x, y) -> y f - f x`` with ``x, y`` chain endomorphisms of source and target."""
    V, W = f.source, f.target
    field = V.field
    images = []
    for x in hom0_basis(V, V):
        images.append(_flatten([-(fi @ xi) for fi, xi in zip(f.comps, x)]))
    for y in hom0_basis(W, W):
        images.append(_flatten([yi @ fi for fi, yi in zip(f.comps, y)]))
    return _image_rank(images, field)


def orbit_dim_subcomplex(W, L):
    """Rank of ``x -> (L^i -> W^i / L^i)_i`` induced by chain endomorphisms ``x`` of ``W``.

    ``L`` is a :class:`SubcomplexWitness` or a sequence of basis matrices.
    """
    bases = getattr(L, "bases", L)
    field = W.field
    # quotient coordinates: last rows of P^{-1} for P = [L | complement]
    quot = []
    for i, B in enumerate(bases):
        Q = complement_basis(B, W.dims[i])
        Pinv = inverse(hstack(B, Q, nrows=W.dims[i], field=field))
        quot.append(Pinv.submatrix(rows=range(B.ncols, W.dims[i])))
    images = []
    for x in hom0_basis(W, W):
        images.append(_flatten([quot[i] @ x[i] @ B for i, B in enumerate(bases)]))
    return _image_rank(images, field)
