"""Bounded cochain complexes and degree-0 chain maps over an exact field."""

from dataclasses import dataclass

from .errors import ShapeError, ValidationError
from .grading import at, dimvec
from .linalg import (QQ, LinearSystem, Matrix, complement_basis, extend_within, hstack,
                     image_basis, inverse, kernel_basis, rank)


@dataclass(frozen=True)
class Complex:
    """Graded space ``V^0 + ... + V^n`` with differentials ``d^i: V^i -> V^{i+1}``.

    ``diffs`` always holds ``n + 1`` matrices; the last one is the zero map into
    the zero space ``V^{n+1}`` (shape ``0 x dims[n]``).
    """

    dims: tuple
    diffs: tuple
    field: object = QQ

    @property
    def n(self):
        return len(self.dims) - 1

    def d(self, i):
        if i < 0:
            return Matrix.zeros(at(self.dims, 0), 0, self.field)
        if i > self.n:
            return Matrix.zeros(0, 0, self.field)
        return self.diffs[i]

    def rank_vector(self):
        return tuple(rank(m) for m in self.diffs)

    def over(self, field):
        return Complex(self.dims, tuple(m.over(field) for m in self.diffs), field)


@dataclass(frozen=True)
class HomologyProfile:
    z: tuple
    b: tuple
    h: tuple


@dataclass(frozen=True)
class AdaptedBases:
    """Per degree: bases of ``B^i`` (boundaries), an ``H^i`` lift and a complement ``C^i``.

    ``B[i+1]`` is exactly ``d^i`` applied to ``C[i]`` column by column.
    """

    B: tuple
    H: tuple
    C: tuple

    def basis(self, i):
        return hstack(self.B[i], self.H[i], self.C[i])


@dataclass(frozen=True)
class ChainMap:
    source: Complex
    target: Complex
    comps: tuple


def _as_matrix(m, field, shape):
    if isinstance(m, Matrix):
        if m.field != field:
            m = m.over(field)
    else:
        m = Matrix(m, field, ncols=shape[1])
    if m.shape != shape:
        raise ShapeError(f"expected shape {shape}, got {m.shape}")
    return m


def validate_complex(dims, diffs, field=QQ):
    """Build a :class:`Complex`, raising :class:`ValidationError` if ``d o d != 0``.

    ``diffs`` may list ``n`` matrices (top differential implied) or ``n + 1``
    with an empty top.
    """
    dims = dimvec(dims)
    n = len(dims) - 1
    diffs = list(diffs)
    if len(diffs) not in (n, n + 1):
        raise ShapeError(f"{len(diffs)} differentials for a complex of top degree {n}")
    mats = []
    for i, m in enumerate(diffs[:n]):
        try:
            mats.append(_as_matrix(m, field, (dims[i + 1], dims[i])))
        except ShapeError as exc:
            raise ShapeError(f"d^{i}: {exc}") from None
    if len(diffs) == n + 1:
        top = diffs[n]
        top_rows = top.nrows if isinstance(top, Matrix) else len(top)
        if top_rows != 0:
            raise ShapeError(f"d^{n} must map into the zero space")
    mats.append(Matrix.zeros(0, dims[n], field))
    for i in range(n - 1):
        sq = mats[i + 1] @ mats[i]
        bad = sq.first_nonzero()
        if bad is not None:
            r, c, val = bad
            raise ValidationError(
                f"d^{i + 1} d^{i} != 0: entry ({r}, {c}) equals {field.format(val)}",
                degree=i, witness=(r, c, val))
    return Complex(dims, tuple(mats), field)


def homology_profile(C):
    ranks = C.rank_vector()
    z = tuple(C.dims[i] - ranks[i] for i in range(C.n + 1))
    b = tuple(ranks[i - 1] if i > 0 else 0 for i in range(C.n + 1))
    h = tuple(zi - bi for zi, bi in zip(z, b))
    return HomologyProfile(z, b, h)


def adapted_decomposition(C):
    """Split each ``V^i`` as ``B^i + H^i + C^i``.

    ``C^i`` extends ``ker d^i`` by standard vectors, ``B^{i+1} = d^i(C^i)`` and
    the ``H^i`` lift takes kernel-basis columns independent of ``B^i``.
    """
    field = C.field
    Bs, Hs, Cs = [], [], []
    prev_C = None
    for i in range(C.n + 1):
        dim = C.dims[i]
        K = kernel_basis(C.d(i))
        if i == 0:
            B = Matrix.zeros(dim, 0, field)
        else:
            B = C.d(i - 1) @ prev_C
        H = extend_within(B, K)
        Ci = complement_basis(K, dim)
        Bs.append(B)
        Hs.append(H)
        Cs.append(Ci)
        prev_C = Ci
    return AdaptedBases(tuple(Bs), tuple(Hs), tuple(Cs))


def validate_chain_map(source, target, comps):
    if source.n != target.n:
        raise ShapeError(f"complexes of top degree {source.n} and {target.n}")
    if source.field != target.field:
        raise ShapeError("complexes over different fields")
    field = source.field
    comps = list(comps)
    if len(comps) != source.n + 1:
        raise ShapeError(f"{len(comps)} components for top degree {source.n}")
    mats = []
    for i, m in enumerate(comps):
        try:
            mats.append(_as_matrix(m, field, (target.dims[i], source.dims[i])))
        except ShapeError as exc:
            raise ShapeError(f"f^{i}: {exc}") from None
    for i in range(source.n):
        diff = target.d(i) @ mats[i] - mats[i + 1] @ source.d(i)
        bad = diff.first_nonzero()
        if bad is not None:
            r, c, val = bad
            raise ValidationError(
                f"delta^{i} f^{i} != f^{i + 1} d^{i}: entry ({r}, {c}) differs by {field.format(val)}",
                degree=i, witness=(r, c, val))
    return ChainMap(source, target, tuple(mats))


def identity_map(C):
    return ChainMap(C, C, tuple(Matrix.identity(d, C.field) for d in C.dims))


def zero_map(V, W):
    return ChainMap(V, W, tuple(Matrix.zeros(W.dims[i], V.dims[i], V.field) for i in range(V.n + 1)))


def rank_profiles(f):
    """``(rk, hrk)``: ranks of the components and of the maps induced on homology."""
    V, W = f.source, f.target
    rk = tuple(rank(m) for m in f.comps)
    hrk = []
    for i, m in enumerate(f.comps):
        Z = kernel_basis(V.d(i))
        Bw = image_basis(W.d(i - 1))
        hrk.append(rank(hstack(m @ Z, Bw)) - Bw.ncols)
    return rk, tuple(hrk)


def fkernel_dims(f):
    """``dim f^i(ker d^i)`` per degree."""
    return tuple(rank(m @ kernel_basis(f.source.d(i))) for i, m in enumerate(f.comps))


def hom0_system(V, W):
    system = LinearSystem(V.field)
    for i in range(V.n + 1):
        system.unknown(i, W.dims[i], V.dims[i])
    for i in range(V.n):
        # f^{i+1} d^i - delta^i f^i = 0
        system.add_product([(None, i + 1, V.d(i)), (-W.d(i), i, None)])
    return system


def hom0_basis(V, W):
    """Basis of the degree-0 chain maps ``V -> W`` as tuples of component matrices."""
    system = hom0_system(V, W)
    basis = system.solution_basis()
    out = []
    for col in basis.columns():
        parts = system.unpack(col)
        out.append(tuple(parts[i] for i in range(V.n + 1)))
    return out


def hom0_dimension_oracle(V, W):
    """Exact dimension of the space of degree-0 chain maps, by direct solve."""
    return hom0_system(V, W).solution_dimension()


def paper_hom0_dimension(h, rkd, h2, rkd2):
    """``sum_i h_i h'_i + rk(d^i) rk(d'^i)`` evaluated verbatim (claimed value)."""
    n = max(len(h), len(h2), len(rkd), len(rkd2))
    return sum(at(h, i) * at(h2, i) + at(rkd, i) * at(rkd2, i) for i in range(n))


def split_hom0_dimension(h, b, h2, b2):
    """Hom-space dimension from the elementary-complex splitting.

    Over a field a complex is a sum of one-term pieces (homology) and two-term
    pieces ``k -> k`` in degrees ``(i, i+1)`` (counted by ``b_{i+1}``); summing
    the hom dimensions between pieces gives
    ``sum_i (h_i + b_{i+1})(h'_i + b'_i) + b_{i+1} b'_{i+1}``.
    """
    n = max(len(h), len(h2))
    return sum((at(h, i) + at(b, i + 1)) * (at(h2, i) + at(b2, i)) + at(b, i + 1) * at(b2, i + 1)
               for i in range(n))


def conjugate_complex(C, phis):
    """The complex ``phi d phi^{-1}`` for a graded automorphism ``phis``."""
    diffs = [phis[i + 1] @ C.d(i) @ inverse(phis[i]) for i in range(C.n)]
    return validate_complex(C.dims, diffs, C.field)
