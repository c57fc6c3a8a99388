"""Truncated DGLAs ``E = E^0 + E^1 + E^2`` given by explicit tensors.

``E^0`` is a Lie algebra (structure constants), acting on ``E^1`` and ``E^2``
through ``rho1``/``rho2``; ``d0: E^0 -> E^1`` and ``d1: E^1 -> E^2`` are the
differentials and ``f`` is the symmetric bracket ``E^1 x E^1 -> E^2`` stored
as one symmetric matrix per ``E^2`` coordinate: ``f(x, y)_c = x^T F_c y``.

The Maurer-Cartan residual is ``2 d1(x) + f(x, x)``; the half form
``d1(x) + f(x, x)/2`` has the same zero set.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from math import factorial

from .errors import PreconditionError, ShapeError
from .linalg import QQ, LinearSystem, Matrix
from .repring import (ExplicitModule, RepClass, class_leq, module_from_class, submodule_generated,
                      sym_square_sl2)
from .gstrata import hom_g_dim


@dataclass(frozen=True)
class DGLAStructure:
    bracket: tuple  # bracket[a][b] = coordinates of [a, b] in E^0
    rho1: tuple     # Matrix per E^0 basis vector, acting on E^1
    rho2: tuple     # same on E^2
    d0: Matrix      # dim1 x dim0
    d1: Matrix      # dim2 x dim1
    f: tuple        # dim2 symmetric dim1 x dim1 matrices

    @property
    def dims(self):
        return (len(self.bracket), self.d0.nrows, self.d1.nrows)

    def check_shapes(self):
        n0, n1, n2 = len(self.bracket), self.d1.ncols, len(self.f)
        if self.d0.shape != (n1, n0):
            raise ShapeError(f"d0 has shape {self.d0.shape}, expected {(n1, n0)}")
        if self.d1.nrows != n2:
            raise ShapeError(f"d1 has {self.d1.nrows} rows but f has {n2} components")
        if len(self.rho1) != n0 or len(self.rho2) != n0:
            raise ShapeError("one action matrix per E^0 basis vector is required")
        for row in self.bracket:
            if len(row) != n0 or any(len(v) != n0 for v in row):
                raise ShapeError("bracket constants must be dim0 x dim0 x dim0")
        for m in self.rho1:
            if m.shape != (n1, n1):
                raise ShapeError(f"E^1 action of shape {m.shape}")
        for m in self.rho2:
            if m.shape != (n2, n2):
                raise ShapeError(f"E^2 action of shape {m.shape}")
        for F in self.f:
            if F.shape != (n1, n1):
                raise ShapeError(f"f component of shape {F.shape}")


# -- small vector helpers -----------------------------------------------------

def _vec(x):
    return tuple(QQ.reduce(v) for v in x)


def _col(x):
    return Matrix.column_vector(x, QQ)


def _apply(M, x):
    return (M @ _col(x)).column(0) if M.nrows else ()


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _scale(c, x):
    return tuple(c * a for a in x)


def _zero(n):
    return (0,) * n


def _combo(mats, coeffs, shape):
    out = Matrix.zeros(*shape, QQ)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m * c
    return out


def bracket0(e, a, b):
    n0 = len(e.bracket)
    out = [Fraction(0)] * n0
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                for k, c in enumerate(e.bracket[i][j]):
                    out[k] += ai * bj * c
    return _vec(out)


def act1_matrix(e, a):
    return _combo(e.rho1, a, (e.dims[1], e.dims[1]))


def act2_matrix(e, a):
    return _combo(e.rho2, a, (e.dims[2], e.dims[2]))


def act1(e, a, x):
    return _apply(act1_matrix(e, a), x)


def act2(e, a, z):
    return _apply(act2_matrix(e, a), z)


def fbil(e, x, y):
    cx, cy = _col(x), _col(y)
    return tuple((cx.T @ F @ cy)[0, 0] for F in e.f)


def _basis(n, i):
    return tuple(int(j == i) for j in range(n))


# -- axioms -------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomResult:
    name: str
    ok: bool
    witness: tuple = ()


@dataclass(frozen=True)
class AxiomReport:
    results: tuple

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.ok]

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _first(name, cases):
    for witness, good in cases:
        if not good:
            return AxiomResult(name, False, witness)
    return AxiomResult(name, True)


def check_axioms(e):
    """Every axiom instance landing in degrees <= 2, checked on basis vectors."""
    e.check_shapes()
    n0, n1, n2 = e.dims
    B0 = [_basis(n0, i) for i in range(n0)]
    B1 = [_basis(n1, i) for i in range(n1)]
    br = lambda a, b: bracket0(e, a, b)  # noqa: E731
    res = []
    res.append(_first("bracket-antisymmetric", (
        ((i, j), br(a, b) == _scale(-1, br(b, a))) for i, a in enumerate(B0) for j, b in enumerate(B0))))
    res.append(_first("jacobi", (
        ((i, j, k), not any(_add(_add(br(a, br(b, c)), br(b, br(c, a))), br(c, br(a, b)))))
        for i, a in enumerate(B0) for j, b in enumerate(B0) for k, c in enumerate(B0))))
    for name, act in (("action-E1", act1_matrix), ("action-E2", act2_matrix)):
        res.append(_first(name, (
            ((i, j), act(e, br(a, b)) == act(e, a) @ act(e, b) - act(e, b) @ act(e, a))
            for i, a in enumerate(B0) for j, b in enumerate(B0))))
    res.append(_first("f-symmetric", (
        ((c, i, j), F[i, j] == F[j, i]) for c, F in enumerate(e.f) for i in range(n1) for j in range(n1))))
    res.append(_first("f-equivariant", (
        ((i, j, k), act2(e, a, fbil(e, x, y)) == _add(fbil(e, act1(e, a, x), y), fbil(e, x, act1(e, a, y))))
        for i, a in enumerate(B0) for j, x in enumerate(B1) for k, y in enumerate(B1))))
    res.append(_first("d0-derivation", (
        ((i, j), _apply(e.d0, br(a, b)) ==
         _add(act1(e, a, _apply(e.d0, b)), _scale(-1, act1(e, b, _apply(e.d0, a)))))
        for i, a in enumerate(B0) for j, b in enumerate(B0))))
    res.append(_first("d1-leibniz", (
        ((i, j), _apply(e.d1, act1(e, a, x)) == _add(fbil(e, _apply(e.d0, a), x), act2(e, a, _apply(e.d1, x))))
        for i, a in enumerate(B0) for j, x in enumerate(B1))))
    dd = e.d1 @ e.d0
    bad = dd.first_nonzero()
    res.append(AxiomResult("d1-d0-zero", bad is None, () if bad is None else bad[:2]))
    return AxiomReport(tuple(res))


# -- Maurer-Cartan, twisting, gauge -------------------------------------------

def mc_residual(e, x, form="doubled"):
    """``2 d1(x) + f(x, x)``; ``form="half"`` gives ``d1(x) + f(x, x)/2``."""
    x = _vec(x)
    r = _add(_scale(2, _apply(e.d1, x)), fbil(e, x, x))
    if form == "half":
        return tuple(QQ.reduce(Fraction(v, 2)) for v in r)
    if form != "doubled":
        raise ValueError(f"unknown residual form {form!r}")
    return r


def mu(e, x):
    """Matrix of ``a -> a.x`` from ``E^0`` to ``E^1``."""
    n0, n1, _ = e.dims
    cols = [_apply(m, x) for m in e.rho1]
    return Matrix.from_columns(cols, n1, QQ) if cols else Matrix.zeros(n1, 0, QQ)


def f_partial(e, x):
    """Matrix of ``z -> f(x, z)`` from ``E^1`` to ``E^2``."""
    n1 = e.dims[1]
    cx = _col(x)
    rows = [(cx.T @ F).row(0) for F in e.f]
    return Matrix(rows, QQ, ncols=n1)


def twisted_differential(e, x):
    """``(a -> d0 a - a.x, z -> d1 z + f(x, z))``.

    The composite equals ``a -> -(a . residual(x)) / 2``, so it vanishes at
    Maurer-Cartan points.
    """
    x = _vec(x)
    return e.d0 - mu(e, x), e.d1 + f_partial(e, x)


def _power_matrices(A, n):
    out = [Matrix.identity(A.nrows, QQ)]
    for _ in range(n):
        out.append(A @ out[-1])
    return out


def gauge_act(e, a, x):
    """``sum_k a^k/k! (x - d0(a)/(k+1))`` for ``a`` acting nilpotently on ``E^1``."""
    a, x = _vec(a), _vec(x)
    n1 = e.dims[1]
    A = act1_matrix(e, a)
    powers = _power_matrices(A, n1)
    if not powers[-1].is_zero():
        raise ArithmeticError("gauge series does not terminate: the action of a on E^1 is not nilpotent")
    da = _apply(e.d0, a)
    out = _zero(n1)
    for k, P in enumerate(powers):
        if P.is_zero():
            break
        term = _add(x, _scale(Fraction(-1, k + 1), da))
        out = _add(out, _scale(Fraction(1, factorial(k)), _apply(P, term)))
    return _vec(out)


# -- maps and shifts ----------------------------------------------------------

@dataclass(frozen=True)
class DGLAMap:
    phi0: Matrix
    phi1: Matrix
    phi2: Matrix


def check_dgla_map(phi, src, tgt):
    n0, n1, n2 = src.dims
    m0, m1, m2 = tgt.dims
    if phi.phi0.shape != (m0, n0) or phi.phi1.shape != (m1, n1) or phi.phi2.shape != (m2, n2):
        raise ShapeError("map components do not match the structures")
    B0 = [_basis(n0, i) for i in range(n0)]
    B1 = [_basis(n1, i) for i in range(n1)]
    B2 = [_basis(n2, i) for i in range(n2)]
    p0 = lambda v: _apply(phi.phi0, v)  # noqa: E731
    p1 = lambda v: _apply(phi.phi1, v)  # noqa: E731
    p2 = lambda v: _apply(phi.phi2, v)  # noqa: E731
    res = [
        AxiomResult("commutes-d0", phi.phi1 @ src.d0 == tgt.d0 @ phi.phi0),
        AxiomResult("commutes-d1", phi.phi2 @ src.d1 == tgt.d1 @ phi.phi1),
        _first("bracket", (((i, j), p0(bracket0(src, a, b)) == bracket0(tgt, p0(a), p0(b)))
                           for i, a in enumerate(B0) for j, b in enumerate(B0))),
        _first("action-E1", (((i, j), p1(act1(src, a, x)) == act1(tgt, p0(a), p1(x)))
                             for i, a in enumerate(B0) for j, x in enumerate(B1))),
        _first("action-E2", (((i, j), p2(act2(src, a, z)) == act2(tgt, p0(a), p2(z)))
                             for i, a in enumerate(B0) for j, z in enumerate(B2))),
        _first("f", (((i, j), p2(fbil(src, x, y)) == fbil(tgt, p1(x), p1(y)))
                     for i, x in enumerate(B1) for j, y in enumerate(B1))),
    ]
    return AxiomReport(tuple(res))


def push_forward(phi, x):
    return _apply(phi.phi1, _vec(x))


def shift_structure(e, x):
    """``(d0 - mu_x, d1 + f(x, -), f)``: residuals satisfy
    ``res_e(z + x) = res_shifted(z) + res_e(x)``."""
    x = _vec(x)
    return replace(e, d0=e.d0 - mu(e, x), d1=e.d1 + f_partial(e, x))


# -- construction from sl2 modules --------------------------------------------

SL2_BRACKET = (
    # basis order e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f
    ((0, 0, 0), (0, 0, 1), (-2, 0, 0)),
    ((0, 0, -1), (0, 0, 0), (0, 2, 0)),
    ((2, 0, 0), (0, -2, 0), (0, 0, 0)),
)


def adjoint_rho():
    """Action matrices of e, f, h on sl2 itself in the basis (e, f, h)."""
    mats = []
    for a in range(3):
        cols = [SL2_BRACKET[a][b] for b in range(3)]
        mats.append(Matrix.from_columns(cols, 3, QQ))
    return tuple(mats)


def sl2_structure(M1, M2, d0=None, d1=None, f=None):
    """DGLA with ``E^0 = sl2`` acting on explicit modules ``M1``, ``M2``."""
    n1, n2 = M1.dim, M2.dim
    return DGLAStructure(
        bracket=SL2_BRACKET,
        rho1=tuple(M1.gen(g) for g in ("e", "f", "h")),
        rho2=tuple(M2.gen(g) for g in ("e", "f", "h")),
        d0=d0 if d0 is not None else Matrix.zeros(n1, 3, QQ),
        d1=d1 if d1 is not None else Matrix.zeros(n2, n1, QQ),
        f=tuple(f) if f is not None else tuple(Matrix.zeros(n1, n1, QQ) for _ in range(n2)),
    )


def zero_structure():
    return sl2_structure(module_from_class(RepClass()), module_from_class(RepClass()))


def adjoint_module():
    """sl2 as a module over itself, in the basis (e, f, h)."""
    e, f, h = adjoint_rho()
    blocks = ((2, 0),)
    return ExplicitModule(3, (("e", e), ("f", f), ("h", h)), blocks, QQ)


# -- fiber of the differential-forgetting projection -----------------------------

def _fiber_system(e, equivariant_f=True):
    """Unknowns ``D1`` and ``F_c`` for a fixed ``d0``; returns the system."""
    n0, n1, n2 = e.dims
    sys = LinearSystem(QQ)
    sys.unknown("D1", n2, n1)
    for c in range(n2):
        sys.unknown(("F", c), n1, n1)
    d0cols = e.d0.columns()
    for ai in range(n0):
        r1, r2 = e.rho1[ai], e.rho2[ai]
        da = d0cols[ai]
        # Leibniz: D1 rho1(a) - rho2(a) D1 - f(d0 a, -) = 0
        for c in range(n2):
            for x in range(n1):
                terms = [(r1[k, x], "D1", (c, k)) for k in range(n1) if r1[k, x]]
                terms += [(-r2[c, c2], "D1", (c2, x)) for c2 in range(n2) if r2[c, c2]]
                terms += [(-da[k], ("F", c), (k, x)) for k in range(n1) if da[k]]
                if terms:
                    sys.add_equation(terms)
        if equivariant_f:
            # rho2(a) f(x, y) = f(a x, y) + f(x, a y)
            for c in range(n2):
                for i in range(n1):
                    for j in range(n1):
                        terms = [(r2[c, c2], ("F", c2), (i, j)) for c2 in range(n2) if r2[c, c2]]
                        terms += [(-r1[k, i], ("F", c), (k, j)) for k in range(n1) if r1[k, i]]
                        terms += [(-r1[k, j], ("F", c), (i, k)) for k in range(n1) if r1[k, j]]
                        if terms:
                            sys.add_equation(terms)
    # d1 d0 = 0
    for c in range(n2):
        for b in range(n0):
            terms = [(d0cols[b][k], "D1", (c, k)) for k in range(n1) if d0cols[b][k]]
            if terms:
                sys.add_equation(terms)
    # f symmetric
    for c in range(n2):
        for i in range(n1):
            for j in range(i + 1, n1):
                sys.add_equation([(1, ("F", c), (i, j)), (-1, ("F", c), (j, i))])
    return sys


def fiber_dim_oracle(M1, M2, y=None):
    """Dimension of ``{(d1, f)}`` completing ``d0 = mu_y`` (``y = None``: ``d0 = 0``)."""
    e = sl2_structure(M1, M2)
    if y is not None:
        e = replace(e, d0=mu(e, _vec(y)))
    return _fiber_system(e).solution_dimension()


def fiber_basis(M1, M2, y=None):
    e = sl2_structure(M1, M2)
    if y is not None:
        e = replace(e, d0=mu(e, _vec(y)))
    sys = _fiber_system(e)
    out = []
    for col in sys.solution_basis().columns():
        parts = sys.unpack(col)
        out.append((parts["D1"], tuple(parts[("F", c)] for c in range(M2.dim))))
    return out


# -- closed forms -------------------------------------------------------------

def derivation_g_rank(M, y):
    """Class of the submodule generated by ``{a . y : a in E^0}``."""
    col = _col(_vec(y))
    images = [(g @ col).column(0) for g in M.generators()]
    return submodule_generated(M, images)[1]


def e1_stratum_dim(n, v):
    """Dimension of ``{y in E^1 : derivation rank of y is v}``, or None when empty.

    Trivial-isotypic coordinates are free; on each non-trivial isotypic block
    ``S^k (x) C^{n_k}`` the condition is tensor rank exactly ``v_k``, which
    needs ``v_k <= k + 1``.
    """
    if not class_leq(v, n):
        raise PreconditionError("v <= n", f"v={v!r}, n={n!r}")
    if v[0] or any(s > k + 1 for k, s in v.items()):
        return None
    total = n[0]
    for k, s in v.items():
        total += (k + 1 + n[k] - s) * s
    return total


def _e2_check(n2):
    if n2[0]:
        raise PreconditionError("E^2 has no trivial summand",
                                "use fiber_dim_oracle for such inputs")


def dgla_stratum_dim(n1, n2, v):
    if not v:
        raise PreconditionError("v != 0", "the d0 = 0 stratum is counted by dgla0_dim")
    _e2_check(n2)
    e1 = e1_stratum_dim(n1, v)
    if e1 is None:
        raise PreconditionError("v supported on non-trivial types", repr(v))
    rest = n1 - v
    return e1 + hom_g_dim(rest, n2) + hom_g_dim(sym_square_sl2(n1), n2)


def dgla0_dim(n1, n2):
    return hom_g_dim(n1, n2) + hom_g_dim(sym_square_sl2(n1), n2)


def structure_from_fiber_point(M1, M2, y, coeffs):
    """Structure with ``d0 = mu_y`` and ``(d1, f)`` the given combination of the fiber basis."""
    basis = fiber_basis(M1, M2, y)
    e = sl2_structure(M1, M2)
    if y is not None:
        e = replace(e, d0=mu(e, _vec(y)))
    n1, n2 = M1.dim, M2.dim
    D1 = Matrix.zeros(n2, n1, QQ)
    F = [Matrix.zeros(n1, n1, QQ) for _ in range(n2)]
    for c, (d, fs) in zip(coeffs, basis):
        if c:
            D1 = D1 + d * c
            F = [a + b * c for a, b in zip(F, fs)]
    return replace(e, d1=D1, f=tuple(F))
