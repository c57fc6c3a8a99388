"""Shared builders for tests: seeded random complexes and maps, DGLA fixtures."""

import random
from fractions import Fraction

from varstrata.complexes import conjugate_complex, hom0_basis, validate_chain_map, validate_complex
from varstrata.dgla import DGLAMap, sl2_structure
from varstrata.linalg import QQ, Matrix, block_diagonal, random_invertible
from varstrata.repring import RepClass, module_from_class
from varstrata.strata import build_differential_witness, complexes_nonempty, stratum_homology


def example_c1():
    return validate_complex((2, 2), [Matrix([[0, 1], [0, 0]], QQ, ncols=2)], QQ)


def random_rank_vector(v, rng):
    """Uniform over admissible rank vectors for ``v`` (rejection from the box)."""
    n = len(v)
    while True:
        r = tuple(rng.randint(0, v[i + 1] if i + 1 < n else 0) for i in range(n))
        if complexes_nonempty(v, r):
            return r


def random_complex(rng, max_len=4, max_entry=3, v=None, r=None):
    """A complex in a random basis: a 0/1 witness conjugated by random invertibles."""
    if v is None:
        v = tuple(rng.randint(0, max_entry) for _ in range(rng.randint(1, max_len)))
    if r is None:
        r = random_rank_vector(v, rng)
    C = build_differential_witness(v, r)
    return conjugate_complex(C, [random_invertible(d, rng) for d in v])


def random_profile(rng, n, max_entry=3):
    """Random ``(v, h)`` of a complex with ``n`` degrees."""
    v = tuple(rng.randint(0, max_entry) for _ in range(n))
    return v, stratum_homology(v, random_rank_vector(v, rng))


def random_chain_map(V, W, rng, spread=2):
    """Random integer combination of a basis of degree-0 chain maps."""
    comps = [Matrix.zeros(W.dims[i], V.dims[i], QQ) for i in range(len(V.dims))]
    for basis_map in hom0_basis(V, W):
        c = rng.randint(-spread, spread)
        if c:
            comps = [a + b * c for a, b in zip(comps, basis_map)]
    return validate_chain_map(V, W, comps)


def seeded(seed):
    return random.Random(seed)


# -- DGLA fixtures ----------------------------------------------------------------

HALF = Fraction(1, 2)

# symmetric square S^1 x S^1 -> S^2 in the ladder bases: u0^2 -> v0, u0 u1 -> v1/2, u1^2 -> v2
SQUARE = (
    Matrix([[1, 0], [0, 0]], QQ, ncols=2),
    Matrix([[0, HALF], [HALF, 0]], QQ, ncols=2),
    Matrix([[0, 0], [0, 1]], QQ, ncols=2),
)


def d1_structure():
    """sl2 acting on E^1 = S^1, E^2 = S^2, zero differentials, f the symmetric square."""
    return sl2_structure(module_from_class(RepClass({1: 1})), module_from_class(RepClass({2: 1})),
                         f=SQUARE)


def two_copy_structure():
    """E^1 = 2 S^1, E^2 = S^2, f(x, y) = sq(x1, y1) - sq(x2, y2).

    Maurer-Cartan points are exactly ``(u, u)`` and ``(u, -u)``.
    """
    F = tuple(block_diagonal([F, F * -1], QQ) for F in SQUARE)
    return sl2_structure(module_from_class(RepClass({1: 2})), module_from_class(RepClass({2: 1})),
                         f=F)


def random_mc_point(rng, spread=3):
    u = (rng.randint(-spread, spread), rng.randint(-spread, spread))
    sign = rng.choice((1, -1))
    return u + (sign * u[0], sign * u[1])


def random_vector(rng, n, spread=3):
    return tuple(Fraction(rng.randint(-spread, spread), rng.randint(1, 2)) for _ in range(n))


def nilpotent_generator(rng, spread=3):
    """A multiple of e or of f in sl2 (basis e, f, h)."""
    t = Fraction(rng.randint(-spread, spread), rng.randint(1, 3))
    return (t, 0, 0) if rng.random() < 0.5 else (0, t, 0)


def copy_swap_map():
    """Swap the two copies of S^1; f changes sign, so E^2 is negated."""
    swap = Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], QQ, ncols=4)
    return DGLAMap(Matrix.identity(3, QQ), swap, Matrix.identity(3, QQ) * -1)


def scaling_map(lam):
    """``(1, lam, lam^2)``: a DGLA endomorphism whenever the differentials vanish."""
    return DGLAMap(Matrix.identity(3, QQ), Matrix.identity(4, QQ) * lam,
                   Matrix.identity(3, QQ) * (lam * lam))


def d1_plus_trivial():
    """``d1_structure`` with a trivial summand added to E^1; f ignores the new coordinate."""
    F = tuple(block_diagonal([F, Matrix.zeros(1, 1, QQ)], QQ) for F in SQUARE)
    return sl2_structure(module_from_class(RepClass({0: 1, 1: 1})),
                         module_from_class(RepClass({2: 1})), f=_reorder_trivial_first(F))


def _reorder_trivial_first(F):
    """Move the appended coordinate to the front, matching module_from_class(S^0 + S^1)."""
    perm = [2, 0, 1]
    return tuple(Matrix([[M[perm[i], perm[j]] for j in range(3)] for i in range(3)], QQ, ncols=3)
                 for M in F)


def d1_inclusion():
    """Inclusion of ``d1_structure`` into ``d1_plus_trivial``: S^1 onto the last two coordinates."""
    inc = Matrix([[0, 0], [1, 0], [0, 1]], QQ, ncols=2)
    return DGLAMap(Matrix.identity(3, QQ), inc, Matrix.identity(3, QQ))
