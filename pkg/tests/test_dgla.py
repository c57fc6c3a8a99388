from dataclasses import replace

import pytest

from fixtures import (d1_inclusion, d1_plus_trivial, d1_structure, random_vector, seeded,
                      two_copy_structure)
from varstrata.dgla import (DGLAMap, adjoint_module, check_axioms, check_dgla_map,
                            derivation_g_rank, dgla0_dim, dgla_stratum_dim, e1_stratum_dim,
                            fbil, fiber_dim_oracle, gauge_act, mc_residual, mu, push_forward,
                            shift_structure, sl2_structure, twisted_differential, zero_structure)
from varstrata.errors import PreconditionError
from varstrata.linalg import QQ, Matrix
from varstrata.repring import RepClass, irrep_matrices_sl2, module_from_class


def S(k, m=1):
    return RepClass({k: m})


def test_lie_algebra_alone_satisfies_axioms():
    assert check_axioms(zero_structure()).ok


def test_perturbed_bracket_breaks_jacobi():
    e = zero_structure()
    br = [[list(v) for v in row] for row in e.bracket]
    # [e, f] = h + e stays antisymmetric but breaks Jacobi on (e, f, h)
    br[0][1][0] += 1
    br[1][0][0] -= 1
    bad = replace(e, bracket=tuple(tuple(tuple(v) for v in row) for row in br))
    rep = check_axioms(bad)
    assert rep["bracket-antisymmetric"].ok
    assert not rep.ok and not rep["jacobi"].ok and rep["jacobi"].witness


def test_symmetric_square_structure_satisfies_axioms():
    assert check_axioms(d1_structure()).ok
    assert check_axioms(two_copy_structure()).ok


def test_mc_residual():
    e = d1_structure()
    assert mc_residual(e, (0, 0)) == (0, 0, 0)
    assert mc_residual(e, (1, 0)) == fbil(e, (1, 0), (1, 0)) == (1, 0, 0)
    assert mc_residual(e, (1, 0), form="half") == (QQ.reduce(1) / 2, 0, 0)
    flat = sl2_structure(module_from_class(S(1)), module_from_class(S(2)))
    assert mc_residual(flat, (3, -1)) == (0, 0, 0)


def test_twisted_differential():
    e = d1_structure()
    assert twisted_differential(e, (0, 0)) == (e.d0, e.d1)
    d0x, d1x = twisted_differential(e, (0, 0))
    assert (d1x @ d0x).is_zero()


def test_twisted_differential_squares_to_zero_at_mc_points():
    e = two_copy_structure()
    for x in [(1, 2, 1, 2), (1, -3, -1, 3), (0, 5, 0, -5)]:
        assert mc_residual(e, x) == (0, 0, 0)
        d0x, d1x = twisted_differential(e, x)
        assert (d1x @ d0x).is_zero()


def test_gauge_action():
    e = d1_structure()
    assert gauge_act(e, (0, 0, 0), (2, 3)) == (2, 3)
    assert gauge_act(e, (1, 0, 0), (0, 1)) == (1, 1)
    assert gauge_act(e, (1, 0, 0), (0, 0)) == (0, 0)


def test_gauge_requires_nilpotent_action():
    with pytest.raises(ArithmeticError, match="does not terminate"):
        gauge_act(d1_structure(), (0, 0, 1), (1, 0))


def test_dgla_maps():
    e = d1_structure()
    ident = DGLAMap(Matrix.identity(3), Matrix.identity(2), Matrix.identity(3))
    assert check_dgla_map(ident, e, e).ok and push_forward(ident, (2, 5)) == (2, 5)
    z = zero_structure()
    to_zero = DGLAMap(Matrix.identity(3), Matrix.zeros(0, 2), Matrix.zeros(0, 3))
    assert check_dgla_map(to_zero, e, z).ok and push_forward(to_zero, (0, 0)) == ()
    phi = d1_inclusion()
    src, tgt = d1_structure(), d1_plus_trivial()
    assert check_dgla_map(phi, src, tgt).ok
    rng = seeded(8)
    for _ in range(10):
        x = random_vector(rng, 2)
        res = mc_residual(src, x)
        assert push_forward(DGLAMap(None, phi.phi2, None), res) == mc_residual(tgt, push_forward(phi, x))


def test_non_map_is_itemized():
    e = d1_structure()
    bad = DGLAMap(Matrix.identity(3), Matrix.identity(2) * 2, Matrix.identity(3))
    rep = check_dgla_map(bad, e, e)
    assert not rep.ok and [r.name for r in rep.failures()] == ["f"]


def test_shift_structure():
    e = d1_structure()
    assert shift_structure(e, (0, 0)) == e
    rng = seeded(9)
    for _ in range(20):
        x, z = random_vector(rng, 2), random_vector(rng, 2)
        t = shift_structure(e, x)
        assert t.d0 == mu(e, x) * -1
        lhs = mc_residual(e, tuple(a + b for a, b in zip(z, x)))
        rhs = tuple(a + b for a, b in zip(mc_residual(t, z), mc_residual(e, x)))
        assert lhs == rhs
        assert shift_structure(t, tuple(-a for a in x)) == e


def test_derivation_g_rank():
    adj = adjoint_module()
    assert derivation_g_rank(adj, (0, 0, 0)) == RepClass()
    assert derivation_g_rank(adj, (0, 0, 1)) == S(2)
    assert derivation_g_rank(module_from_class(S(0) + S(1)), (1, 1, 1)) == S(1)


def test_e1_stratum_dim():
    assert e1_stratum_dim(S(1, 2), S(1)) == 3
    assert e1_stratum_dim(S(2), RepClass()) == 0
    assert e1_stratum_dim(S(2), S(2)) == 3
    assert e1_stratum_dim(S(0, 2) + S(1), S(1)) == 4
    # rank of S^k (x) C^m tensors is at most k + 1
    assert e1_stratum_dim(S(1, 3), S(1, 3)) is None
    with pytest.raises(PreconditionError):
        e1_stratum_dim(S(1), S(1, 2))


def test_dgla_stratum_dim():
    assert dgla_stratum_dim(S(2), S(2), S(2)) == 3
    with pytest.raises(PreconditionError):
        dgla_stratum_dim(S(1), S(2), RepClass())
    with pytest.raises(PreconditionError):
        dgla_stratum_dim(S(1), S(2), S(3))


def test_dgla0_dim():
    assert dgla0_dim(S(1), S(2)) == 1
    assert dgla0_dim(RepClass(), S(2)) == 0
    assert dgla0_dim(S(2), S(4)) == 1


def test_fiber_oracle():
    S1, S2 = irrep_matrices_sl2(1), irrep_matrices_sl2(2)
    assert fiber_dim_oracle(S1, S2) == 1
    assert fiber_dim_oracle(adjoint_module(), S2, y=(0, 0, 1)) == 0
    assert fiber_dim_oracle(S1, module_from_class(RepClass())) == 0
    assert fiber_dim_oracle(irrep_matrices_sl2(2), irrep_matrices_sl2(4)) == dgla0_dim(S(2), S(4))
