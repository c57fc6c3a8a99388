import pytest

from varstrata.errors import PreconditionError, ValidationError
from varstrata.gstrata import (aut_g_dim, build_g_map_witness, class_box, g_closure_contains,
                               g_grassmannian_dim, g_rank_of_map, g_stratum_dim,
                               g_stratum_nonempty, hom_g_dim, intertwiner_dim_oracle,
                               orbit_dim_g_grassmannian, orbit_dim_g_map, submodule_basis)
from varstrata.linalg import QQ, Matrix
from varstrata.repring import RepClass, irrep_matrices_sl2, module_from_class


def S(k, m=1):
    return RepClass({k: m})


def test_hom_g_dim():
    assert hom_g_dim(S(0) + S(1, 2), S(0, 3) + S(1)) == 5
    assert hom_g_dim(S(1), S(2)) == 0
    assert hom_g_dim(S(3, 4), S(3, 4)) == 16


def test_g_stratum():
    assert g_stratum_nonempty(S(1, 2), S(1, 3), S(1))
    assert g_stratum_dim(S(1, 2), S(1, 3), S(1)) == 4
    assert g_stratum_dim(S(1, 2), S(1, 3), RepClass()) == 0
    assert not g_stratum_nonempty(S(1, 2), S(1, 3), S(1, 3))
    with pytest.raises(PreconditionError):
        g_stratum_dim(S(1, 2), S(1, 3), S(1, 3))


def test_aut_g_dim():
    assert aut_g_dim(S(0) + S(1, 2)) == 5
    assert aut_g_dim(S(4, 3)) == 9
    assert aut_g_dim(RepClass()) == 0


def test_g_closure_contains():
    assert g_closure_contains(S(1, 2), S(1))
    assert not g_closure_contains(S(1), S(2))


def test_g_grassmannian_dim():
    assert g_grassmannian_dim(S(1, 4), S(1, 2)) == 4
    assert g_grassmannian_dim(S(1, 4), S(1, 4)) == 0
    assert g_grassmannian_dim(S(0, 2) + S(2, 3), S(0) + S(2)) == 3
    with pytest.raises(PreconditionError):
        g_grassmannian_dim(S(1), S(1, 2))


def test_intertwiner_oracle():
    S1, S2 = irrep_matrices_sl2(1), irrep_matrices_sl2(2)
    assert intertwiner_dim_oracle(S1, S1) == 1
    assert intertwiner_dim_oracle(S1, S2) == 0
    A, B = module_from_class(S(0) + S(1, 2)), module_from_class(S(0, 3) + S(1))
    assert intertwiner_dim_oracle(A, B) == 5


def test_g_rank_of_map():
    A = module_from_class(S(1, 2))
    B = irrep_matrices_sl2(1)
    assert g_rank_of_map(A, B, Matrix.zeros(2, 4)) == RepClass()
    proj = Matrix([[1, 0, 0, 0], [0, 1, 0, 0]], QQ)
    assert g_rank_of_map(A, B, proj) == S(1)
    c = S(0) + S(2, 2)
    M = module_from_class(c)
    assert g_rank_of_map(M, M, Matrix.identity(M.dim)) == c


def test_g_rank_rejects_non_intertwiner():
    M = irrep_matrices_sl2(1)
    with pytest.raises(ValidationError):
        g_rank_of_map(M, M, Matrix([[1, 0], [0, 0]], QQ))


def test_g_map_witnesses():
    A, B, X = build_g_map_witness(S(1, 2), S(1), S(1))
    assert X == Matrix([[1, 0, 0, 0], [0, 1, 0, 0]], QQ)
    assert g_rank_of_map(A, B, X) == S(1)
    A, B, X = build_g_map_witness(S(1, 2), S(1), RepClass())
    assert X.is_zero()
    n, m = S(0) + S(2, 2), S(2, 3) + S(4)
    A, B, X = build_g_map_witness(n, m, S(2, 2))
    assert g_rank_of_map(A, B, X) == S(2, 2)
    with pytest.raises(PreconditionError):
        build_g_map_witness(S(1), S(1), S(1, 2))


def test_orbit_oracles_match_closed_forms():
    n, m, s = S(1, 2), S(1, 3), S(1)
    A, B, X = build_g_map_witness(n, m, s)
    assert orbit_dim_g_map(A, B, X) == g_stratum_dim(n, m, s)
    M = module_from_class(S(1, 4))
    assert orbit_dim_g_grassmannian(M, submodule_basis(M, S(1, 2))) == 4


def test_class_box():
    box = class_box(range(2), 2, 2)
    assert RepClass() in box and S(0, 2) + S(1, 2) in box
    assert len(box) == len(set(box)) == 9
