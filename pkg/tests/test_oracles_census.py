import numpy as np
import pytest

from fixtures import example_c1, random_complex, seeded
from varstrata.census import (batched_rank, dimension_by_census, e1_dimension_by_census,
                              estimate_dimension, exhaustive_census, grassmannian_count)
from varstrata.complexes import identity_map, validate_chain_map, zero_map
from varstrata.errors import InterpolationError, ResourceError
from varstrata.linalg import GF, QQ, Matrix, rank
from varstrata.oracles import orbit_dim_chain_map, orbit_dim_differential, orbit_dim_subcomplex
from varstrata.repring import RepClass
from varstrata.strata import (StratumSpec, build_differential_witness, build_subcomplex_witness,
                              dim_complexes_stratum)


def _diff(v, r):
    return StratumSpec.make("differential", v=v, r=r)


def test_orbit_dim_chain_map():
    C1 = example_c1()
    assert orbit_dim_chain_map(identity_map(C1)) == 5
    assert orbit_dim_chain_map(zero_map(C1, C1)) == 0
    f = validate_chain_map(C1, C1, [Matrix.identity(2), Matrix([[1, 0], [0, 0]], QQ)])
    assert orbit_dim_chain_map(f) == 4


def test_rank_21_stratum_counts_match_orbit():
    spec = StratumSpec.make("chain-map", v=(2, 2), h_v=(1, 1), w=(2, 2), h_w=(1, 1),
                            r=(2, 1), s=(1, 0))
    for q in (2, 3, 5, 7):
        assert exhaustive_census(q, spec).count == (q * q - q) ** 2


def test_orbit_dim_differential():
    assert orbit_dim_differential(example_c1()) == 3
    assert orbit_dim_differential(build_differential_witness((2, 3), (0, 0))) == 0
    assert orbit_dim_differential(build_differential_witness((1, 1), (1, 0))) == 1


def test_orbit_differential_is_basis_independent():
    rng = seeded(21)
    for _ in range(30):
        C = random_complex(rng, max_len=3, max_entry=3)
        assert orbit_dim_differential(C) == dim_complexes_stratum(C.dims, C.rank_vector())


def test_orbit_dim_subcomplex():
    W = example_c1()
    assert orbit_dim_subcomplex(W, build_subcomplex_witness(W, (1, 1), (0, 0))) == 1
    assert orbit_dim_subcomplex(W, build_subcomplex_witness(W, (2, 2), (1, 1))) == 0
    assert orbit_dim_subcomplex(W, build_subcomplex_witness(W, (0, 0), (0, 0))) == 0


@pytest.mark.parametrize("v, r, q, count", [((1, 1), (1, 0), 2, 1), ((2, 2), (1, 0), 2, 9),
                                            ((2, 2), (2, 0), 2, 6), ((2, 2), (1, 0), 3, 32),
                                            ((2, 2), (2, 0), 3, 48)])
def test_differential_census_counts(v, r, q, count):
    res = exhaustive_census(q, _diff(v, r))
    assert res.count == count and res.ambient_dim == v[0] * v[1]


def test_census_degree_estimates():
    assert dimension_by_census(_diff((2, 2), (1, 0)), (2, 3)).dim == 3
    assert dimension_by_census(_diff((2, 2), (2, 0)), (2, 3)).dim == 4
    assert dimension_by_census(_diff((2, 2), (0, 0)), (2, 3)).dim == 0


def test_census_interpolates_when_samples_suffice():
    res = dimension_by_census(_diff((1, 1), (1, 0)), (2, 3, 5))
    assert res.dim == 1 and not res.approximate


def test_estimate_dimension_rejects_inconsistent_samples():
    with pytest.raises(InterpolationError):
        estimate_dimension(((2, 1), (3, 4), (5, 25)), 1)
    with pytest.raises(InterpolationError):
        estimate_dimension(((2, 1), (3, 0)), 5)


def test_census_enforces_cap():
    with pytest.raises(ResourceError):
        exhaustive_census(7, _diff((4, 4), (2, 0)))


def test_exact_census():
    assert exhaustive_census(2, StratumSpec.make("exact", v=(1, 1))).count == 1
    assert exhaustive_census(3, StratumSpec.make("exact", v=(2, 1))).count == 0


def test_grassmannian_count():
    assert grassmannian_count(2, 1, 2) == 3
    assert grassmannian_count(4, 2, 2) == 35


def test_batched_rank_agrees_with_exact_rank():
    rng = np.random.default_rng(3)
    A = rng.integers(0, 3, size=(40, 3, 4))
    got = batched_rank(A, 3)
    for M, r in zip(A, got):
        assert r == rank(Matrix(M.tolist(), GF(3)))


def test_e1_census_example():
    res = e1_dimension_by_census(RepClass({1: 2}), RepClass({1: 1}), qs=(2,))
    assert res.samples == ((2, 9),) and res.dim == 3
