import numpy as np
import pytest

from ymaudit.ansatz import FieldSample
from ymaudit.lie_algebra import (GeneratorSet, commutator_term, paired_contraction,
                                 structure_constants, su_generators, su_structure_constants)


@pytest.mark.parametrize("n,dim", [(2, 3), (3, 8)])
def test_generator_invariants(n, dim):
    gens = su_generators(n)
    assert gens.dim == dim
    defects = gens.check()
    assert set(defects) == {"hermitian", "traceless", "orthonormal"}
    assert max(defects.values()) <= 1e-12
    assert gens.is_valid()


@pytest.mark.parametrize("n", [2, 3])
def test_structure_constants(n):
    f = su_structure_constants(n)
    assert f.f[0, 1, 2] == pytest.approx(1.0, abs=1e-12)
    assert f.antisymmetry_defect() <= 1e-12
    assert f.reconstruction_defect(su_generators(n)) <= 1e-12
    assert np.isrealobj(f.f)


def test_su3_known_values():
    f = su_structure_constants(3).f
    assert f[0, 3, 6] == pytest.approx(0.5, abs=1e-12)
    assert f[3, 4, 7] == pytest.approx(np.sqrt(3) / 2, abs=1e-12)
    assert f[5, 6, 7] == pytest.approx(np.sqrt(3) / 2, abs=1e-12)


def test_su2_is_levi_civita():
    f = su_structure_constants(2).f
    eps = np.zeros((3, 3, 3))
    for (a, b, c), sgn in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
                           (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}.items():
        eps[a, b, c] = sgn
    assert np.array_equal(f, eps)


def test_unsupported_rank():
    with pytest.raises(ValueError, match="unsupported"):
        su_generators(4)


def test_non_orthonormal_generators_rejected():
    gens = su_generators(2)
    with pytest.raises(ValueError, match="trace-orthonormal"):
        structure_constants(GeneratorSet(2, 2 * gens.matrices))


def test_factored_commutator_is_exactly_zero():
    rng = np.random.default_rng(3)
    f = su_structure_constants(3)
    s = rng.normal(size=8)
    E = rng.normal(size=4) + 1j * rng.normal(size=4)
    smp = FieldSample(np.outer(s, E), s, E)
    for mu in range(4):
        for nu in range(4):
            assert np.all(commutator_term(smp, f, mu, nu) == 0)


def test_generic_commutator_methods_agree():
    rng = np.random.default_rng(4)
    f = su_structure_constants(3)
    A = rng.normal(size=(8, 4))
    paired = commutator_term(A, f, 0, 1)
    double = commutator_term(A, f, 0, 1, method="double")
    assert np.abs(paired).max() > 1e-3
    np.testing.assert_allclose(paired, double, atol=1e-14)


def test_commutator_antisymmetric_in_indices():
    A = np.random.default_rng(5).normal(size=(3, 4))
    f = su_structure_constants(2)
    np.testing.assert_allclose(commutator_term(A, f, 1, 2), -commutator_term(A, f, 2, 1))


def test_commutator_argument_errors():
    f = su_structure_constants(2)
    with pytest.raises(IndexError):
        commutator_term(np.zeros((3, 4)), f, 0, 4)
    with pytest.raises(IndexError):
        commutator_term(np.zeros((8, 4)), f, 0, 1)
    with pytest.raises(ValueError):
        commutator_term(np.ones((3, 4)), f, 0, 1, method="bogus")


def test_paired_contraction_cross_product():
    f = su_structure_constants(2)
    u, v = np.array([1.0, 0, 0]), np.array([0, 1.0, 0])
    np.testing.assert_allclose(paired_contraction(f, u, v), np.cross(u, v))
