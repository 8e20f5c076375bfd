import math

import numpy as np
import pytest

from ymaudit.ansatz import RealPartField, ZeroField, paper_presets
from ymaudit.field_calculus import (DifferentiationScheme, closed_form_field_strength,
                                    convergence_study, el_residual, field_strength,
                                    hamiltonian_density, lagrangian_density,
                                    reduced_residual_study, weights)
from ymaudit.geometry import EUCLIDEAN_NEGATIVE, MINKOWSKI
from ymaudit.lie_algebra import su_structure_constants

F2 = su_structure_constants(2)
SINGLE = paper_presets("paper-single")


def test_scheme_validation():
    with pytest.raises(ValueError):
        DifferentiationScheme(3)
    with pytest.raises(ValueError):
        DifferentiationScheme(4, 0.0)
    with pytest.raises(ValueError):
        DifferentiationScheme(4, 1e-3, "adaptive")
    s = DifferentiationScheme(2, 1e-2, "relative")
    np.testing.assert_allclose(s.steps_at(np.array([[0.0, 0, 0, 0], [3.0, 4.0, 0, 0]])), [1e-2, 5e-2])
    assert s.with_step(1e-3).step == 1e-3


def test_weights():
    lo, up = weights(MINKOWSKI, "literal")
    np.testing.assert_array_equal(lo, 1)
    np.testing.assert_array_equal(up, MINKOWSKI.g)
    lo, up = weights(MINKOWSKI, "strict")
    np.testing.assert_array_equal(lo, MINKOWSKI.g)
    np.testing.assert_array_equal(up, 1)
    lo, up = weights(EUCLIDEAN_NEGATIVE, "metric-free")
    np.testing.assert_array_equal(lo, 1)
    np.testing.assert_array_equal(up, 1)
    with pytest.raises(ValueError):
        weights(MINKOWSKI, "other")


def test_field_strength_hand_value():
    # r = (1, 1, -1), E = e^-3, K_1 E = -6E, K_2 E = 4E  =>  F_12 = -10 (1+i) e^-3
    x = np.array([[0.0, 1.0, 0.0, 0.0]])
    Fs = field_strength(SINGLE, x, 1.0, F2)
    expected = -10 * (1 + 1j) * math.exp(-3)
    assert abs(Fs.F[0, 0, 1, 2] - expected) <= 1e-10
    assert Fs.commutator_norm == 0.0
    assert not Fs.flagged
    assert abs(closed_form_field_strength(SINGLE, x)[0, 0, 1, 2] - expected) <= 1e-15


@pytest.mark.parametrize("metric", ["minkowski", "euclidean-negative"])
@pytest.mark.parametrize("convention", ["literal", "strict"])
def test_fd_matches_closed_form(metric, convention):
    x = np.random.default_rng(0).uniform(-1, 1, size=(30, 4))
    Fs = field_strength(SINGLE, x, 1.0, F2, metric=metric, convention=convention)
    Fc = closed_form_field_strength(SINGLE, x, metric, convention)
    assert np.abs(Fs.F - Fc).max() <= 1e-9
    assert np.abs(Fs.F + np.swapaxes(Fs.F, -1, -2)).max() == 0.0


def test_fd_order():
    x = np.random.default_rng(1).uniform(-1, 1, size=(10, 4))
    Fc = closed_form_field_strength(SINGLE, x)
    for order, expected in ((2, 2.0), (4, 4.0)):
        errs = [np.abs(field_strength(SINGLE, x, 1.0, F2, DifferentiationScheme(order, h)).F - Fc).max()
                for h in (2e-2, 1e-2)]
        assert math.log2(errs[0] / errs[1]) == pytest.approx(expected, abs=0.2)


def test_zero_field_residual():
    rep = el_residual(ZeroField(), np.zeros((3, 4)), 1.0, F2)
    assert rep.max_abs() == {"full": 0.0, "line1": 0.0, "line2": 0.0, "line3": 0.0, "commutator_norm": 0.0}


def test_reduced_residual_frozen():
    x = np.random.default_rng(0).uniform(-2, 2, size=(100, 4))
    st = reduced_residual_study(SINGLE, x, 1.0, F2)
    assert st.observed_order == pytest.approx(4.0, abs=0.05)
    assert st.extrapolated_max == pytest.approx(32.0667, rel=1e-4)
    rep = el_residual(SINGLE, x, 1.0, F2)
    assert np.abs(rep.line1).max() == 0.0
    assert np.abs(rep.line2).max() > 1.0
    assert st.as_dict()["observed_order"] == st.observed_order


def test_convergence_study_on_exact_zero():
    def fn(scheme):
        return np.zeros((4, 2)), np.ones(4)
    st = convergence_study(fn, 4)
    assert st.extrapolated_max == 0.0


def test_densities_single_term():
    x = np.concatenate([np.zeros((50, 1)), np.random.default_rng(2).normal(size=(50, 3))], axis=1)
    real = RealPartField(SINGLE)
    Fs = field_strength(real, x, 1.0, F2, DifferentiationScheme(4, 1e-4))
    assert np.abs(lagrangian_density(Fs, "minkowski").L).max() <= 1e-10
    dens = hamiltonian_density(real, x, 1.0, F2, "minkowski")
    assert np.abs(dens.kinetic).max() <= 1e-10
    with pytest.raises(ValueError, match="metric"):
        lagrangian_density(Fs, "euclidean-negative")
