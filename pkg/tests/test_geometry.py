import math

import numpy as np
import pytest

from ymaudit.geometry import (EUCLIDEAN_NEGATIVE, MINKOWSKI, PAPER_PAIR_CHANGE, PAPER_SINGLE_CHANGE,
                              AffineChange, LinearFormSet, Metric, Point, dependence_determinant,
                              eval_forms, get_metric, raise_lower, y_transform)


def test_metrics():
    assert np.array_equal(MINKOWSKI.g, [1, -1, -1, -1])
    assert np.array_equal(EUCLIDEAN_NEGATIVE.g, [-1, -1, -1, -1])
    assert get_metric("minkowski") is MINKOWSKI
    assert get_metric(EUCLIDEAN_NEGATIVE) is EUCLIDEAN_NEGATIVE
    with pytest.raises(ValueError, match="unknown metric"):
        get_metric("riemannian")
    with pytest.raises(ValueError):
        Metric("bad", (1.0, 2.0, 1.0, 1.0))


def test_raise_lower_involution():
    v = np.array([1.0, 2.0, -3.0, 0.5])
    for m in (MINKOWSKI, EUCLIDEAN_NEGATIVE):
        np.testing.assert_array_equal(raise_lower(raise_lower(v, m), m), v)
    p = Point.from_upper([1.0, 2.0, 3.0, 4.0], MINKOWSKI)
    np.testing.assert_array_equal(p.x, [1, -2, -3, -4])
    np.testing.assert_array_equal(p.upper(MINKOWSKI), [1, 2, 3, 4])


def test_affine_change():
    assert PAPER_SINGLE_CHANGE.absdet == pytest.approx(2 * math.sqrt(2), rel=1e-14)
    assert PAPER_PAIR_CHANGE.absdet == pytest.approx(math.sqrt(6) * 2 * math.sqrt(14 / 3), rel=1e-14)
    y = np.array([[0.3, -1.0, 2.0]])
    x = PAPER_SINGLE_CHANGE.to_x(y)
    np.testing.assert_allclose(x @ PAPER_SINGLE_CHANGE.M.T, y, atol=1e-14)
    yy, jac = y_transform(PAPER_SINGLE_CHANGE, np.concatenate([[[0.0]], x], axis=1))
    np.testing.assert_allclose(yy, y, atol=1e-14)
    assert jac == pytest.approx(1 / (2 * math.sqrt(2)))
    with pytest.raises(ValueError, match="singular"):
        AffineChange(np.zeros((3, 3)))


def test_forms():
    a = np.zeros((4, 2), complex)
    a[1, 0] = 1.0
    a[3, 0] = 1.0
    forms = LinearFormSet(a)
    assert forms.n_forms == 2
    assert forms.column_condition_defect() == 0.0
    vals = eval_forms(forms, np.array([[0.5, 2.0, 0.0, 1.0]]))
    np.testing.assert_allclose(vals.r, [[3.0, 0.0]])
    bad = a.copy()
    bad[3, 0] = 2.0
    with pytest.raises(ValueError, match="EL-valid"):
        LinearFormSet(bad, el_valid=True)
    cx = a.copy()
    cx[1, 1] = 1j
    with pytest.raises(ValueError, match="complex"):
        LinearFormSet(cx).spatial_real_part()
    with pytest.raises(ValueError, match="shape"):
        LinearFormSet(np.zeros((3, 2)))


def test_dependence_determinant():
    eye = np.zeros((4, 3), complex)
    eye[:3, :3] = np.eye(3)
    assert dependence_determinant(LinearFormSet(eye)) == pytest.approx(1.0)
    with pytest.raises(ValueError, match="three forms"):
        dependence_determinant(LinearFormSet(eye[:, :2]))
