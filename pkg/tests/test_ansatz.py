import math

import numpy as np
import pytest

from ymaudit.ansatz import (PAPER_PAIR_D2, PAPER_SINGLE_D, AnsatzSpec, FieldOverflowError,
                            RealPartField, RotatedField, SumAnsatz, ZeroField, eval_field,
                            paper_presets, random_admissible_spec, spec_from_dict, spec_to_dict,
                            validate_conditions)


def test_single_preset_conditions():
    rep = validate_conditions(paper_presets("paper-single"))
    assert rep.all_passed
    assert [c.name for c in rep.conditions] == ["gauge", "null_direction", "orthogonality", "column"]
    assert max(c.residual for c in rep.conditions) <= 1e-12
    assert not rep.degenerate
    assert rep.null_alternative.passed
    assert not rep.ratio_alternative.passed
    assert rep.pair_products.residual == pytest.approx(4.0, abs=1e-12)


def test_pair_preset_terms():
    pair = paper_presets("paper-pair", beta=0.7)
    assert isinstance(pair, SumAnsatz)
    assert pair.beta == 0.7
    for t in pair.terms:
        assert validate_conditions(t).all_passed
    np.testing.assert_array_equal(pair.terms[1].d, PAPER_PAIR_D2)
    assert abs(np.sum(PAPER_SINGLE_D[:3] ** 2)) <= 1e-12


def test_gauge_violation_named():
    spec = paper_presets("paper-single")
    bad = spec.with_(d=np.array([*spec.d[:3], 1.0]))
    rep = validate_conditions(bad)
    assert rep.failed == ["gauge"]
    with pytest.raises(ValueError, match="gauge"):
        bad.with_(el_valid=True)


def test_degenerate_zero_d():
    spec = paper_presets("paper-single").with_(d=np.zeros(4))
    assert validate_conditions(spec).degenerate


@pytest.mark.parametrize("stratum", ["generic", "isotropic", "proportional"])
def test_random_admissible(stratum):
    rng = np.random.default_rng(11)
    for _ in range(20):
        rep = validate_conditions(random_admissible_spec(rng, stratum=stratum))
        assert {"gauge", "orthogonality", "column"}.isdisjoint(rep.failed)
        if stratum == "isotropic":
            assert rep.all_passed
        if stratum == "proportional":
            assert rep.ratio_alternative.passed
    with pytest.raises(ValueError, match="stratum"):
        random_admissible_spec(rng, stratum="nope")


def test_field_values():
    spec = paper_presets("paper-single", beta=1.0, s=np.array([0.0, 2.0, 0.0]))
    x = np.array([[0.0, 1.0, 0.0, 0.0]])
    smp = eval_field(spec, x)
    assert smp.A.shape == (1, 3, 4)
    np.testing.assert_allclose(smp.A[0, 1], 2 * math.exp(-3) * PAPER_SINGLE_D, rtol=1e-14)
    assert np.all(smp.A[0, 0] == 0)
    np.testing.assert_array_equal(smp.charge, [0, 2, 0])
    np.testing.assert_allclose(RealPartField(spec).evaluate(x).A, smp.A.real)
    # rotation: evaluating at (i t, x)
    t = np.array([[0.4, 0.2, -0.1, 0.3]])
    xr = t.astype(complex)
    xr[0, 0] = 0.4j
    np.testing.assert_allclose(RotatedField(spec).evaluate(t).A, eval_field(spec, xr).A)


def test_sum_ansatz_factoring():
    pair = paper_presets("paper-pair")
    smp = pair.evaluate(np.zeros((2, 4)))
    assert smp.charge is not None
    mixed = paper_presets("paper-pair", s2=np.array([0.0, 1.0, 0.0]))
    assert mixed.evaluate(np.zeros((2, 4))).charge is None
    t1, t2 = pair.terms
    with pytest.raises(ValueError, match="beta"):
        SumAnsatz((t1, t2.with_(beta=2.0)))
    with pytest.raises(ValueError):
        SumAnsatz(())


def test_overflow_guard():
    spec = paper_presets("paper-single")
    with pytest.raises(FieldOverflowError):
        eval_field(spec, np.array([[40.0, 0, 0, 0]]))   # exponent x_0^2 / 2 = 800
    assert np.isfinite(eval_field(spec, np.array([[30.0, 0, 0, 0]])).A).all()


def test_zero_field():
    smp = ZeroField().evaluate(np.ones((5, 4)))
    assert smp.A.shape == (5, 3, 4) and not smp.A.any()


def test_spec_round_trip():
    spec = paper_presets("paper-single", beta=1.5, s=np.array([0.3, 0.4, 0.0]))
    back = spec_from_dict(spec_to_dict(spec))
    np.testing.assert_array_equal(back.s, spec.s)
    np.testing.assert_array_equal(back.d, spec.d)
    np.testing.assert_array_equal(back.forms.alpha, spec.forms.alpha)
    assert back.beta == 1.5
    d = spec_to_dict(spec)
    del d["beta"]
    with pytest.raises(KeyError, match="beta"):
        spec_from_dict(d)


def test_bad_shapes():
    with pytest.raises(ValueError, match="4 components"):
        AnsatzSpec(np.ones(3), np.ones(3), paper_presets("paper-single").forms, 1.0)
