import json
import math
import pathlib

import pytest

from ymaudit.claims import (CLAIMS, ClaimParams, claim_registry, fit_power_law, get_claim,
                            equivalence_search, resolve_anchor, run_claim, run_claims, sweep_beta,
                            warmup_1d)

PI32 = math.pi ** 1.5
SOURCE_TEXT = pathlib.Path(__file__).resolve().parents[1] / "paper.md"
EUCL = ClaimParams(metric="euclidean-negative")


def test_registry():
    reg = claim_registry()
    assert [c.id for c in reg] == [f"C{i}" for i in range(1, 15)]
    assert len({c.anchor for c in reg}) == 14
    with pytest.raises(KeyError, match="unknown claim"):
        get_claim("C99")
    with pytest.raises(KeyError):
        run_claim("C0")


@pytest.mark.skipif(not SOURCE_TEXT.exists(), reason="source text not present")
def test_anchors_resolve():
    text = SOURCE_TEXT.read_text()
    for c in claim_registry():
        assert resolve_anchor(c.anchor, text) is not None, c.id
    assert resolve_anchor((0, 10, "0" * 16), text) is None


def test_params_validation():
    with pytest.raises(ValueError):
        ClaimParams(beta=0.0)
    with pytest.raises(ValueError):
        ClaimParams(metric="flat")
    assert ClaimParams(s=(1, 2, 0)).s2 == 5.0


DEFAULT_STATUS = {"C1": "CONFIRMED", "C2": "CONFIRMED", "C3": "DISCREPANT", "C4": "DISCREPANT",
                  "C5": "CONFIRMED", "C6": "CONFIRMED", "C7": "CONFIRMED", "C8": "CONFIRMED",
                  "C9": "DISCREPANT", "C10": "CONFIRMED", "C11": "DISCREPANT", "C12": "CONFIRMED",
                  "C13": "DISCREPANT", "C14": "DISCREPANT"}


def test_default_statuses():
    verdicts = run_claims()
    assert {v.claim_id: v.status for v in verdicts} == DEFAULT_STATUS
    assert not any(v.internal_gate_failed for v in verdicts)
    for v in verdicts:
        json.dumps(v.to_dict(), allow_nan=False)


def test_filter_and_order():
    assert [v.claim_id for v in run_claims(["C11", "C2", "C11"])] == ["C2", "C11"]


def test_c4_values():
    v = run_claim("C4")
    assert v.computed_oracle == pytest.approx(PI32 / 2, rel=1e-12)
    assert v.computed_quadrature == pytest.approx(PI32 / 2, rel=1e-10)
    assert v.paper_stated == pytest.approx(4 * (math.pi / 2) ** 1.5, rel=1e-14)   # sum c_k^2 = 4
    assert v.details["stated_matches_normalisation"] == "beta^2"
    b2 = run_claim("C4", ClaimParams(beta=2.0))
    assert b2.computed_oracle == pytest.approx(v.computed_oracle / 8, rel=1e-12)


def test_c6_euclidean():
    v = run_claim("C6", EUCL)
    assert v.status == "DISCREPANT"
    assert v.computed_oracle == pytest.approx(9 * PI32 / 4, rel=1e-12)
    assert v.paper_stated == pytest.approx(9 * PI32 / 16, rel=1e-14)
    assert v.paper_stated == pytest.approx(3.1321845, abs=1e-7)
    assert v.rel_dev_internal <= 1e-8
    assert run_claim("C6", EUCL.with_(x0_rotation=True)).computed_oracle == pytest.approx(
        v.computed_oracle, rel=1e-12)


def test_c7_and_c8_euclidean():
    assert run_claim("C7", EUCL).status == "CONFIRMED"
    v = run_claim("C8", EUCL)
    assert v.status == "CONFIRMED"
    assert v.computed_oracle == pytest.approx(2.25, rel=1e-12)


def test_c8_minkowski_exponent_undefined():
    v = run_claim("C8")
    assert v.details["exponent_note"] == "exponent undefined at zero energy"


def test_c9_values():
    v = run_claim("C9")
    assert v.computed_oracle == pytest.approx(-4.247034869672361, rel=1e-10)
    assert v.details["energy_sign"] == -1
    names = {c["name"]: c for c in v.checks}
    assert names["coefficient sum -13/3 + 8 - 170/21"]["value"] == pytest.approx(-31 / 7)
    assert names["kinetic integral"]["value"] == pytest.approx(-0.62369, abs=1e-5)


def test_c11_warmup():
    v = warmup_1d(1.0)
    assert v.computed_oracle == 0.5
    assert v.paper_stated == pytest.approx(1 / math.sqrt(2))
    assert warmup_1d(2.0).computed_oracle == pytest.approx(0.25)
    with pytest.raises(ValueError):
        warmup_1d(-1.0)


def test_c13_exact_time_dependence():
    v = run_claim("C13")
    assert v.details["matching_forms"] == []
    assert v.checks[2]["passed"]


def test_equivalence_search_counts():
    res = equivalence_search(seed=0, draws=300)
    assert res["squared_counterexamples"] == 0
    assert res["strata"]["generic"]["counterexamples"] == 0
    assert res["strata"]["isotropic"]["counterexamples"] > 0


def test_determinism():
    a = [v.to_dict() for v in run_claims(["C3", "C9", "C14"])]
    b = [v.to_dict() for v in run_claims(["C3", "C9", "C14"])]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_sweeps():
    norm = sweep_beta("norm")
    assert norm.fitted_exponent == pytest.approx(-3.0, abs=1e-9) and norm.r2 >= 0.9999
    assert norm.status == "CONFIRMED"
    assert norm.values[0] / norm.values[1] == pytest.approx(8.0, rel=1e-12)
    ratio = sweep_beta("ratio", EUCL)
    assert ratio.fitted_exponent == pytest.approx(2.0, abs=1e-9)
    assert sweep_beta("energy").fitted_exponent is None
    with pytest.raises(ValueError, match="two distinct"):
        sweep_beta("norm", betas=[1.0])
    with pytest.raises(ValueError, match="unknown"):
        sweep_beta("mass")


def test_power_law_fit_constant():
    slope, r2 = fit_power_law([0.5, 1, 2, 4], [3.0, 3.0, 3.0, 3.0])
    assert slope == pytest.approx(0.0, abs=1e-12) and r2 == 1.0
