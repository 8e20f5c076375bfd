"""One test per acceptance criterion; each records a PASS/FAIL line."""

import math
import time

import numpy as np

from ymaudit.ansatz import FieldSample, RealPartField, paper_presets, validate_conditions
from ymaudit.claims import ClaimParams, run_claim, sweep_beta
from ymaudit.claims import analytic
from ymaudit.claims.engine import PI32, density_integrand, quadrature_setup
from ymaudit.geometry import AffineChange
from ymaudit.lie_algebra import commutator_term, su_generators, su_structure_constants
from ymaudit.quadrature import integrate_poly_gaussian_3d, quadrature_integrate, random_polynomial

EUCL = ClaimParams(metric="euclidean-negative")


def _check(v, name):
    return next(c for c in v.checks if c["name"].startswith(name))


def test_01_lie_algebra(criterion):
    t = time.perf_counter()
    worst, f123 = 0.0, []
    for n in (2, 3):
        g = su_generators(n)
        f = su_structure_constants(n)
        worst = max(worst, *g.check().values(), f.antisymmetry_defect(), f.reconstruction_defect(g))
        f123.append(f.f[0, 1, 2])
    dt = time.perf_counter() - t
    ok = worst <= 1e-12 and all(abs(v - 1) <= 1e-12 for v in f123) and dt < 1
    assert criterion(1, ok, f"max defect {worst:.1e}, f_123 = {[float(v) for v in f123]}, {dt:.2f}s")


def test_02_conditions(criterion):
    t = time.perf_counter()
    specs = [paper_presets("paper-single"), *paper_presets("paper-pair").terms]
    worst = max(c.residual for s in specs for c in validate_conditions(s).conditions)
    passed = all(validate_conditions(s).all_passed for s in specs)
    d = specs[0].d
    null = abs(np.sum(d[:3] ** 2))
    d_ok = np.allclose(d, [math.sqrt(2) * (1 - 1j), 1 + 1j, 1 + 1j, 0], rtol=0, atol=1e-15)
    dt = time.perf_counter() - t
    ok = passed and worst <= 1e-12 and null <= 1e-12 and d_ok and dt < 1
    assert criterion(2, ok, f"max residual {worst:.1e}, |sum d_l^2| = {null:.1e}, {dt:.2f}s")


def test_03_commutator_cancellation(criterion):
    t = time.perf_counter()
    rng = np.random.default_rng(2024)
    nonzero = 0
    for n in (2, 3):
        f = su_structure_constants(n)
        for _ in range(100):
            s = rng.normal(size=f.dim)
            E = rng.normal(size=4) + 1j * rng.normal(size=4)
            smp = FieldSample(np.outer(s, E), s, E)
            for mu in range(4):
                for nu in range(4):
                    nonzero += int(np.count_nonzero(commutator_term(smp, f, mu, nu)))
    dt = time.perf_counter() - t
    v = run_claim("C1")
    ok = nonzero == 0 and v.status == "CONFIRMED" and dt < 5
    assert criterion(3, ok, f"{nonzero} nonzero entries over 2 x 100 x 16 contractions, C1 {v.status}, {dt:.2f}s")


def test_04_el_residual_convergence(criterion):
    t = time.perf_counter()
    v = run_claim("C3", ClaimParams(beta=1.0))
    dt = time.perf_counter() - t
    st = v.details["study"]
    order_ok = abs(st["observed_order"] - 4) <= 0.3
    resid_ok = st["extrapolated_max_relative"] <= 1e-8
    ok = order_ok and resid_ok and dt < 30
    assert criterion(4, ok, f"observed order {st['observed_order']:.3f}, extrapolated relative residual "
                             f"{st['extrapolated_max_relative']:.3e} (need <= 1e-8), {dt:.2f}s")


def test_05_oracle_quadrature(criterion):
    t = time.perf_counter()
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(50):
        A = rng.normal(size=(3, 3))
        Q = A @ A.T + 0.5 * np.eye(3)
        P = random_polynomial(rng, max_degree=6) + 1.0

        def fn(p, P=P, Q=Q):
            x = p[:, 1:]
            return P.eval(x) * np.exp(-np.einsum("ni,ij,nj->n", x, Q, x))
        o = integrate_poly_gaussian_3d(P, Q)
        q = quadrature_integrate(fn, AffineChange(np.linalg.cholesky(Q).T)).value
        worst = max(worst, abs(o - q) / abs(o))
    params = ClaimParams()
    spec = paper_presets("paper-single")
    terms = analytic.symbolic_terms(spec, "minkowski", real=True)
    o = analytic.integrate_pieces(analytic.norm_pieces(terms))
    change, sc = quadrature_setup("paper-single", 1.0)
    q = quadrature_integrate(density_integrand(RealPartField(spec), "minkowski", "norm", params),
                             change, scale=sc).value
    norm_dev = abs(o - q) / abs(o)
    v = run_claim("C4")
    reported = (v.computed_oracle is not None and v.paper_stated is not None
                and v.details.get("stated_matches_normalisation") in ("beta^2", "2 beta^2", "neither"))
    dt = time.perf_counter() - t
    ok = worst <= 1e-10 and norm_dev <= 1e-10 and reported and dt < 10
    assert criterion(5, ok, f"random worst {worst:.1e}, norm {norm_dev:.1e}, C4 computed "
                             f"{v.computed_oracle:.6f} vs stated {v.paper_stated:.6f} matches "
                             f"{v.details.get('stated_matches_normalisation')}, {dt:.2f}s")


def test_06_minkowski_null_lagrangian(criterion):
    t = time.perf_counter()
    v = run_claim("C5")
    dt = time.perf_counter() - t
    ok = v.status == "CONFIRMED" and v.computed_oracle <= 1e-10 and dt < 5
    assert criterion(6, ok, f"max |L_R| / scale = {v.computed_oracle:.2e} over 1000 points, {dt:.2f}s")


def test_07_euclidean_energy(criterion):
    t = time.perf_counter()
    c6 = run_claim("C6", EUCL)
    c7 = run_claim("C7", EUCL)
    dt = time.perf_counter() - t
    stated = PI32 / 16 * 9
    ok = (c6.rel_dev_internal <= 1e-8 and c6.computed_oracle is not None
          and abs(c6.paper_stated - stated) <= 1e-12 * stated
          and c7.status == "CONFIRMED" and abs(c7.computed_oracle) <= 1e-10 and dt < 10)
    assert criterion(7, ok, f"C6 internal {c6.rel_dev_internal:.1e}, computed {c6.computed_oracle:.6f} "
                             f"vs stated {c6.paper_stated:.6f} ({c6.status}); C7 kinetic "
                             f"{c7.computed_oracle:.1e} ({c7.status}), {dt:.2f}s")


def test_08_scaling_sweeps(criterion):
    t = time.perf_counter()
    norm_m = sweep_beta("norm", ClaimParams())
    norm_e = sweep_beta("norm", EUCL)
    ratio = sweep_beta("ratio", EUCL)
    dt = time.perf_counter() - t
    ok = (all(abs(s.fitted_exponent + 3) <= 0.01 and s.r2 >= 0.9999 for s in (norm_m, norm_e))
          and abs(ratio.fitted_exponent - 2) <= 0.01 and dt < 20)
    assert criterion(8, ok, f"norm {norm_m.fitted_exponent:.6f} (r^2 {norm_m.r2:.8f}), Euclidean ratio "
                             f"{ratio.fitted_exponent:.6f}, {dt:.2f}s")


def test_09_cross_term_audit(criterion):
    t = time.perf_counter()
    v = run_claim("C9")
    dt = time.perf_counter() - t
    dev = _check(v, "pointwise L_R against the stated y-polynomial")["value"]
    sign = v.details["energy_sign"]
    ok = dev <= 1e-8 and sign in (-1, 0, 1) and dt < 10
    assert criterion(9, ok, f"stated y-polynomial pointwise relative deviation {dev:.3e} (need <= 1e-8); "
                             f"energy sign {sign:+d} vs claimed positive, {dt:.2f}s")


def test_10_non_cancellation(criterion):
    t = time.perf_counter()
    v = run_claim("C10")
    dt = time.perf_counter() - t
    comm = _check(v, "max |g f A A|")["value"]
    diverge = _check(v, "extrapolated full residual")["value"]
    ok = comm > 1e-3 and diverge > 1e-6 and v.status == "CONFIRMED" and dt < 10
    assert criterion(10, ok, f"max commutator {comm:.3f}, extrapolated full residual {diverge:.3f}, {dt:.2f}s")


def test_11_warmup(criterion):
    t = time.perf_counter()
    v = run_claim("C11", ClaimParams(warmup_a=1.0))
    dt = time.perf_counter() - t
    ok = (v.computed_oracle == 0.5 and abs(v.paper_stated - 1 / math.sqrt(2)) <= 1e-15
          and v.rel_dev_internal <= 1e-12 and dt < 1)
    assert criterion(11, ok, f"oracle {v.computed_oracle}, stated {v.paper_stated:.6f}, internal "
                              f"{v.rel_dev_internal:.1e} ({v.status}), {dt:.2f}s")


def test_12_equivalence_search(criterion):
    t = time.perf_counter()
    v = run_claim("C14", ClaimParams(seed=0))
    dt = time.perf_counter() - t
    n = v.details["counterexamples"]
    ok = n == 0 and v.details["draws"] == 10_000 and v.details["tolerance"] == 1e-10 and dt < 10
    assert criterion(12, ok, f"{n} counterexamples in {v.details['draws']} draws "
                              f"(per stratum {[s['counterexamples'] for s in v.details['strata'].values()]}), {dt:.2f}s")
