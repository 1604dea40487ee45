"""Acceptance gate: every guaranteed property, exact, within its time budget.

Each test runs one named suite at the canonical seed and prints a single
pass/fail line (visible with pytest -s, or via `takiff suite --human`).
All checks inside the suites are exact equalities over the rationals; there
are no tolerances to tune. Budgets are wall-clock seconds on modest hardware
and the real margins are large.
"""

import time

from takiff.suites import SUITES, RunConfig

SEED = RunConfig().seed


def run_criterion(name, budget=None, min_checks=1):
    start = time.perf_counter()
    report = SUITES[name](SEED)
    elapsed = time.perf_counter() - start
    status = "PASS" if report.passed else "FAIL"
    limit = f", budget {budget:.0f}s" if budget is not None else ""
    print(f"{status} {name}: {report.checks} exact checks in {elapsed:.2f}s{limit}")
    assert report.passed, (name, report.details, report.witnesses)
    assert report.checks >= min_checks
    if budget is not None:
        assert elapsed < budget
    return report


def test_truncated_bracket_laws():
    # antisymmetry and Jacobi for g_m over the whole algebra/level grid
    run_criterion("jacobi", budget=10.0, min_checks=1000)


def test_lifted_representation_homomorphism():
    # rho_m([X, Y]) = [rho_m(X), rho_m(Y)] on every basis pair of the grid
    run_criterion("homomorphism", budget=20.0, min_checks=100)


def test_lifted_invariants_annihilated():
    # every Killing field of g_m kills every lifted curve coefficient
    run_criterion("invariance", budget=30.0, min_checks=100)


def test_curve_coefficient_linear_structure():
    # coefficient k uses only f_0..f_k and, for k >= 1, is affine in f_k
    # with linear part the pairing of dphi(f_0) against f_k
    run_criterion("linearity", min_checks=50)


def test_directional_derivative_cross_check():
    # 50 seeded polynomials: t-expansion equals the weighted-partition sum
    run_criterion("faa-di-bruno", budget=60.0, min_checks=50)


def test_cylindrical_invariance_agreement():
    # 50 seeded top-block-free functions: level-m and level-(m-1)
    # invariance answers coincide
    run_criterion("cylindrical", min_checks=50)


def test_base_solver_against_oracle():
    # 100 seeded antisymmetric fields reconstructed exactly, then an
    # independent linear-system oracle confirms the homotopy solutions
    run_criterion("base-solver", budget=60.0, min_checks=120)


def test_decomposition_roundtrip():
    # 50 seeded Killing combinations: decompose, then verify the
    # reconstruction identity term by term
    run_criterion("roundtrip", budget=120.0, min_checks=50)


def test_refusal_with_witnesses():
    # radial fields and seeded non-annihilating fields are refused,
    # each with a nonzero residual witness
    run_criterion("refusal", min_checks=23)


def test_flip_conjugation_identity():
    # block reversal conjugates the lifted coadjoint action into the
    # coadjoint action of g_m itself
    run_criterion("flip", min_checks=6)


def test_lifted_bilinear_form_properties():
    # the level-paired form is symmetric, nondegenerate and g_m-invariant
    run_criterion("quadratic-lift", min_checks=18)


def test_transport_under_change_of_basis():
    # seeded invertible theta: both the freshly decomposed and the
    # transported coefficients verify under the conjugated action
    run_criterion("transport", min_checks=20)
