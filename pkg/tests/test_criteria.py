from numpy.testing import assert_allclose

from xyzent import linalg
from xyzent.criteria import (
    disorder_check,
    disorder_margins_spin_form,
    entropic_check,
    exact_check,
    majorization_margins,
)
from xyzent.entanglement import separability_exact
from xyzent.model import canonicalize
from xyzent.states import mixture, realize_matrix, spin_averages, thermal_mixture

from conftest import random_mixture

CASE2 = canonicalize(1.0, -1.0, 0.0, 0.0)
BELL_DIAG = canonicalize(0.8, -0.2, 0.1, 0.0)


class TestDisorderCheck:
    def test_bell_diagonal_exceeds_half(self):
        rep = disorder_check(mixture(BELL_DIAG, [0.6, 0.1, 0.1, 0.2]))
        assert rep.detected
        assert abs(rep.margin + 0.1) < 1e-14

    def test_fully_mixed(self):
        rep = disorder_check(mixture(CASE2, [0.25] * 4))
        assert not rep.detected
        assert_allclose(rep.detail, (0.25,) * 4)

    def test_thermal_case2(self):
        rep = disorder_check(thermal_mixture(CASE2, 1.0))
        assert rep.detected
        assert abs(rep.margin + 0.03445) < 1e-4

    def test_detection_needs_dominant_weight(self, rng):
        for _ in range(300):
            m = random_mixture(rng)
            if disorder_check(m).detected:
                assert m.probs.max() > 0.5

    def test_matches_reduction_eigenvalue_comparison(self, rng):
        # the p_j bound is exactly max eigenvalue of rho vs of rho_A
        for _ in range(50):
            m = random_mixture(rng)
            rho = realize_matrix(m)
            lam_rho = linalg.hermitian_eigenvalues(rho)[0]
            lam_red = linalg.hermitian_eigenvalues(linalg.partial_trace(rho, "A"))[0]
            rep = disorder_check(m)
            assert abs(rep.margin - (lam_red - lam_rho)) < 1e-10

    def test_full_majorization_reduces_to_largest_eigenvalue(self, rng):
        for _ in range(50):
            m = random_mixture(rng)
            rho = realize_matrix(m)
            margins = majorization_margins(
                linalg.hermitian_eigenvalues(rho),
                linalg.hermitian_eigenvalues(linalg.partial_trace(rho, "A")),
            )
            rep = disorder_check(m)
            assert (margins.min() < -1e-12) == rep.detected or abs(margins.min()) < 1e-12
            assert abs(margins[0] - rep.margin) < 1e-10


class TestDisorderSpinForm:
    def test_fully_mixed(self):
        m12, m03 = disorder_margins_spin_form(spin_averages(mixture(CASE2, [0.25] * 4)))
        assert m12 > 0 and m03 > 0

    def test_singlet(self):
        _, m03 = disorder_margins_spin_form(spin_averages(mixture(CASE2, [1, 0, 0, 0])))
        assert abs(m03 + 1.0) < 1e-15

    def test_zero_field_margins_are_doubled(self):
        # at b = 0 each spin-form margin is exactly twice the tightest
        # eigenvalue-form margin of its level pair
        m = thermal_mixture(CASE2, 1.0)
        rep = disorder_check(m)
        m12, m03 = disorder_margins_spin_form(spin_averages(m))
        assert abs(m12 - 2 * min(rep.detail[1], rep.detail[2])) < 1e-10
        assert abs(m03 - 2 * min(rep.detail[0], rep.detail[3])) < 1e-10

    def test_verdict_equivalence_per_branch(self, rng):
        bound_key = lambda rep, js: min(rep.detail[j] for j in js)
        for _ in range(300):
            m = random_mixture(rng)
            rep = disorder_check(m)
            m12, m03 = disorder_margins_spin_form(spin_averages(m))
            assert (m12 < 0) == (bound_key(rep, (1, 2)) < 0)
            assert (m03 < 0) == (bound_key(rep, (0, 3)) < 0)


class TestEntropicCheck:
    def test_pure_entangled(self):
        rep = entropic_check(mixture(CASE2, [1, 0, 0, 0]))
        assert rep.detected
        assert abs(rep.margin + 1.0) < 1e-14

    def test_fully_mixed(self):
        rep = entropic_check(mixture(CASE2, [0.25] * 4))
        assert not rep.detected
        assert abs(rep.margin - 1.0) < 1e-14

    def test_thermal_weaker_than_exact(self):
        # entangled state the entropic criterion misses
        m = thermal_mixture(CASE2, 1.0)
        rep = entropic_check(m)
        assert not rep.detected
        assert abs(rep.margin - 0.68) < 1e-2
        assert separability_exact(m).entangled

    def test_matches_matrix_entropies(self, rng):
        for _ in range(30):
            m = random_mixture(rng)
            rho = realize_matrix(m)
            s_rho = linalg.entropy_base2(linalg.hermitian_eigenvalues(rho))
            s_red = linalg.entropy_base2(
                linalg.hermitian_eigenvalues(linalg.partial_trace(rho, "A"))
            )
            assert abs(entropic_check(m).margin - (s_rho - s_red)) < 1e-9

    def test_reductions_identical(self, rng):
        for _ in range(20):
            rho = realize_matrix(random_mixture(rng))
            assert_allclose(
                linalg.partial_trace(rho, "A"), linalg.partial_trace(rho, "B"), atol=1e-14
            )


class TestHierarchy:
    def test_no_false_positives(self, rng):
        guard = 1e-12
        for _ in range(500):
            m = random_mixture(rng)
            exact = exact_check(m)
            dis = disorder_check(m)
            ent = entropic_check(m)
            if ent.margin < -guard:
                assert dis.margin < guard
            if dis.margin < -guard:
                assert exact.margin < guard

    def test_exact_at_zero_field(self, rng):
        guard = 1e-12
        for _ in range(300):
            m = random_mixture(rng, BELL_DIAG)
            dis = disorder_check(m).margin
            exact = exact_check(m).margin
            if abs(dis) > guard or abs(exact) > guard:
                assert (dis < 0) == (exact < 0)
