import math
from fractions import Fraction

import pytest

from pnc.bounds import (
    aligned_pnc_joint,
    compute_bounds,
    csiszar_ub,
    guaranteed_entropy,
    guaranteed_entropy_pam,
    ub_generic,
    ub_nocoop,
    ub_pam,
)
from pnc.constellation import FiniteAlphabet, make_pam, pam_sum_profile, sum_profile

GRID = [
    (ma, mb)
    for ma in (2, 4, 8, 16, 32, 64)
    for mb in (2 * ma, 4 * ma, 8 * ma, 16 * ma)
    if mb <= 256
]


class TestSharedBound:
    def test_generic_examples(self):
        assert ub_generic(pam_sum_profile(2, 4)) == pytest.approx(0.75, abs=1e-15)
        assert ub_generic(pam_sum_profile(2, 2)) == pytest.approx(0.5, abs=1e-15)

    def test_all_singleton_counts(self):
        a = FiniteAlphabet(points=(0.0, 1.0))
        b = FiniteAlphabet(points=(0.0, 10.0))
        assert ub_generic(sum_profile(a, b)) == 0.0

    @pytest.mark.parametrize("M_A,M_B", GRID)
    def test_closed_form_matches_generic(self, M_A, M_B):
        assert ub_pam(M_A, M_B) == pytest.approx(
            ub_generic(pam_sum_profile(M_A, M_B)), abs=1e-12
        )

    def test_4_16_value(self):
        assert ub_pam(4, 16) == pytest.approx(1.8360902344426084, abs=1e-12)
        assert ub_pam(2, 4) == pytest.approx(0.75, abs=1e-15)

    def test_large_mb_limit(self):
        assert abs(ub_pam(4, 4096) - 2.0) < 0.05

    @pytest.mark.parametrize("M_A,M_B", GRID)
    def test_monotone_in_mb(self, M_A, M_B):
        assert ub_pam(M_A, 2 * M_B) >= ub_pam(M_A, M_B)

    def test_rejects_small_mb(self):
        with pytest.raises(ValueError):
            ub_pam(4, 4)


class TestGuaranteedEntropy:
    def test_brute_force_examples(self):
        p = pam_sum_profile(4, 16)
        assert guaranteed_entropy(1, "alice", p) == pytest.approx(1.0, abs=1e-15)
        assert guaranteed_entropy(7, "bob", p) == pytest.approx(2.0, abs=1e-15)
        assert guaranteed_entropy(11, "bob", p) == pytest.approx(math.log2(3), abs=1e-15)

    def test_closed_form_examples(self):
        assert guaranteed_entropy_pam(3, "alice", 4, 16) == 0.0
        assert guaranteed_entropy_pam(-3, "alice", 4, 16) == 0.0
        assert guaranteed_entropy_pam(9, "bob", 4, 16) == 2.0
        assert guaranteed_entropy_pam(-9, "bob", 4, 16) == 2.0
        assert guaranteed_entropy_pam(13, "bob", 4, 16) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_foreign_point(self):
        with pytest.raises(ValueError):
            guaranteed_entropy_pam(2, "alice", 4, 16)

    @pytest.mark.parametrize("M_A,M_B", GRID)
    def test_closed_form_matches_brute_force(self, M_A, M_B):
        p = pam_sum_profile(M_A, M_B)
        for x in make_pam(M_A).points:
            assert guaranteed_entropy_pam(x, "alice", M_A, M_B) == pytest.approx(
                guaranteed_entropy(x, "alice", p), abs=1e-13
            )
        for x in make_pam(M_B).points:
            assert guaranteed_entropy_pam(x, "bob", M_A, M_B) == pytest.approx(
                guaranteed_entropy(x, "bob", p), abs=1e-13
            )


class TestNoCoopBounds:
    def test_4_16_values(self):
        r_a, r_b = ub_nocoop(4, 16)
        assert r_a == pytest.approx(0.5, abs=1e-15)
        assert r_b == pytest.approx((2 * 10 + 2 * (math.log2(3) + 1 + 0)) / 16, abs=1e-13)

    def test_2_4_alice_zero(self):
        assert ub_nocoop(2, 4)[0] == 0.0

    @pytest.mark.parametrize("M_A,M_B", GRID)
    def test_never_exceed_shared(self, M_A, M_B):
        r_a, r_b = ub_nocoop(M_A, M_B)
        shared = ub_pam(M_A, M_B)
        m_a = int(math.log2(M_A))
        assert 0 <= r_a <= shared + 1e-12 <= m_a + 1e-12
        assert 0 <= r_b <= shared + 1e-12

    def test_bounds_bundle(self):
        b = compute_bounds(4, 16)
        assert b.ub_shared == ub_pam(4, 16)
        assert (b.ub_alice_nocoop, b.ub_bob_nocoop) == ub_nocoop(4, 16)


class TestCsiszarBound:
    def test_noiseless_aligned_equals_closed_form(self):
        assert csiszar_ub(aligned_pnc_joint(4, 16)) == pytest.approx(
            ub_pam(4, 16), abs=1e-12
        )

    def test_maximal_case(self):
        # X independent of the eavesdropper's Y; receiver sees X directly
        M = 4
        joint = {}
        for y in range(2):
            for x in range(M):
                joint[(y, x, x, 0)] = Fraction(1, 2 * M)
        assert csiszar_ub(joint) == pytest.approx(2.0, abs=1e-15)

    def test_fully_leaked_clamps_to_zero(self):
        # eavesdropper's Y determines X while the receiver learns nothing
        M = 4
        joint = {(x, 0, x, 0): Fraction(1, M) for x in range(M)}
        assert csiszar_ub(joint) == 0.0

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            csiszar_ub({(0, 0, 0, 0): 0.5})
