"""The decision engine against enumeration oracles, plus companion tests,
the 2x2 scalar-congruence invariant, prime screening, and certificates."""

from __future__ import annotations

import random

import pytest

from localconj import (
    GlobalCert,
    IntMatrix,
    IntegerPairCert,
    UnitModCert,
    build_operator,
    charpoly,
    companion_test,
    conjugate_over_Zp,
    conjugate_over_all_Zp,
    ell_invariant,
    generate_pair,
    parse_poly,
    random_unimodular,
    screen_primes,
    verify_cert,
)
from localconj.gen import conjugate_exact

from conftest import (
    CLASSIC_A,
    CLASSIC_B,
    M,
    pair_with_conjugate,
    scalar_shifted,
)
from oracles import brute_companion_test, brute_similar_mod, kernel_search_intertwiner


class TestConjugateOverZp:
    def test_equal_matrices_identity_certificate(self):
        a = parse_poly("t^2-t-1").companion()
        v = conjugate_over_Zp(a, a, 3)
        assert v.conjugate
        assert isinstance(v.certificate, UnitModCert)
        assert v.certificate.x == IntMatrix.identity(2)

    def test_unimodular_conjugates_true_everywhere(self):
        a, b, p_mat = pair_with_conjugate(parse_poly("t^3-t-1").companion(), 2)
        for p in (2, 3, 5, 7):
            v = conjugate_over_Zp(a, b, p)
            assert v.conjugate
            assert verify_cert(a, b, v.certificate)

    def test_classic_pair(self):
        assert not conjugate_over_Zp(CLASSIC_A, CLASSIC_B, 2).conjugate
        assert conjugate_over_Zp(CLASSIC_A, CLASSIC_B, 3).conjugate

    def test_differing_charpoly_rejected(self):
        a = parse_poly("t^2-t-1").companion()
        b = parse_poly("t^2+3").companion()
        with pytest.raises(ValueError):
            conjugate_over_Zp(a, b, 2)

    def test_reducible_charpoly_rejected(self):
        a = M([1, 1], [0, 2])
        with pytest.raises(ValueError):
            conjugate_over_Zp(a, a, 2)

    def test_composite_modulus_rejected(self):
        a = parse_poly("t^2+3").companion()
        with pytest.raises(ValueError):
            conjugate_over_Zp(a, a, 6)

    def test_against_enumeration_small_grid(self, corpus40):
        # matched against the mod-p^(mu+1) enumeration and the exact-kernel
        # lattice search on a slice of the corpus (the acceptance suite runs
        # the full grid)
        for a, b in corpus40[:10]:
            op = build_operator(a, b)
            for p in (2, 3):
                mu = op.mu(p)
                verdict = conjugate_over_Zp(a, b, p)
                assert verdict.conjugate == brute_similar_mod(
                    a, b, p ** (mu + 1), p
                )
                assert verdict.conjugate == kernel_search_intertwiner(a, b, p)

    def test_decision_stable_one_exponent_higher(self, corpus40):
        # working modulo p^(mu+2) instead of p^(mu+1) never changes the answer
        for a, b in corpus40[:6]:
            op = build_operator(a, b)
            for p in (2, 3):
                mu = op.mu(p)
                if p ** (4 * (mu + 2)) > 600_000:
                    continue
                verdict = conjugate_over_Zp(a, b, p)
                assert verdict.conjugate == brute_similar_mod(
                    a, b, p ** (mu + 2), p
                )


class TestSoundness:
    def test_true_verdicts_carry_verifying_certificates(self, corpus40):
        for a, b in corpus40[:12]:
            for p in (2, 3):
                v = conjugate_over_Zp(a, b, p)
                if v.conjugate:
                    assert isinstance(v.certificate, UnitModCert)
                    assert verify_cert(a, b, v.certificate)
                else:
                    assert v.certificate is None

    def test_determinism(self):
        a, b, _ = pair_with_conjugate(scalar_shifted(1, 2, 1, "t^2+3"), 5)
        v1 = conjugate_over_Zp(a, b, 2)
        v2 = conjugate_over_Zp(a, b, 2)
        assert v1 == v2

    def test_large_prime_sampling_path(self):
        # p > 7 leaves the exhaustive branch and samples the span instead
        a, b, _ = pair_with_conjugate(parse_poly("t^2+3").companion(), 6)
        for p in (11, 13):
            v = conjugate_over_Zp(a, b, p)
            assert v.conjugate
            assert verify_cert(a, b, v.certificate)
            assert conjugate_over_Zp(a, b, p) == v


class TestConjugateAll:
    def test_unimodular_pair_with_global_cert(self):
        pair = generate_pair(parse_poly("t^2+3"), "unimodular", 4)
        v = conjugate_over_all_Zp(pair.a, pair.b)
        assert v.conjugate
        assert verify_cert(pair.a, pair.b, GlobalCert(pair.conjugator))

    def test_squarefree_disc_vacuous(self):
        pair = generate_pair(parse_poly("t^2-t-1"), "singular:3", 1)
        v = conjugate_over_all_Zp(pair.a, pair.b)
        assert v.conjugate
        assert v.screened == ()
        assert v.per_prime == ()

    def test_classic_pair_fails_at_two(self):
        v = conjugate_over_all_Zp(CLASSIC_A, CLASSIC_B)
        assert not v.conjugate
        assert v.screened == (2,)
        assert not v.per_prime[0].conjugate

    def test_pair_certificate_when_true(self):
        pair = generate_pair(parse_poly("t^2+3"), "singular:3", 2)
        v = conjugate_over_all_Zp(pair.a, pair.b)
        if v.conjugate and v.certificate is not None:
            assert isinstance(v.certificate, IntegerPairCert)
            assert verify_cert(pair.a, pair.b, v.certificate)


class TestVerifyCert:
    def test_identity_cert(self):
        a = parse_poly("t^2+3").companion()
        v = conjugate_over_Zp(a, a, 5)
        assert verify_cert(a, a, v.certificate)

    def test_tampered_unit_mod(self):
        a, b, _ = pair_with_conjugate(parse_poly("t^2+3").companion(), 3)
        v = conjugate_over_Zp(a, b, 2)
        cert = v.certificate
        rows = cert.x.to_lists()
        rows[0][0] += 1
        bad = UnitModCert(IntMatrix(rows), cert.prime, cert.modulus)
        assert not verify_cert(a, b, bad)

    def test_tampered_modulus(self):
        a, b, _ = pair_with_conjugate(scalar_shifted(1, 2, 1, "t^2-t-1"), 7)
        v = conjugate_over_Zp(a, b, 2)
        bad = UnitModCert(v.certificate.x, 2, v.certificate.modulus * 2)
        assert not verify_cert(a, b, bad)

    def test_integer_pair_roundtrip(self):
        pair = generate_pair(parse_poly("t^3-4t-1"), "unimodular", 3)
        v = conjugate_over_all_Zp(pair.a, pair.b)
        assert v.conjugate and v.certificate is not None
        assert verify_cert(pair.a, pair.b, v.certificate)
        rows = v.certificate.q.to_lists()
        rows[1][1] += 1
        assert not verify_cert(
            pair.a, pair.b, IntegerPairCert(IntMatrix(rows), v.certificate.s)
        )

    def test_global_cert_rejects_non_unimodular(self):
        a, b, m = pair_with_conjugate(parse_poly("t^2+3").companion(), 1, singular=2)
        assert not verify_cert(a, b, GlobalCert(m))


class TestCompanionTest:
    def test_companion_itself(self):
        for text in ("t^2+3", "t^3-t-1"):
            c = parse_poly(text).companion()
            for p in (2, 3, 5):
                assert companion_test(c, p)

    def test_squarefree_mod_p_shortcut(self):
        # t^2+3 is squarefree mod 5, so every matrix with that polynomial
        # is similar to the companion at 5
        assert companion_test(CLASSIC_B, 5)

    def test_classic_fails_at_two(self):
        assert not companion_test(CLASSIC_B, 2)

    def test_agrees_with_brute_force_and_engine(self, corpus40):
        for a, _ in corpus40[:8]:
            c = charpoly(a).companion()
            for p in (2, 3):
                expected = brute_companion_test(a, p)
                assert companion_test(a, p) == expected
                assert conjugate_over_Zp(a, c, p).conjugate == expected


class TestEllInvariant:
    def test_forced_by_construction(self):
        m = parse_poly("t^2-t-1").companion()
        a = 3 * IntMatrix.identity(2) + 4 * m  # scalar + 2^2 * non-scalar
        inv = ell_invariant(a, 2)
        assert inv.ell == 2

    def test_zero_when_not_scalar_mod_p(self):
        assert ell_invariant(CLASSIC_A, 2).ell == 0

    def test_classic_b_is_scalar_mod_two(self):
        assert ell_invariant(CLASSIC_B, 2).ell == 1

    def test_non_2x2_rejected(self):
        with pytest.raises(ValueError):
            ell_invariant(IntMatrix.identity(3), 2)

    def test_scalar_matrix_rejected(self):
        with pytest.raises(ValueError):
            ell_invariant(2 * IntMatrix.identity(2), 3)

    def test_equal_ell_implies_conjugate(self):
        rng = random.Random(19)
        a = scalar_shifted(1, 2, 1, "t^2+3")
        for seed in range(4):
            m = random_unimodular(2, rng)
            b = conjugate_exact(a, m)
            for p in screen_primes(charpoly(a)):
                assert ell_invariant(a, p).ell == ell_invariant(b, p).ell
                assert conjugate_over_Zp(a, b, p).conjugate

    def test_different_ell_implies_not_conjugate(self):
        assert ell_invariant(CLASSIC_A, 2).ell != ell_invariant(CLASSIC_B, 2).ell
        assert not conjugate_over_Zp(CLASSIC_A, CLASSIC_B, 2).conjugate


class TestScreenPrimes:
    def test_golden_empty(self):
        assert screen_primes(parse_poly("t^2-t-1")) == []

    def test_t2_plus_3(self):
        assert screen_primes(parse_poly("t^2+3")) == [2]

    def test_cubic_empty(self):
        assert screen_primes(parse_poly("t^3-t-1")) == []

    def test_dedekind_cubic(self):
        assert screen_primes(parse_poly("t^3-t^2-2t-8")) == [2]

    def test_reducible_rejected(self):
        with pytest.raises(ValueError):
            screen_primes(parse_poly("t^2-1"))

    def test_unscreened_primes_never_fail(self, corpus40):
        for a, b in corpus40[:10]:
            screen = set(screen_primes(charpoly(a)))
            for p in (2, 3, 5):
                if p not in screen:
                    assert conjugate_over_Zp(a, b, p).conjugate
