"""Polynomials, characteristic polynomials, discriminants, irreducibility,
and field arithmetic."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from localconj import (
    IntMatrix,
    IntPoly,
    NumberField,
    charpoly,
    discriminant,
    is_irreducible,
    parse_poly,
    random_unimodular,
    resultant,
)
from localconj.gen import conjugate_exact

from conftest import M, P
from oracles import has_monic_factor_bruteforce, rational_poly_gcd_is_constant


class TestCharpoly:
    def test_companion_roundtrip(self):
        for text in ("t^2-t-1", "t^3-4t-1", "t^4+2t+7"):
            f = P(text)
            assert charpoly(f.companion()) == f

    def test_identity(self):
        assert charpoly(IntMatrix.identity(2)) == P("t^2-2t+1")

    def test_fibonacci_matrix(self):
        assert charpoly(M([1, 1], [1, 0])) == P("t^2-t-1")

    def test_non_square(self):
        with pytest.raises(ValueError):
            charpoly(IntMatrix.zeros(2, 3))

    def test_unimodular_conjugation_invariance(self):
        rng = random.Random(3)
        for n in (2, 3, 4):
            a = IntMatrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            p = random_unimodular(n, rng)
            b = conjugate_exact(a, p)
            assert b is not None
            assert charpoly(a) == charpoly(b)


class TestDiscriminant:
    def test_golden(self):
        assert discriminant(P("t^2-t-1")) == 5

    def test_gaussian(self):
        assert discriminant(P("t^2+1")) == -4

    def test_cubic(self):
        # -4p^3 - 27q^2 for t^3 + pt + q
        assert discriminant(P("t^3-t-1")) == -23

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            discriminant(IntPoly([5]))

    def test_resultant_sylvester(self):
        f = P("t^3-t-1")
        assert resultant(f, f.derivative()) == 23

    @given(st.lists(st.integers(-4, 4), min_size=2, max_size=4))
    @settings(max_examples=80, deadline=None)
    def test_nonzero_iff_squarefree(self, tail):
        f = IntPoly(tail + [1])
        if f.degree < 1:
            return
        assert (discriminant(f) != 0) == rational_poly_gcd_is_constant(
            f, f.derivative()
        )


class TestIrreducibility:
    def test_golden_true(self):
        assert is_irreducible(P("t^2-t-1"))

    def test_constructed_reducible(self):
        assert not is_irreducible(P("t^2-3t+2"))

    def test_t4_plus_1(self):
        # reducible modulo every prime: exercises the factor-search fallback
        assert is_irreducible(P("t^4+1"))

    def test_biquadratic_product(self):
        f = P("t^2+1") * P("t^2+3")
        assert not is_irreducible(f)

    def test_non_monic_rejected(self):
        with pytest.raises(ValueError):
            is_irreducible(IntPoly([1, 1, 2]))

    def test_agrees_with_bruteforce_on_grid(self):
        rng = random.Random(7)
        seen = 0
        while seen < 120:
            deg = rng.choice((2, 3, 4))
            coeffs = [rng.randint(-5, 5) for _ in range(deg)] + [1]
            f = IntPoly(coeffs)
            if f.degree != deg:
                continue
            seen += 1
            assert is_irreducible(f) == (not has_monic_factor_bruteforce(f))


class TestFieldArithmetic:
    def test_beta_inverse_golden(self):
        k = NumberField(P("t^2-t-1"))
        assert k.beta().inverse() == k.element([-1, 1])

    def test_beta_square_golden(self):
        k = NumberField(P("t^2-t-1"))
        assert k.beta() * k.beta() == k.element([1, 1])

    def test_additive_identity(self):
        k = NumberField(P("t^3-t-1"))
        x = k.element([2, -5, 1], 3)
        assert x + k.zero() == x

    def test_inverse_roundtrip_random(self):
        rng = random.Random(11)
        for text in ("t^2-t-1", "t^2+3", "t^3-t-1", "t^3-4t-1"):
            k = NumberField(P(text))
            n = k.degree
            count = 0
            while count < 100:
                num = [rng.randint(-9, 9) for _ in range(n)]
                den = rng.randint(1, 9)
                x = k.element(num, den)
                if x.is_zero:
                    continue
                count += 1
                assert x.inverse() * x == k.one()

    def test_zero_inverse_rejected(self):
        k = NumberField(P("t^2+3"))
        with pytest.raises(ZeroDivisionError):
            k.zero().inverse()

    def test_division(self):
        k = NumberField(P("t^3-t-1"))
        x = k.element([1, 2, 0], 5)
        y = k.element([0, 0, 3], 2)
        assert (x / y) * y == x

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError):
            NumberField(P("t^2-1"))


class TestParsing:
    def test_symbolic(self):
        assert parse_poly("t^3 - 4t - 1").coeffs == (-1, -4, 0, 1)

    def test_csv(self):
        assert parse_poly("-1,-1,1").coeffs == (-1, -1, 1)

    def test_pretty_roundtrip(self):
        f = P("t^4 - 3*t^2 + 2t - 7")
        assert parse_poly(f.pretty()) == f
