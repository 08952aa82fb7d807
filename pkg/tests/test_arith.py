"""Tests for the exact scalar arithmetic layer.

Derived expected values are produced by independent oracles implemented in
this file (binomial recurrence for Bernoulli numbers, Euler-criterion
Legendre symbols, direct finite character sums) and frozen as literals.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from eiscong.arith import (
    DiscriminantChar,
    PiRational,
    TRIVIAL_CHAR,
    bernoulli,
    cohen_h,
    divisor_power_sum,
    factorize,
    field_discriminant,
    fundamental_decomposition,
    gen_bernoulli,
    is_fundamental_discriminant,
    kronecker,
    l_value_neg,
    moebius,
    ord_p,
    pochhammer,
    zeta_neg,
)


def bernoulli_oracle(n: int) -> Fraction:
    """Binomial-sum recurrence, independent of the library's triangle scheme."""
    vals = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, j) * vals[j] for j in range(m))
        vals.append(-s / (m + 1))
    return vals[n]


def legendre_oracle(a: int, p: int) -> int:
    """Euler's criterion for odd primes."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


class TestBernoulli:
    def test_base_case(self):
        assert bernoulli(0) == 1

    def test_first_convention(self):
        assert bernoulli(1) == bernoulli_oracle(1) == Fraction(-1, 2)

    def test_b12(self):
        assert bernoulli(12) == bernoulli_oracle(12) == Fraction(-691, 2730)

    def test_recurrence_residual(self):
        for n in range(1, 41):
            assert sum(comb(n + 1, j) * bernoulli(j) for j in range(n + 1)) == 0

    def test_odd_vanishing(self):
        assert all(bernoulli(n) == 0 for n in range(3, 41, 2))


class TestZetaNeg:
    def test_k2(self):
        assert zeta_neg(2) == -bernoulli_oracle(2) / 2 == Fraction(-1, 12)

    def test_k12(self):
        # -B_12/12 with B_12 = -691/2730 is positive
        assert zeta_neg(12) == -bernoulli_oracle(12) / 12 == Fraction(691, 32760)

    def test_k26(self):
        # arises as zeta(3 - 2k) for k = 14
        assert zeta_neg(26) == -bernoulli_oracle(26) / 26 == Fraction(-657931, 12)

    def test_rejects(self):
        with pytest.raises(ValueError):
            zeta_neg(3)
        with pytest.raises(ValueError):
            zeta_neg(0)


class TestKronecker:
    def test_unit_argument(self):
        for d in (-7, -4, -3, 1, 5, 8, 12):
            assert kronecker(d, 1) == 1

    def test_minus_four_at_three(self):
        assert kronecker(-4, 3) == -1

    def test_minus_three_at_two(self):
        # -3 = 5 mod 8, so (-3/2) = -1
        assert kronecker(-3, 2) == -1

    def test_matches_legendre_at_odd_primes(self):
        for p in (3, 5, 7, 11, 13, 97):
            for a in range(-30, 31):
                if a == 0:
                    continue
                assert kronecker(a, p) == legendre_oracle(a, p), (a, p)

    def test_lower_multiplicativity(self):
        rng = random.Random(7)
        for _ in range(200):
            a = rng.randrange(-50, 51)
            m = rng.randrange(1, 60)
            n = rng.randrange(1, 60)
            assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)

    def test_at_two(self):
        assert [kronecker(a, 2) for a in (1, 3, 5, 7)] == [1, -1, -1, 1]
        assert kronecker(4, 2) == 0


class TestFundamentalDecomposition:
    def test_already_fundamental(self):
        chi, f = fundamental_decomposition(-4)
        assert (chi.d, f) == (-4, 1)

    def test_square_part(self):
        chi, f = fundamental_decomposition(-12)
        assert (chi.d, f) == (-3, 2)

    def test_real_field(self):
        chi, f = fundamental_decomposition(8)
        assert (chi.d, f) == (8, 1)

    def test_perfect_square(self):
        chi, f = fundamental_decomposition(16)
        assert (chi.d, f) == (1, 4)

    def test_rejects(self):
        with pytest.raises(ValueError):
            fundamental_decomposition(0)
        with pytest.raises(ValueError):
            fundamental_decomposition(3)

    def test_roundtrip(self):
        for m in range(-200, 201):
            if m == 0 or m % 4 not in (0, 1):
                continue
            chi, f = fundamental_decomposition(m)
            assert chi.d * f * f == m
            assert is_fundamental_discriminant(chi.d)

    def test_field_discriminant(self):
        assert field_discriminant(-1) == -4
        assert field_discriminant(Fraction(3, 4).numerator * Fraction(3, 4).denominator) == 12
        assert field_discriminant(9) == 1


class TestDiscriminantChar:
    def test_vanishing_on_common_factor(self):
        chi = DiscriminantChar(-4)
        assert chi(2) == 0 and chi(6) == 0

    def test_periodicity(self):
        chi = DiscriminantChar(-3)
        for n in range(1, 50):
            assert chi(n) == chi(n + 3)

    def test_rejects_non_fundamental(self):
        with pytest.raises(ValueError):
            DiscriminantChar(20)  # 20 = 4 * 5 with 5 = 1 mod 4, so 5 is the disc
        with pytest.raises(ValueError):
            DiscriminantChar(-12)


class TestGenBernoulli:
    def test_chi_minus_four_r1(self):
        # direct finite sum: (1/4)(chi(1)*B_1(1/4)-ish) collapses to -1/2
        chi = DiscriminantChar(-4)
        assert gen_bernoulli(1, chi) == Fraction(-1, 2)
        assert l_value_neg(1, chi) == Fraction(1, 2)

    def test_trivial_character_degeneration(self):
        for r in range(2, 12):
            assert gen_bernoulli(r, TRIVIAL_CHAR) == bernoulli_oracle(r)

    def test_trivial_r_even_matches_zeta(self):
        for r in range(2, 16, 2):
            assert l_value_neg(r, TRIVIAL_CHAR) == zeta_neg(r)

    def test_chi_minus_three_r3(self):
        # hand value: B_{3,chi_{-3}} = 9*(B_3(1/3) - B_3(2/3)) = 2/3
        chi = DiscriminantChar(-3)
        assert gen_bernoulli(3, chi) == Fraction(2, 3)
        assert l_value_neg(3, chi) == Fraction(-2, 9)

    def test_parity_vanishing(self):
        for d in (-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -31, -35, -39, -40):
            chi = DiscriminantChar(d)
            for r in range(2, 21, 2):
                assert gen_bernoulli(r, chi) == 0, (d, r)
        for d in (5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40):
            chi = DiscriminantChar(d)
            for r in range(3, 21, 2):
                assert gen_bernoulli(r, chi) == 0, (d, r)


class TestCohenH:
    def test_n_zero(self):
        for r in (1, 2, 5, 13):
            assert cohen_h(r, 0) == zeta_neg(2 * r)

    def test_vanishing_residues(self):
        for n in range(1, 201):
            if n % 4 in (1, 2):
                for r in (1, 3, 13):
                    assert cohen_h(r, n) == 0
            else:
                assert cohen_h(13, n) != 0

    def test_fundamental_case(self):
        assert cohen_h(13, 3) == l_value_neg(13, DiscriminantChar(-3))
        assert cohen_h(13, 4) == l_value_neg(13, DiscriminantChar(-4))

    def test_non_fundamental_divisor_sum(self):
        # -16 = -4 * 2^2, so the f = 2 correction applies
        chi = DiscriminantChar(-4)
        r = 5
        expected = l_value_neg(r, chi) * (
            divisor_power_sum(2, 2 * r - 1) - chi(2) * 2 ** (r - 1)
        )
        assert cohen_h(r, 16) == expected


class TestSmallUtilities:
    def test_pochhammer(self):
        assert pochhammer(Fraction(3, 2), 0) == 1
        assert pochhammer(13, 3) == 2730
        assert pochhammer(27, 0) == 1

    def test_factorize(self):
        assert factorize(360) == {2: 3, 3: 2, 5: 1}
        assert factorize(-97) == {97: 1}

    def test_moebius(self):
        assert [moebius(n) for n in (1, 2, 4, 6, 30)] == [1, -1, 0, 1, -1]

    def test_sigma(self):
        assert divisor_power_sum(6, 1) == 12
        assert divisor_power_sum(2, 15) == 1 + 2**15

    def test_ord_p(self):
        assert ord_p(3, Fraction(9, 2)) == 2
        assert ord_p(2, Fraction(9, 2)) == -1
        with pytest.raises(ValueError):
            ord_p(5, 0)

    def test_pi_rational(self):
        c = PiRational(Fraction(3, 2), 1) * PiRational(Fraction(4), -1)
        assert c == PiRational(Fraction(6), 0)
        assert c.rational_part() == 6
        with pytest.raises(ValueError):
            PiRational(Fraction(1), 2).rational_part()
