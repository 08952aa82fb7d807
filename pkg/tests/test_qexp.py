"""Tests for level-1 q-expansions, Hecke operators and the standard L-value."""

from __future__ import annotations

from fractions import Fraction

import pytest

from eiscong.arith import ord_p, zeta_neg
from eiscong.errors import SingularSystem, UnsupportedHeckeField
from eiscong.qexp import (
    QExpansion,
    cohen_series,
    default_precision,
    delta_qexp,
    dim_cusp,
    dim_modular,
    eigen_basis,
    eisenstein_qexp,
    hecke_t,
    hecke_tm,
    miller_basis,
    petersson_ratio,
    std_l_value,
    sturm_bound,
)


def eta_power_24(prec: int) -> list[int]:
    """Oracle for the discriminant form: q * prod (1 - q^n)^24, plain ints."""
    poly = [1] + [0] * prec
    for n in range(1, prec + 1):
        for _ in range(24):
            new = poly[:]
            for i in range(prec + 1 - n):
                new[i + n] -= poly[i]
            poly = new
    return [0] + poly[:prec]


class TestBuilders:
    def test_eisenstein_normalization(self):
        for k in (4, 6, 10, 16):
            assert eisenstein_qexp(k, 8).coefficient(0) == 1

    def test_e4_e6_first_coefficients(self):
        assert eisenstein_qexp(4, 4).coefficient(1) == 240
        assert eisenstein_qexp(6, 4).coefficient(1) == -504

    def test_delta_matches_eta_product(self):
        prec = 14
        delta = delta_qexp(prec)
        oracle = eta_power_24(prec)
        assert [delta.coefficient(n) for n in range(prec + 1)] == oracle
        assert delta.coefficient(1) == 1 and delta.coefficient(2) == -24

    def test_rejects(self):
        with pytest.raises(ValueError):
            eisenstein_qexp(2, 5)
        with pytest.raises(ValueError):
            eisenstein_qexp(5, 5)


class TestArithmetic:
    def test_weight_mismatch(self):
        with pytest.raises(ValueError):
            eisenstein_qexp(4, 5) + eisenstein_qexp(6, 5)

    def test_multiplication_adds_weights_truncates(self):
        prod = eisenstein_qexp(4, 9) * eisenstein_qexp(6, 5)
        assert prod.weight == 10 and prod.prec == 5

    def test_no_read_past_precision(self):
        with pytest.raises(IndexError):
            eisenstein_qexp(4, 5).coefficient(6)


class TestMillerBasis:
    def test_dimensions(self):
        assert (dim_modular(16), dim_cusp(16)) == (2, 1)
        assert dim_modular(2) == 0
        assert (dim_modular(12), dim_cusp(12)) == (2, 1)
        assert dim_cusp(24) == 2
        assert dim_modular(0) == 1 and dim_cusp(0) == 0

    def test_weight_12_cusp_generator(self):
        _, cusp = miller_basis(12, 10)
        assert len(cusp) == 1
        gen = cusp[0]
        assert gen.coefficient(1) == 1 and gen.coefficient(2) == -24

    def test_echelon_shape(self):
        full, cusp = miller_basis(24, 12)
        d = len(full)
        for j, row in enumerate(full):
            for i in range(d):
                assert row.coefficient(i) == (1 if i == j else 0)
        assert len(cusp) == d - 1

    def test_integrality(self):
        full, _ = miller_basis(20, 12)
        for row in full:
            assert all(c.denominator == 1 for c in row.coeffs)


class TestHecke:
    def test_delta_t2_eigenvalue(self):
        delta = delta_qexp(20)
        image = hecke_t(2, delta)
        scaled = QExpansion(12, image.prec, tuple(-24 * c for c in delta.coeffs[: image.prec + 1]))
        assert image == scaled

    def test_eisenstein_eigenvalue(self):
        for k in (4, 10):
            for p in (2, 3):
                e = eisenstein_qexp(k, 12)
                image = hecke_t(p, e)
                lam = 1 + p ** (k - 1)
                for n in range(image.prec + 1):
                    assert image.coefficient(n) == lam * e.coefficient(n)

    def test_weight16_t2_eigenvalue_from_product(self):
        # dim S_16 = 1, so Delta * E_4 is the eigenform up to scale
        f = delta_qexp(24) * eisenstein_qexp(4, 24)
        image = hecke_t(2, f)
        lam = image.coefficient(1) / f.coefficient(1)
        assert lam == 216
        for n in range(1, image.prec + 1):
            assert image.coefficient(n) == lam * f.coefficient(n)

    def test_commutativity_on_miller_bases(self):
        for k in (12, 16, 18, 20):
            full, _ = miller_basis(k, 60)
            for f in full:
                for p, q in ((2, 3), (2, 5), (3, 5)):
                    a = hecke_t(p, hecke_t(q, f))
                    b = hecke_t(q, hecke_t(p, f))
                    assert a == b

    def test_tm_identity_and_composition(self):
        delta = delta_qexp(30)
        assert hecke_tm(1, delta) == delta
        # T^(4) = T(2) T(2)
        via_m = hecke_tm(4, delta)
        via_comp = hecke_t(2, hecke_t(2, delta))
        assert via_m == via_comp
        assert via_m.coefficient(1) == (-24) ** 2

    def test_tm_six(self):
        delta = delta_qexp(36)
        tau3 = delta.coefficient(3)
        image = hecke_tm(6, delta)
        assert image.coefficient(1) == -24 * tau3
        assert tau3 == 252


class TestEigenBasis:
    def test_weight16(self):
        basis = eigen_basis(16)
        assert basis.dimension == 1
        f = basis.forms[0]
        assert f.coefficient(1) == 1 and f.coefficient(2) == 216

    def test_weight12_is_delta(self):
        basis = eigen_basis(12)
        delta = delta_qexp(basis.forms[0].prec)
        assert basis.forms[0] == delta

    def test_weight24_unsupported(self):
        with pytest.raises(UnsupportedHeckeField):
            eigen_basis(24)

    def test_normalization_and_multiplicativity(self):
        for k in (12, 16, 18, 20, 22):
            basis = eigen_basis(k, prec=30)
            for f in basis.forms:
                assert f.coefficient(1) == 1
                for m, n in ((2, 3), (2, 5), (3, 4), (2, 9), (4, 5)):
                    assert f.coefficient(m * n) == f.coefficient(m) * f.coefficient(n)

    def test_tm_eigenvalues(self):
        basis = eigen_basis(16)
        assert basis.tm_eigenvalue(0, 1) == 1
        assert basis.tm_eigenvalue(0, 4) == 216**2
        assert basis.tm_eigenvalue(0, 6) == basis.eigenvalue(0, 2) * basis.eigenvalue(0, 3)


class TestCohenSeries:
    def test_cusp_constant_term(self):
        assert cohen_series(16, 13, 10).coefficient(0) == 0

    def test_full_weight_constant_term(self):
        assert cohen_series(16, 15, 10).coefficient(0) == zeta_neg(30)

    def test_membership(self):
        for k in (12, 16, 20):
            for r in range(3, k, 2):
                series = cohen_series(k, r, default_precision(k))
                full, cusp = miller_basis(k, series.prec)
                space = cusp if r < k - 1 else full
                residual = series
                for row in space:
                    lead = next(
                        n for n in range(row.prec + 1) if row.coefficient(n) == 1
                    )
                    residual = residual - residual.coefficient(lead) * row
                assert residual.is_zero(), (k, r)

    def test_parameter_guards(self):
        with pytest.raises(ValueError):
            cohen_series(16, 4, 5)
        with pytest.raises(ValueError):
            cohen_series(15, 3, 5)


class TestPetersson:
    def test_scalar_multiple(self):
        f = eigen_basis(16).forms[0]
        assert petersson_ratio(f, 5 * f) == 5

    def test_zero(self):
        f = eigen_basis(16).forms[0]
        zero = QExpansion(16, f.prec, (Fraction(0),) * (f.prec + 1))
        assert petersson_ratio(f, zero) == 0

    def test_dim_one_identity(self):
        f = eigen_basis(16).forms[0]
        series = cohen_series(16, 13, f.prec)
        assert petersson_ratio(f, series) == series.coefficient(1)
        # regression value pinned from the first verified run; consistent by
        # hand with the weight-16 L-value through the projection factor
        assert series.coefficient(1) == -50274432

    def test_eisenstein_rejected(self):
        f = eigen_basis(16).forms[0]
        with pytest.raises(ValueError):
            petersson_ratio(f, eisenstein_qexp(16, f.prec))

    def test_low_precision_raises(self):
        f = eigen_basis(16).forms[0]
        with pytest.raises(SingularSystem):
            petersson_ratio(f.truncate(1), 5 * f.truncate(1))


class TestStdLValue:
    def test_weight16_at_13(self):
        f = eigen_basis(16).forms[0]
        value = std_l_value(14, 2, f)
        assert value == Fraction(2**20 * 3**4 * 373, 7)

    def test_weight16_at_7(self):
        f = eigen_basis(16).forms[0]
        value = std_l_value(8, 8, f)
        assert value == Fraction(2**15 * 23**2, 11 * 13)

    def test_orders(self):
        f = eigen_basis(16).forms[0]
        assert ord_p(373, std_l_value(14, 2, f)) == 1
        assert ord_p(7, std_l_value(14, 2, f)) == -1
        assert ord_p(23, std_l_value(8, 8, f)) == 2

    def test_weight12_regression(self):
        # pinned from the first verified run of this build
        f = eigen_basis(12).forms[0]
        assert std_l_value(8, 4, f) == Fraction(8192, 3)

    def test_sturm(self):
        assert sturm_bound(16) == 2
        assert default_precision(16) == 20
