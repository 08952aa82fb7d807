"""Fourier coefficients of normalized Siegel-Eisenstein series, degree <= 3.

The normalization constant Z(n, k) = zeta(1-k) prod_{j<=[n/2]} zeta(1+2j-2k)
multiplies the classical series so that every Fourier coefficient becomes an
exact rational given by a product of local factors:

    a(T) = 2^[(m+1)/2] * prod_{p | det(2 T~)} F_p(T~, p^(k-m-1)) * (zeta/L tail)

where m = rank T, T~ is the nondegenerate part, the tail is
prod_{i=m/2+1}^{[n/2]} zeta(1+2i-2k) * L(1+m/2-k, chi) for even m (chi the
quadratic character attached to T~) and prod_{i=(m+1)/2}^{[n/2]} zeta(1+2i-2k)
for odd m; the rank-0 coefficient is Z(n, k) itself.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import l_value_neg, prime_divisors, zeta_neg
from .quadform import HalfIntegralMatrix, chi_star, nondeg_part
from .siegelseries import DEFAULT_BUDGET, local_F

__all__ = ["EisensteinContext", "eis_coeff", "z_const"]


def z_const(n: int, k: int) -> Fraction:
    """Z(n, k) = zeta(1-k) prod_{j=1}^{[n/2]} zeta(1+2j-2k)."""
    if k < 4 or k % 2:
        raise ValueError("need even k >= 4")
    out = zeta_neg(k)
    for j in range(1, n // 2 + 1):
        out *= zeta_neg(2 * k - 2 * j)
    return out


class EisensteinContext:
    """Coefficient evaluator for one (degree, weight) pair, with a memo cache.

    The weight must be even with k >= (n+1)/2 and outside the two excluded
    congruence classes k = (n+2)/2 = 2 mod 4 and k = (n+3)/2 = 2 mod 4, which
    is where the series fails to be a holomorphic modular form.
    """

    def __init__(self, n: int, k: int, budget: int = DEFAULT_BUDGET) -> None:
        if not 1 <= n <= 3:
            raise ValueError("degree must be 1, 2 or 3")
        if k % 2 or k < 4:
            raise ValueError("need even weight k >= 4")
        if 2 * k < n + 1:
            raise ValueError("weight too small for this degree")
        for bad in (n + 2, n + 3):
            if 2 * k == bad and k % 4 == 2:
                raise ValueError("excluded weight/degree congruence class")
        self.n = n
        self.k = k
        self.budget = budget
        self._memo: dict[tuple[tuple[int, ...], ...], Fraction] = {}

    def coefficient(self, t: HalfIntegralMatrix) -> Fraction:
        if t.n != self.n:
            raise ValueError(f"matrix size {t.n} does not match degree {self.n}")
        if not t.is_psd():
            raise ValueError("T must be positive semidefinite")
        cached = self._memo.get(t.doubled)
        if cached is not None:
            return cached
        value = self._compute(t)
        self._memo[t.doubled] = value
        return value

    def _compute(self, t: HalfIntegralMatrix) -> Fraction:
        n, k = self.n, self.k
        m = t.rank()
        if m == 0:
            return z_const(n, k)
        tilde, det2 = nondeg_part(t)
        value = Fraction(2) ** ((m + 1) // 2)
        for p in prime_divisors(det2):
            value *= local_F(p, tilde, self.budget).evaluate(
                Fraction(p) ** (k - m - 1)
            )
        if m % 2 == 0:
            for i in range(m // 2 + 1, n // 2 + 1):
                value *= zeta_neg(2 * k - 2 * i)
            value *= l_value_neg(k - m // 2, chi_star(t))
        else:
            for i in range((m + 1) // 2, n // 2 + 1):
                value *= zeta_neg(2 * k - 2 * i)
        return value


def eis_coeff(ctx: EisensteinContext, t: HalfIntegralMatrix) -> Fraction:
    """Coefficient a(T) of the normalized degree-ctx.n weight-ctx.k series."""
    return ctx.coefficient(t)
