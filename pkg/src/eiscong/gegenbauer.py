"""Two-variable Gegenbauer polynomials and their binary-form specializations.

P_{d,nu}(s, m) is defined by the generating function
(1 - 2 s t + m t^2)^(-(d-2)/2) = sum_nu P_{d,nu}(s, m) t^nu and is computed
here through its closed-form coefficient sum.  Substituting a linear form
for s and a binary quadratic form for m turns P_{d,nu} into a homogeneous
degree-nu form in two variables; that specialization is the kernel of the
scalar-to-vector differential operator used by the pullback coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .arith import pochhammer
from .quadform import HalfIntegralMatrix

__all__ = [
    "BinaryForm",
    "BivariatePoly",
    "eval_binary",
    "gegenbauer_poly",
    "generating_check",
]


@dataclass(frozen=True)
class BivariatePoly:
    """Polynomial in (s, m); `coeffs` maps (i, j) to the coefficient of s^i m^j."""

    degree: int
    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]

    def coefficient(self, i: int, j: int) -> Fraction:
        return dict(self.coeffs).get((i, j), Fraction(0))

    def evaluate(self, s: Fraction | int, m: Fraction | int) -> Fraction:
        s, m = Fraction(s), Fraction(m)
        return sum((c * s**i * m**j for (i, j), c in self.coeffs), Fraction(0))


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form of the given degree; coeffs[i] multiplies x^(deg-i) y^i."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")

    @classmethod
    def zero(cls, degree: int) -> BinaryForm:
        return cls(degree, (Fraction(0),) * (degree + 1))

    def evaluate(self, x: Fraction | int, y: Fraction | int) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        n = self.degree
        return sum(
            (c * x ** (n - i) * y**i for i, c in enumerate(self.coeffs)),
            Fraction(0),
        )

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(
            self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, scalar: Fraction | int) -> BinaryForm:
        return BinaryForm(self.degree, tuple(c * scalar for c in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


@lru_cache(maxsize=None)
def gegenbauer_poly(d: int, nu: int) -> BivariatePoly:
    """P_{d,nu} via the explicit sum over mu <= nu/2.

    The monomial s^(nu-2mu) m^mu carries
    (-1)^mu (d/2-1)_(nu-mu) 2^(nu-2mu) / ((nu-2mu)! mu!); every monomial has
    isobaric weight i + 2j = nu, so specializations below stay homogeneous.
    Coefficients are rational for odd d (the Pochhammer base is then a
    half-integer), even though callers here always pass even d.
    """
    if d < 3 or nu < 0:
        raise ValueError("need d >= 3 and nu >= 0")
    base = Fraction(d, 2) - 1
    entries = []
    for mu in range(nu // 2 + 1):
        c = (
            (-1) ** mu
            * pochhammer(base, nu - mu)
            * 2 ** (nu - 2 * mu)
            / (factorial(nu - 2 * mu) * factorial(mu))
        )
        entries.append(((nu - 2 * mu, mu), c))
    return BivariatePoly(nu, tuple(entries))


def generating_check(
    d: int, nu_max: int, s: Fraction | int, m: Fraction | int
) -> bool:
    """Compare the closed-form values against the formal generating series.

    For even d the exponent (d-2)/2 is a non-negative integer, so
    (1 - u)^(-(d-2)/2) with u = 2st - mt^2 expands by the plain binomial
    series; the coefficient of t^nu evaluated at (s, m) must match
    gegenbauer_poly(d, nu)(s, m) for every nu <= nu_max.
    """
    if d % 2 or d < 4:
        raise ValueError("generating series oracle needs even d >= 4")
    s, m = Fraction(s), Fraction(m)
    alpha = (d - 2) // 2
    # series[n] = coefficient of t^n in (1 - 2st + mt^2)^(-alpha)
    series = [Fraction(0)] * (nu_max + 1)
    for i in range(nu_max + 1):
        binom = Fraction(comb(alpha - 1 + i, i))
        # (2st - mt^2)^i contributes to t^(i+l) via C(i, l) (2s)^(i-l) (-m)^l
        for l in range(i + 1):
            n = i + l
            if n > nu_max:
                break
            series[n] += binom * comb(i, l) * (2 * s) ** (i - l) * (-m) ** l
    return all(
        series[nu] == gegenbauer_poly(d, nu).evaluate(s, m)
        for nu in range(nu_max + 1)
    )


def _binary_pow(base: tuple[Fraction, ...], deg: int, e: int) -> tuple[Fraction, ...]:
    """e-th power of a homogeneous form given as a dense coefficient tuple."""
    out = (Fraction(1),)
    out_deg = 0
    for _ in range(e):
        new = [Fraction(0)] * (out_deg + deg + 1)
        for i, a in enumerate(out):
            if a == 0:
                continue
            for j, b in enumerate(base):
                new[i + j] += a * b
        out = tuple(new)
        out_deg += deg
    return out


def eval_binary(
    d: int,
    nu: int,
    r_pair: tuple[int, int],
    n: int,
    quad: HalfIntegralMatrix,
) -> BinaryForm:
    """Specialize P_{d,nu} at s = (r1 x + r2 y)/2 and m = n * (x y) Q (x y)^t.

    `quad` is the 2x2 half-integral matrix of the quadratic form; the result
    is a homogeneous binary form of degree nu.
    """
    if quad.n != 2:
        raise ValueError("quadratic form must be 2x2")
    g = quad.doubled
    r1, r2 = r_pair
    lin = (Fraction(r1, 2), Fraction(r2, 2))
    quad_coeffs = (
        Fraction(n * g[0][0], 2),
        Fraction(n * g[0][1]),
        Fraction(n * g[1][1], 2),
    )
    total = [Fraction(0)] * (nu + 1)
    for (i, j), c in gegenbauer_poly(d, nu).coeffs:
        part = _binary_pow(lin, 1, i)
        if j:
            qpow = _binary_pow(quad_coeffs, 2, j)
            merged = [Fraction(0)] * (i + 2 * j + 1)
            for a, ca in enumerate(part):
                if ca == 0:
                    continue
                for b, cb in enumerate(qpow):
                    merged[a + b] += ca * cb
            part = tuple(merged)
        # isobaric: i + 2j = nu
        for idx, val in enumerate(part):
            total[idx] += c * val
    return BinaryForm(nu, tuple(total))
