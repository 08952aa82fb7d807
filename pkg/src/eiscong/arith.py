"""Exact scalar arithmetic underlying the whole package.

Everything returns plain ints or `fractions.Fraction`: Bernoulli numbers,
Kronecker symbols, quadratic characters of fundamental discriminants,
generalized Bernoulli numbers, Dirichlet L-values at non-positive integers,
and Cohen's function H(r, N).  No floating point anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, prod

__all__ = [
    "DiscriminantChar",
    "PiRational",
    "bernoulli",
    "bernoulli_poly",
    "cohen_h",
    "divisor_power_sum",
    "factorize",
    "field_discriminant",
    "fundamental_decomposition",
    "gen_bernoulli",
    "is_fundamental_discriminant",
    "kronecker",
    "l_value_neg",
    "moebius",
    "ord_p",
    "pochhammer",
    "zeta_neg",
]


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with the convention B_1 = -1/2 (so zeta(0) = -1/2).

    Computed by the Akiyama-Tanigawa triangle, which naturally produces
    B_1 = +1/2; the sign is flipped for n = 1.  Values are cached.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if n >= len(_bernoulli_cache):
        row = [Fraction(0)] * (n + 1)
        out: list[Fraction] = []
        for m in range(n + 1):
            row[m] = Fraction(1, m + 1)
            for j in range(m, 0, -1):
                row[j - 1] = j * (row[j - 1] - row[j])
            out.append(row[0])
        out[1] = Fraction(-1, 2)
        _bernoulli_cache[:] = out
    return _bernoulli_cache[n]


@lru_cache(maxsize=None)
def bernoulli_poly(r: int, x: Fraction) -> Fraction:
    """Bernoulli polynomial B_r(x) = sum_i C(r, i) B_i x^(r-i)."""
    return sum(
        (comb(r, i) * bernoulli(i) * x ** (r - i) for i in range(r + 1)),
        Fraction(0),
    )


def zeta_neg(k: int) -> Fraction:
    """zeta(1 - k) = -B_k / k for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError(f"zeta_neg needs even k >= 2, got {k}")
    return -bernoulli(k) / k


def pochhammer(x: int | Fraction, n: int) -> Fraction:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1); the empty product is 1."""
    if n < 0:
        raise ValueError("pochhammer length must be >= 0")
    return prod((Fraction(x) + i for i in range(n)), start=Fraction(1))


# ---------------------------------------------------------------------------
# Factorization helpers (inputs here are small: conductors, determinants,
# constant terms of characteristic polynomials)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic witness set for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(0xE15C)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(0, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; |n| must be nonzero."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        if m < 10**10:
            p = 17
            while p * p <= m:
                if m % p == 0:
                    stack.extend([p, m // p])
                    break
                p += 2
            else:
                out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    return list(factorize(n))


def moebius(n: int) -> int:
    if n <= 0:
        raise ValueError("moebius needs n >= 1")
    f = factorize(n) if n > 1 else {}
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def divisor_power_sum(n: int, e: int) -> int:
    """sigma_e(n) = sum of d^e over positive divisors d of n."""
    return sum(d**e for d in divisors(n))


def ord_p(p: int, x: int | Fraction) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is undefined")

    def val(m: int) -> int:
        v = 0
        while m % p == 0:
            m //= p
            v += 1
        return v

    return val(x.numerator) - val(x.denominator)


# ---------------------------------------------------------------------------
# Kronecker symbol and quadratic characters


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), with the standard conventions at 2, -1 and 0."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            sign = -sign
    # Jacobi symbol for odd n > 0 via reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def squarefree_decomposition(m: int) -> tuple[int, int]:
    """Write m = s * f^2 with s squarefree (carrying the sign of m)."""
    if m == 0:
        raise ValueError("need m != 0")
    s, f = (1 if m > 0 else -1), 1
    for p, e in factorize(m).items():
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return s, f


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    s, f = squarefree_decomposition(d)
    if f == 1:
        return d % 4 == 1
    return f == 2 and d == 4 * s and s % 4 in (2, 3)


def field_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)) for nonzero m; returns 1 when m is a square."""
    s, _ = squarefree_decomposition(m)
    if s == 1:
        return 1
    return s if s % 4 == 1 else 4 * s


@dataclass(frozen=True)
class DiscriminantChar:
    """Quadratic character attached to a fundamental discriminant d.

    d = 1 is the trivial character (conductor 1).  The value at n is the
    Kronecker symbol (d/n), which vanishes exactly when gcd(n, d) > 1.
    """

    d: int

    def __post_init__(self) -> None:
        if not is_fundamental_discriminant(self.d):
            raise ValueError(f"{self.d} is not a fundamental discriminant")

    @property
    def conductor(self) -> int:
        return abs(self.d)

    def __call__(self, n: int) -> int:
        return kronecker(self.d, n)


TRIVIAL_CHAR = DiscriminantChar(1)


def fundamental_decomposition(m: int) -> tuple[DiscriminantChar, int]:
    """Split m = d * f^2 with d a fundamental discriminant (d = 1 for squares).

    Only defined for m = 0 or 1 mod 4, which is exactly when such a
    decomposition exists; m = 0 is rejected.
    """
    if m == 0:
        raise ValueError("need m != 0")
    if m % 4 not in (0, 1):
        raise ValueError(f"{m} is not congruent to 0 or 1 mod 4")
    s, f = squarefree_decomposition(m)
    if s == 1:
        return TRIVIAL_CHAR, f
    if s % 4 == 1:
        return DiscriminantChar(s), f
    # here 4 | m and f is even
    return DiscriminantChar(4 * s), f // 2


# ---------------------------------------------------------------------------
# L-values at non-positive integers


@lru_cache(maxsize=None)
def gen_bernoulli(r: int, chi: DiscriminantChar) -> Fraction:
    """Generalized Bernoulli number B_{r,chi} = m^(r-1) sum_a chi(a) B_r(a/m).

    m is the conductor; for the trivial character this degenerates to B_r(1),
    which differs from B_r only at r = 1 (it is +1/2 there, making
    L(0) = -1/2 = zeta(0) come out right).
    """
    if r < 1:
        raise ValueError("need r >= 1")
    m = chi.conductor
    total = sum(
        (chi(a) * bernoulli_poly(r, Fraction(a, m)) for a in range(1, m + 1)),
        Fraction(0),
    )
    return m ** (r - 1) * total


def l_value_neg(r: int, chi: DiscriminantChar) -> Fraction:
    """L(1 - r, chi) = -B_{r,chi} / r for r >= 1."""
    if r < 1:
        raise ValueError("need r >= 1")
    return -gen_bernoulli(r, chi) / r


@lru_cache(maxsize=None)
def cohen_h(r: int, n: int) -> Fraction:
    """Cohen's function H(r, N).

    H(r, 0) = zeta(1 - 2r); H(r, N) = 0 for N = 1, 2 mod 4; otherwise write
    -N = d f^2 with d fundamental and return
        L(1 - r, chi_d) * sum_{e | f} mu(e) chi_d(e) e^(r-1) sigma_{2r-1}(f/e).
    The divisor-sum correction is what makes the associated weight k = r + 1/2
    Eisenstein coefficients modular for non-fundamental -N.
    """
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and N >= 0")
    if n == 0:
        return zeta_neg(2 * r)
    if n % 4 in (1, 2):
        return Fraction(0)
    chi, f = fundamental_decomposition(-n)
    tail = sum(
        moebius(e) * chi(e) * e ** (r - 1) * divisor_power_sum(f // e, 2 * r - 1)
        for e in divisors(f)
    )
    return l_value_neg(r, chi) * tail


# ---------------------------------------------------------------------------
# Exact multiples of powers of pi


@dataclass(frozen=True)
class PiRational:
    """A number of the form coefficient * pi^pi_exponent, kept exact."""

    coefficient: Fraction
    pi_exponent: int = 0

    def __mul__(self, other: PiRational | Fraction | int) -> PiRational:
        if isinstance(other, PiRational):
            return PiRational(
                self.coefficient * other.coefficient,
                self.pi_exponent + other.pi_exponent,
            )
        return PiRational(self.coefficient * other, self.pi_exponent)

    __rmul__ = __mul__

    def __truediv__(self, other: PiRational | Fraction | int) -> PiRational:
        if isinstance(other, PiRational):
            if other.coefficient == 0:
                raise ZeroDivisionError
            return PiRational(
                self.coefficient / other.coefficient,
                self.pi_exponent - other.pi_exponent,
            )
        return PiRational(self.coefficient / Fraction(other), self.pi_exponent)

    def rational_part(self) -> Fraction:
        """The coefficient, valid as the full value only when pi_exponent = 0."""
        if self.pi_exponent != 0:
            raise ValueError("value carries a nonzero power of pi")
        return self.coefficient
