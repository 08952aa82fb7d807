"""Level-1 modular forms as truncated q-expansions over exact rationals.

Provides the classical Eisenstein series and Victor Miller bases, the
degree-1 Hecke operators, rational eigen-decomposition of the cusp space,
the weight-k series whose coefficients are built from Cohen's H function,
and the normalized standard L-value obtained from it by an exact Petersson
projection.  Every identity used downstream is decided at the Sturm bound,
so the default working precision is max(20, 2 * sturm_bound(k)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

from .arith import bernoulli, cohen_h, divisor_power_sum, divisors, factorize
from .errors import SingularSystem, UnsupportedHeckeField
from .gegenbauer import gegenbauer_poly

__all__ = [
    "EigenBasis",
    "QExpansion",
    "cohen_series",
    "default_precision",
    "delta_qexp",
    "dim_cusp",
    "dim_modular",
    "eigen_basis",
    "eisenstein_qexp",
    "hecke_t",
    "hecke_tm",
    "miller_basis",
    "petersson_ratio",
    "std_l_value",
    "sturm_bound",
]


def sturm_bound(k: int) -> int:
    return k // 12 + 1


def default_precision(k: int) -> int:
    return max(20, 2 * sturm_bound(k))


def dim_modular(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    return k // 12 if k % 12 == 2 else k // 12 + 1


def dim_cusp(k: int) -> int:
    if k < 4:
        return 0
    return max(dim_modular(k) - 1, 0)


@dataclass(frozen=True)
class QExpansion:
    """Truncated Fourier series sum a(n) q^n, n <= prec, with a weight tag.

    Addition requires equal weights, multiplication adds them, and both
    truncate to the smaller precision; no coefficient beyond `prec` is ever
    read.
    """

    weight: int
    prec: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.prec + 1:
            raise ValueError("need exactly prec + 1 coefficients")

    @classmethod
    def from_list(cls, weight: int, coeffs) -> QExpansion:
        cs = tuple(Fraction(c) for c in coeffs)
        return cls(weight, len(cs) - 1, cs)

    def coefficient(self, n: int) -> Fraction:
        if not 0 <= n <= self.prec:
            raise IndexError(f"coefficient {n} beyond precision {self.prec}")
        return self.coeffs[n]

    def truncate(self, prec: int) -> QExpansion:
        if prec > self.prec:
            raise ValueError("cannot extend precision")
        return QExpansion(self.weight, prec, self.coeffs[: prec + 1])

    def __add__(self, other: QExpansion) -> QExpansion:
        if self.weight != other.weight:
            raise ValueError("weights must match for addition")
        p = min(self.prec, other.prec)
        return QExpansion(
            self.weight,
            p,
            tuple(a + b for a, b in zip(self.coeffs[: p + 1], other.coeffs[: p + 1])),
        )

    def __sub__(self, other: QExpansion) -> QExpansion:
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            p = min(self.prec, other.prec)
            out = [Fraction(0)] * (p + 1)
            for i, a in enumerate(self.coeffs[: p + 1]):
                if a == 0:
                    continue
                for j in range(p + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
            return QExpansion(self.weight + other.weight, p, tuple(out))
        scalar = Fraction(other)
        return QExpansion(
            self.weight, self.prec, tuple(scalar * c for c in self.coeffs)
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QExpansion:
        if e < 0:
            raise ValueError("negative powers unsupported")
        result = QExpansion(
            0, self.prec, (Fraction(1),) + (Fraction(0),) * self.prec
        )
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


@lru_cache(maxsize=None)
def eisenstein_qexp(k: int, prec: int) -> QExpansion:
    """Normalized E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise ValueError("need even k >= 4")
    factor = Fraction(-2 * k) / bernoulli(k)
    coeffs = [Fraction(1)] + [
        factor * divisor_power_sum(n, k - 1) for n in range(1, prec + 1)
    ]
    return QExpansion(k, prec, tuple(coeffs))


@lru_cache(maxsize=None)
def delta_qexp(prec: int) -> QExpansion:
    """The discriminant cusp form (E_4^3 - E_6^2)/1728."""
    e4 = eisenstein_qexp(4, prec)
    e6 = eisenstein_qexp(6, prec)
    diff = e4 * e4 * e4 - e6 * e6
    return Fraction(1, 1728) * diff


@lru_cache(maxsize=None)
def miller_basis(k: int, prec: int) -> tuple[tuple[QExpansion, ...], tuple[QExpansion, ...]]:
    """Echelonized integral bases of M_k and S_k from E_4^a E_6^b Delta^j.

    Row j leads with coefficient 1 at q^j and has zeros at the other
    q^i, i < dim; the cusp basis is rows 1 and up.
    """
    if k % 2 or k < 0:
        raise ValueError("need even k >= 0")
    d = dim_modular(k)
    if d == 0:
        return (), ()
    if prec < d:
        raise ValueError(f"precision {prec} below dimension {d}")
    one = QExpansion(0, prec, (Fraction(1),) + (Fraction(0),) * prec)
    rows = []
    for j in range(d):
        w = k - 12 * j
        a, b = (w // 4, 0) if w % 4 == 0 else ((w - 6) // 4, 1)
        form = one
        if a:
            form = form * eisenstein_qexp(4, prec) ** a
        if b:
            form = form * eisenstein_qexp(6, prec)
        if j:
            form = form * delta_qexp(prec) ** j
        rows.append(QExpansion(k, prec, form.coeffs))
    # clear above-diagonal entries; rows[j] starts as q^j + higher
    for j in range(1, d):
        for i in range(j):
            c = rows[i].coefficient(j)
            if c:
                rows[i] = rows[i] - c * rows[j]
    return tuple(rows), tuple(rows[1:])


def hecke_t(p: int, f: QExpansion) -> QExpansion:
    """T(p) in weight k: a(n) -> a(np) + p^(k-1) a(n/p); precision drops to P//p."""
    new_prec = f.prec // p
    pk = p ** (f.weight - 1)
    out = []
    for n in range(new_prec + 1):
        val = f.coefficient(n * p)
        if n % p == 0:
            val += pk * f.coefficient(n // p)
        out.append(val)
    return QExpansion(f.weight, new_prec, tuple(out))


def hecke_tm(m: int, f: QExpansion) -> QExpansion:
    """Composite operator T(p_1)...T(p_r) over the prime factorization of m,
    primes repeated with multiplicity; m = 1 is the identity."""
    if m < 1:
        raise ValueError("need m >= 1")
    out = f
    for p, e in factorize(m).items() if m > 1 else []:
        for _ in range(e):
            out = hecke_t(p, out)
    return out


# ---------------------------------------------------------------------------
# Rational eigen-decomposition


def _charpoly(mat: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients (ascending) of det(x I - A), by recursive expansion."""
    d = len(mat)

    def poly_entries(i: int, j: int) -> list[Fraction]:
        if i == j:
            return [-mat[i][j], Fraction(1)]
        return [-mat[i][j]]

    def det(rows: list[int], cols: list[int]) -> list[Fraction]:
        if len(rows) == 1:
            return poly_entries(rows[0], cols[0])
        total = [Fraction(0)]
        for idx, c in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1 :])
            term = poly_entries(rows[0], c)
            prod = [Fraction(0)] * (len(minor) + len(term) - 1)
            for i, a in enumerate(term):
                for j, b in enumerate(minor):
                    prod[i + j] += a * b
            sign = -1 if idx % 2 else 1
            if len(prod) > len(total):
                total += [Fraction(0)] * (len(prod) - len(total))
            for i, v in enumerate(prod):
                total[i] += sign * v
        return total

    return det(list(range(d)), list(range(d)))


def _integer_roots(poly: list[Fraction]) -> list[int]:
    """Integer roots of a monic integer polynomial, found by the rational
    root theorem and removed by synthetic division as they are found."""
    coeffs = [int(c) for c in poly]
    roots: list[int] = []
    while len(coeffs) > 1:
        if coeffs[0] == 0:
            root = 0
        else:
            root = None
            for c in divisors(abs(coeffs[0])):
                for cand in (c, -c):
                    if sum(a * cand**i for i, a in enumerate(coeffs)) == 0:
                        root = cand
                        break
                if root is not None:
                    break
            if root is None:
                break
        # synthetic division by (x - root), highest coefficient first
        acc = 0
        quotient = []
        for a in reversed(coeffs):
            acc = a + acc * root
            quotient.append(acc)
        assert quotient[-1] == 0
        coeffs = list(reversed(quotient[:-1]))
        roots.append(root)
    return roots


@dataclass(frozen=True)
class EigenBasis:
    """Normalized rational Hecke eigenforms of one weight, with eigenvalue access."""

    weight: int
    forms: tuple[QExpansion, ...]

    @property
    def dimension(self) -> int:
        return len(self.forms)

    def eigenvalue(self, j: int, p: int) -> Fraction:
        """T(p) eigenvalue of the j-th form (a(p) for a normalized eigenform)."""
        return self.forms[j].coefficient(p)

    def tm_eigenvalue(self, j: int, m: int) -> Fraction:
        """Eigenvalue of the composite operator T(p_1)...T(p_r) for m = prod p_i."""
        if m == 1:
            return Fraction(1)
        out = Fraction(1)
        for p, e in factorize(m).items():
            out *= self.forms[j].coefficient(p) ** e
        return out


@lru_cache(maxsize=None)
def eigen_basis(k: int, prec: int | None = None) -> EigenBasis:
    """Diagonalize T(2) on the cusp Miller basis over the rationals.

    Raises UnsupportedHeckeField unless the characteristic polynomial of
    T(2) splits into distinct rational (hence integer) roots; the weights
    needed here are all one-dimensional, so nothing more is implemented.
    """
    if k < 12 or k % 2:
        raise ValueError("need even k >= 12")
    if prec is None:
        prec = default_precision(k)
    d = dim_cusp(k)
    if prec < max(2 * d, 2):
        raise ValueError("precision too low to express T(2)")
    _, cusp = miller_basis(k, prec)
    # matrix of T(2) in the echelon basis: column j holds coefficients 1..d
    mat = [[hecke_t(2, cusp[j]).coefficient(i + 1) for j in range(d)] for i in range(d)]
    poly = _charpoly(mat)
    roots = _integer_roots(poly)
    if len(roots) != d or len(set(roots)) != d:
        raise UnsupportedHeckeField(
            f"T(2) on the weight-{k} cusp space has irrational eigenvalues"
        )
    forms = []
    for lam in sorted(roots):
        # kernel of (A - lam I)
        m = [[mat[i][j] - (lam if i == j else 0) for j in range(d)] for i in range(d)]
        vec = _kernel_vector(m)
        combo = QExpansion(k, prec, (Fraction(0),) * (prec + 1))
        for c, g in zip(vec, cusp):
            if c:
                combo = combo + c * g
        a1 = combo.coefficient(1)
        assert a1 != 0, "eigenform with vanishing first coefficient"
        forms.append((Fraction(1) / a1) * combo)
    return EigenBasis(k, tuple(forms))


def _kernel_vector(m: list[list[Fraction]]) -> list[Fraction]:
    d = len(m)
    rows = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, d) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][col] for x in rows[r]]
        for i in range(d):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = next(c for c in range(d) if c not in pivots)
    vec = [Fraction(0)] * d
    vec[free] = Fraction(1)
    for row, col in enumerate(pivots):
        vec[col] = -rows[row][free]
    return vec


# ---------------------------------------------------------------------------
# Cohen's weight-k series and the standard L-value


@lru_cache(maxsize=None)
def cohen_series(k: int, r: int, prec: int) -> QExpansion:
    """The weight-k series with m-th coefficient
    sum_{t^2 <= 4m} P_{2r+2, k-r-1}(t/2, m) H(r, 4m - t^2).

    Lands in M_k, and in S_k when r < k - 1.  Requires odd r with
    3 <= r <= k - 1 and even k.
    """
    if k % 2 or not (3 <= r <= k - 1) or r % 2 == 0:
        raise ValueError("need even k and odd r with 3 <= r <= k-1")
    poly = gegenbauer_poly(2 * r + 2, k - r - 1)
    out = []
    for m in range(prec + 1):
        tmax = isqrt(4 * m)
        total = Fraction(0)
        for t in range(-tmax, tmax + 1):
            h = cohen_h(r, 4 * m - t * t)
            if h:
                total += poly.evaluate(Fraction(t, 2), m) * h
        out.append(total)
    return QExpansion(k, prec, tuple(out))


def petersson_ratio(f: QExpansion, g: QExpansion) -> Fraction:
    """Coefficient of the eigenform f in the eigen-expansion of the cusp form g.

    Since distinct eigenforms are orthogonal, this equals (f, g)/(f, f).
    Solved exactly on q-coefficients up to the Sturm bound; the expansion is
    then re-verified on every jointly available coefficient.
    """
    k = f.weight
    if g.weight != k:
        raise ValueError("weights must match")
    if g.is_zero():
        return Fraction(0)
    if g.coefficient(0) != 0:
        raise ValueError("g has a nonzero constant term; not a cusp form")
    basis = eigen_basis(k)
    d = basis.dimension
    idx = next(
        (
            j
            for j in range(d)
            if all(
                basis.forms[j].coefficient(n) == f.coefficient(n)
                for n in range(1, min(f.prec, basis.forms[j].prec) + 1)
            )
        ),
        None,
    )
    if idx is None:
        raise ValueError("f is not one of the normalized eigenforms of this weight")
    bound = sturm_bound(k)
    avail = min(g.prec, min(h.prec for h in basis.forms))
    if avail < bound:
        raise SingularSystem(
            f"precision {avail} below the Sturm bound {bound}"
        )
    rows = [[basis.forms[j].coefficient(n) for j in range(d)] for n in range(1, bound + 1)]
    rhs = [g.coefficient(n) for n in range(1, bound + 1)]
    sol = _solve_overdetermined(rows, rhs)
    # safety: the expansion must reproduce g on all shared coefficients
    for n in range(1, avail + 1):
        lhs = sum(sol[j] * basis.forms[j].coefficient(n) for j in range(d))
        if lhs != g.coefficient(n):
            raise ValueError("g does not lie in the cusp eigenspace to this precision")
    return sol[idx]


def _solve_overdetermined(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    d = len(rows[0])
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = [x / aug[r][col] for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                fct = aug[i][col]
                aug[i] = [x - fct * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if len(pivots) < d:
        raise SingularSystem("coefficient system is underdetermined")
    for i in range(r, len(aug)):
        if aug[i][d] != 0:
            raise ValueError("inconsistent coefficient system")
    sol = [Fraction(0)] * d
    for row, col in enumerate(pivots):
        sol[col] = aug[row][d]
    return sol


def std_l_value(k: int, nu: int, f: QExpansion) -> Fraction:
    """Normalized standard L-value at k - 1 of an eigenform f of weight k + nu.

    Equals -(nu! (k-2)! / (k+nu-2)!) 2^(k+nu-3) times the Petersson ratio of
    f against the weight-(k+nu) Cohen-type series with parameter r = k - 1.
    """
    if k % 2 or nu % 2 or k < 6 or nu < 2:
        raise ValueError("need even k >= 6 and even nu >= 2")
    if f.weight != k + nu:
        raise ValueError("f must have weight k + nu")
    series = cohen_series(k + nu, k - 1, f.prec)
    ratio = petersson_ratio(f, series)
    factor = -Fraction(
        factorial(nu) * factorial(k - 2), factorial(k + nu - 2)
    ) * Fraction(2) ** (k + nu - 3)
    return factor * ratio
