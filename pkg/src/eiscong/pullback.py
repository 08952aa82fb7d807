"""Pullback coefficients of the restricted Eisenstein series and congruence
certificates.

eps_{k,nu}(n, N) is the finite sum over integer rows R of
a(T_(n,N,R)) * P_{2k,nu}(R v / 2, n v^t N v) with T_(n,N,R) the bordered
3x3 matrix and a(.) the degree-3 normalized Eisenstein coefficient; it is a
binary form of degree nu.  Acting on the q-series n -> eps(n, N) with the
degree-1 Hecke operators in weight k + nu and taking determinants against
the eigenvalue table yields an exact rational whose p-order certifies the
congruence conditions; `certify` assembles the full structured verdict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .arith import PiRational, factorize, ord_p, pochhammer, zeta_neg
from .eisen import EisensteinContext
from .gegenbauer import BinaryForm, eval_binary
from .qexp import eigen_basis, std_l_value
from .quadform import (
    HalfIntegralMatrix,
    build_T,
    enumerate_R,
    format_half_integral,
    parse_half_integral,
)

__all__ = [
    "CERT_SCHEMA",
    "CongruenceCertificate",
    "Strictness",
    "Verdict",
    "c_kv1",
    "c_kv2",
    "certify",
    "cond2_determinant",
    "epsilon",
    "epsilon_hecke",
    "gamma1",
    "gamma2",
    "pick_slot",
]

CERT_SCHEMA = "eiscong-cert-v1"


# ---------------------------------------------------------------------------
# Scalar constants of the rank-1 and rank-2 pullback pieces


def _check_kv(k: int, nu: int) -> None:
    if k % 2 or nu % 2 or k <= 0 or nu <= 0:
        raise ValueError("k and nu must be positive even integers")
    if nu < 2:
        raise ValueError("nu = 0 (scalar weight) is out of scope")


def c_kv1(k: int, nu: int) -> PiRational:
    """2^4 (k)_nu (2k-1)_(nu-1) * pi."""
    _check_kv(k, nu)
    return PiRational(2**4 * pochhammer(k, nu) * pochhammer(2 * k - 1, nu - 1), 1)


def c_kv2(k: int, nu: int) -> PiRational:
    """(-1)^(k/2) 2^8 (k)_nu (2k-1)_(nu-2) / (k-2) * pi^3."""
    _check_kv(k, nu)
    sign = -1 if (k // 2) % 2 else 1
    return PiRational(
        sign * 2**8 * pochhammer(k, nu) * pochhammer(2 * k - 1, nu - 2) / (k - 2), 3
    )


def gamma1(k: int, nu: int) -> Fraction:
    """(-1)^((k+nu)/2+1) 2^3 nu! (k-1)_(nu+1) (2k-1)_(nu-2) / (2k+nu-2)_(nu-1)."""
    _check_kv(k, nu)
    sign = -1 if ((k + nu) // 2 + 1) % 2 else 1
    return (
        sign
        * 2**3
        * factorial(nu)
        * pochhammer(k - 1, nu + 1)
        * pochhammer(2 * k - 1, nu - 2)
        / pochhammer(2 * k + nu - 2, nu - 1)
    )


def gamma2(k: int, nu: int) -> Fraction:
    """(-1)^(nu/2+1) 2^5 nu! (k-1)_(nu+1) (2k-1)_(nu-2) / (2k+nu-4)_(nu-1)."""
    _check_kv(k, nu)
    sign = -1 if (nu // 2 + 1) % 2 else 1
    return (
        sign
        * 2**5
        * factorial(nu)
        * pochhammer(k - 1, nu + 1)
        * pochhammer(2 * k - 1, nu - 2)
        / pochhammer(2 * k + nu - 4, nu - 1)
    )


# ---------------------------------------------------------------------------
# The pullback coefficients


@lru_cache(maxsize=None)
def _eis_ctx3(k: int) -> EisensteinContext:
    return EisensteinContext(3, k)


@lru_cache(maxsize=None)
def epsilon(k: int, nu: int, n: int, quad: HalfIntegralMatrix) -> BinaryForm:
    """The degree-nu binary form eps_{k,nu}(n, N).

    Sums a(T_(n,N,R)) * P_{2k,nu}((r1 x + r2 y)/2, n (x y) N (x y)^t) over
    exactly the rows R that keep T_(n,N,R) positive semidefinite; every
    other row would contribute a vanishing Eisenstein coefficient.
    """
    _check_kv(k, nu)
    if k < 6:
        raise ValueError("need k >= 6")
    if n < 1:
        raise ValueError("need n >= 1")
    ctx = _eis_ctx3(k)
    total = BinaryForm.zero(nu)
    for r_pair in enumerate_R(n, quad):
        coeff = ctx.coefficient(build_T(n, quad, r_pair))
        if coeff:
            total = total + coeff * eval_binary(2 * k, nu, r_pair, n, quad)
    return total


def epsilon_hecke(
    k: int, nu: int, m: int, n: int, quad: HalfIntegralMatrix
) -> BinaryForm:
    """Coefficient n of the eps series acted on by T(p_1)...T(p_r), m = prod p_i.

    The action is the degree-1 Hecke operator in weight k + nu applied
    coefficientwise: (T(p) g)(n) = g(np) + p^(k+nu-1) g(n/p), composed over
    the prime factorization of m with multiplicity; m = 1 is the identity.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    ops: list[int] = []
    if m > 1:
        for p, e in factorize(m).items():
            ops.extend([p] * e)
    weight_power = k + nu - 1

    def value(remaining: tuple[int, ...], idx: int) -> BinaryForm:
        if idx < 1:
            return BinaryForm.zero(nu)
        if not remaining:
            return epsilon(k, nu, idx, quad)
        p, rest = remaining[0], remaining[1:]
        out = value(rest, idx * p)
        if idx % p == 0:
            out = out + p**weight_power * value(rest, idx // p)
        return out

    return value(tuple(ops), n)


# ---------------------------------------------------------------------------
# The determinant criterion


def _det(rows: list[list[Fraction]]) -> Fraction:
    d = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(d):
        piv = next((i for i in range(col, d) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, d):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def pick_slot(k: int, nu: int, quad: HalfIntegralMatrix, p: int) -> int:
    """First basis slot of eps(1, N) that does not vanish mod p."""
    form = epsilon(k, nu, 1, quad)
    for i, c in enumerate(form.coeffs):
        if c != 0 and ord_p(p, c) <= 0:
            return i
    for i, c in enumerate(form.coeffs):
        if c != 0:
            return i
    raise ValueError("eps(1, N) is identically zero; no usable slot")


def cond2_determinant(
    k: int,
    nu: int,
    quad: HalfIntegralMatrix,
    m_list: tuple[int, ...],
    slot: int,
) -> tuple[Fraction, Fraction]:
    """Exact invariant behind the nonvanishing condition on a(N, lift).

    Builds the d x d matrix whose first column holds the chosen slot of
    e_m = eps(m, 1, N) for m in m_list and whose remaining columns hold the
    composite Hecke eigenvalues of the other eigenforms; returns
    (zeta(3-2k) * det(that matrix), det of the full eigenvalue matrix), the
    second entry being 1 in dimension 1 by convention.
    """
    basis = eigen_basis(k + nu)
    d = basis.dimension
    if len(m_list) != d:
        raise ValueError(f"m_list must have length dim S = {d}")
    e_vals = [epsilon_hecke(k, nu, m, 1, quad) for m in m_list]
    if not 0 <= slot <= nu:
        raise ValueError("slot out of range")
    mixed = [
        [e_vals[i].coeffs[slot]]
        + [basis.tm_eigenvalue(j, m_list[i]) for j in range(1, d)]
        for i in range(d)
    ]
    delta = (
        Fraction(1)
        if d == 1
        else _det(
            [[basis.tm_eigenvalue(j, m_list[i]) for j in range(d)] for i in range(d)]
        )
    )
    return zeta_neg(2 * k - 2) * _det(mixed), delta


# ---------------------------------------------------------------------------
# Certificates


class Strictness(str, Enum):
    STRICT = "strict"
    RELAXED = "relaxed"


class Verdict(str, Enum):
    PROVEN_MOD_P = "ProvenModP"
    PROVEN_MOD_P_ALPHA = "ProvenModPAlpha"
    NOT_ESTABLISHED = "NotEstablished"


def _is_unit(p: int, x: Fraction) -> bool:
    return x != 0 and ord_p(p, x) == 0


def _decide_verdict(
    cond1: bool,
    cond2: bool,
    cond3: bool,
    cond3p: bool,
    gamma1_unit: bool,
    strict: bool,
    alpha: int,
    dim: int,
) -> Verdict:
    size_ok = cond3 or (cond3p and gamma1_unit)
    if not (cond1 and cond2 and (size_ok or not strict)):
        return Verdict.NOT_ESTABLISHED
    if alpha >= 2 and dim == 1:
        return Verdict.PROVEN_MOD_P_ALPHA
    return Verdict.PROVEN_MOD_P


@dataclass(frozen=True)
class CongruenceCertificate:
    """Structured verdict of the congruence conditions for (k, nu, p, A).

    The numeric fields are everything needed to re-derive the verdict; the
    verdict of a deserialized certificate is recomputed and must match.
    """

    k: int
    nu: int
    p: int
    a_matrix: HalfIntegralMatrix
    strictness: Strictness
    m_list: tuple[int, ...]
    slot: int
    dim: int
    l_value: Fraction
    alpha: int
    gamma1: Fraction
    gamma2: Fraction
    zeta3m2k: Fraction
    epsilon_form: BinaryForm
    eval_10: Fraction
    eval_11: Fraction
    lhs_invariant: Fraction
    delta: Fraction
    conditions: tuple[tuple[str, bool, bool], ...]  # (name, holds, waived)
    verdict: Verdict
    implied_congruence: str
    # display-only: an externally supplied reference value for the pullback
    # constant, never used by the verdict logic
    reference_gamma: Fraction | None = None

    def condition(self, name: str) -> tuple[bool, bool]:
        for n, holds, waived in self.conditions:
            if n == name:
                return holds, waived
        raise KeyError(name)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        def rat(x: Fraction) -> dict:
            return {"num": str(x.numerator), "den": str(x.denominator)}

        out = {
            "schema": CERT_SCHEMA,
            "k": self.k,
            "nu": self.nu,
            "p": self.p,
            "A": format_half_integral(self.a_matrix),
            "strictness": self.strictness.value,
            "m_list": list(self.m_list),
            "slot": self.slot,
            "dim_cusp_space": self.dim,
            "L_value": rat(self.l_value),
            "alpha": self.alpha,
            "gamma1": rat(self.gamma1),
            "gamma2": rat(self.gamma2),
            "zeta_3_minus_2k": rat(self.zeta3m2k),
            "epsilon": {
                "degree": self.epsilon_form.degree,
                "coeffs": [rat(c) for c in self.epsilon_form.coeffs],
                "at_1_0": rat(self.eval_10),
                "at_1_1": rat(self.eval_11),
            },
            "epsilon_witness": {
                "lhs_invariant": rat(self.lhs_invariant),
                "delta": rat(self.delta),
            },
            "conditions": {
                name: {"holds": holds, "waived": waived}
                for name, holds, waived in self.conditions
            },
            "verdict": self.verdict.value,
            "implied_congruence": self.implied_congruence,
        }
        if self.reference_gamma is not None:
            out["reference_gamma"] = rat(self.reference_gamma)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, doc: dict) -> CongruenceCertificate:
        if doc.get("schema") != CERT_SCHEMA:
            raise ValueError(f"unknown certificate schema {doc.get('schema')!r}")

        def rat(d: dict) -> Fraction:
            return Fraction(int(d["num"]), int(d["den"]))

        eps = doc["epsilon"]
        cert = cls(
            k=int(doc["k"]),
            nu=int(doc["nu"]),
            p=int(doc["p"]),
            a_matrix=parse_half_integral(doc["A"]),
            strictness=Strictness(doc["strictness"]),
            m_list=tuple(int(m) for m in doc["m_list"]),
            slot=int(doc["slot"]),
            dim=int(doc["dim_cusp_space"]),
            l_value=rat(doc["L_value"]),
            alpha=int(doc["alpha"]),
            gamma1=rat(doc["gamma1"]),
            gamma2=rat(doc["gamma2"]),
            zeta3m2k=rat(doc["zeta_3_minus_2k"]),
            epsilon_form=BinaryForm(
                int(eps["degree"]), tuple(rat(c) for c in eps["coeffs"])
            ),
            eval_10=rat(eps["at_1_0"]),
            eval_11=rat(eps["at_1_1"]),
            lhs_invariant=rat(doc["epsilon_witness"]["lhs_invariant"]),
            delta=rat(doc["epsilon_witness"]["delta"]),
            conditions=tuple(
                (name, bool(val["holds"]), bool(val["waived"]))
                for name, val in doc["conditions"].items()
            ),
            verdict=Verdict(doc["verdict"]),
            implied_congruence=str(doc["implied_congruence"]),
            reference_gamma=(
                rat(doc["reference_gamma"]) if "reference_gamma" in doc else None
            ),
        )
        cert.revalidate()
        return cert

    def revalidate(self) -> None:
        """Recompute the verdict from the stored scalars; raise on mismatch."""
        p, k, nu = self.p, self.k, self.nu
        alpha = ord_p(p, self.l_value) if self.l_value != 0 else 0
        cond1 = alpha >= 1
        cond2 = _is_unit(p, self.zeta3m2k) and _is_unit(p, self.lhs_invariant) and _is_unit(
            p, self.delta
        )
        cond3 = p >= 2 * (k + nu) - 3
        cond3p = p >= max(2 * k, k + nu - 2)
        gamma1_unit = _is_unit(p, self.gamma1)
        expected = {
            "1": cond1,
            "2": cond2,
            "3": cond3,
            "3prime": cond3p and gamma1_unit,
        }
        stored = {name: holds for name, holds, _ in self.conditions}
        if stored != expected or alpha != self.alpha:
            raise ValueError("certificate conditions do not match stored inputs")
        verdict = _decide_verdict(
            cond1,
            cond2,
            cond3,
            cond3p,
            gamma1_unit,
            self.strictness is Strictness.STRICT,
            alpha,
            self.dim,
        )
        if verdict is not self.verdict:
            raise ValueError("certificate verdict does not match stored inputs")


def certify(
    k: int,
    nu: int,
    p: int,
    a_matrix: HalfIntegralMatrix,
    m_list: tuple[int, ...] | None = None,
    slot: int | None = None,
    strictness: Strictness = Strictness.STRICT,
    reference_gamma: Fraction | None = None,
) -> CongruenceCertificate:
    """Assemble the congruence certificate for (k, nu, p, A).

    Checks: (1) the p-order alpha of the normalized standard L-value at
    k - 1 is positive; (2) the determinant invariant, zeta(3-2k) and the
    eigenvalue determinant are all p-units; (3) p >= 2(k+nu) - 3, or its
    substitute p >= max(2k, k+nu-2) when gamma1 is a p-unit.  Strict mode
    gates the verdict on all three; relaxed mode downgrades a failing size
    bound to a waived condition.  The stronger mod-p^alpha verdict applies
    only in cusp dimension 1 with alpha >= 2.
    """
    _check_kv(k, nu)
    basis = eigen_basis(k + nu)
    d = basis.dimension
    f = basis.forms[0]
    if m_list is None:
        m_list = tuple(range(1, d + 1))
    m_list = tuple(m_list)
    if slot is None:
        slot = pick_slot(k, nu, a_matrix, p)

    l_value = std_l_value(k, nu, f)
    alpha = ord_p(p, l_value) if l_value != 0 else 0
    zeta3 = zeta_neg(2 * k - 2)
    if p >= 2 * k:
        # von Staudt-Clausen: no prime >= 2k - 1 divides the denominator
        assert ord_p(p, zeta3) >= 0
    lhs, delta = cond2_determinant(k, nu, a_matrix, m_list, slot)
    g1, g2 = gamma1(k, nu), gamma2(k, nu)

    cond1 = alpha >= 1
    cond2 = _is_unit(p, zeta3) and _is_unit(p, lhs) and _is_unit(p, delta)
    cond3 = p >= 2 * (k + nu) - 3
    cond3p = p >= max(2 * k, k + nu - 2)
    gamma1_unit = _is_unit(p, g1)
    strict = strictness is Strictness.STRICT
    size_ok = cond3 or (cond3p and gamma1_unit)
    verdict = _decide_verdict(
        cond1, cond2, cond3, cond3p, gamma1_unit, strict, alpha, d
    )

    eps_form = epsilon(k, nu, 1, a_matrix)
    modulus = f"{p}^{alpha}" if alpha >= 2 and verdict is Verdict.PROVEN_MOD_P_ALPHA else str(p)
    implied = (
        f"lambda_G(q) == (1 + q^{k - 2}) * lambda_f(q) mod {modulus} "
        "for all primes q"
    )
    waive = (not strict) and not size_ok
    conditions = (
        ("1", cond1, False),
        ("2", cond2, False),
        ("3", cond3, waive and not cond3),
        ("3prime", cond3p and gamma1_unit, waive and not (cond3p and gamma1_unit)),
    )
    return CongruenceCertificate(
        k=k,
        nu=nu,
        p=p,
        a_matrix=a_matrix,
        strictness=strictness,
        m_list=m_list,
        slot=slot,
        dim=d,
        l_value=l_value,
        alpha=alpha,
        gamma1=g1,
        gamma2=g2,
        zeta3m2k=zeta3,
        epsilon_form=eps_form,
        eval_10=eps_form.evaluate(1, 0),
        eval_11=eps_form.evaluate(1, 1),
        lhs_invariant=lhs,
        delta=delta,
        conditions=conditions,
        verdict=verdict,
        implied_congruence=implied,
        reference_gamma=reference_gamma,
    )
