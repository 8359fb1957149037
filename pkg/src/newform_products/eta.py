"""Dedekind eta, signed-argument eta, eta quotients, and the E2 identity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qseries import (
    FracSeries,
    PowerSeries,
    frac_mul,
    frac_pow,
    frac_subst_scale,
)


@dataclass(frozen=True)
class EtaQuotient:
    """Finite product prod_t eta(q^t)^{r_t}, stored as (t, r) terms, t ascending."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 0
        for t, r in self.terms:
            if t <= prev or r == 0:
                raise ValueError("terms must have ascending unique t and nonzero r")
            prev = t

    @property
    def weight_numerator(self) -> int:
        """Twice the modular weight: sum of the exponents r_t."""
        return sum(r for _, r in self.terms)

    @property
    def leading_exponent(self) -> Fraction:
        return Fraction(sum(t * r for t, r in self.terms), 24)

    def __str__(self):
        return " * ".join(f"eta(q^{t})^{r}" for t, r in self.terms) or "1"


def euler_product(order: int) -> PowerSeries:
    """prod_{n>=1} (1 - q^n) truncated, via Euler's pentagonal number theorem."""
    if order < 1:
        raise ValueError("order must be >= 1")
    terms = {0: 1}
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= order and e2 >= order:
            break
        sign = -1 if k % 2 else 1
        if e1 < order:
            terms[e1] = sign
        if e2 < order:
            terms[e2] = sign
        k += 1
    return PowerSeries.from_terms(terms, order)


def euler_product_dense(order: int) -> PowerSeries:
    """Oracle: the same product by literal factor-by-factor multiplication."""
    p = PowerSeries.one(order)
    for n in range(1, order):
        p = p * PowerSeries.from_terms({0: 1, n: -1}, order)
    return p


def dedekind_eta(order: int) -> FracSeries:
    """eta(q) = q^(1/24) * prod (1 - q^n), inner product to the given order."""
    return FracSeries.make(24, 1, euler_product(order).subst_monomial(1, 24))


def eta_signed(t: int, sign: int, order: int) -> FracSeries:
    """eta(sign * q^t) = q^(t/24) * prod (1 - sign^n q^(t n)).

    The 24th-root-of-unity ambiguity of (-q^t)^(1/24) is resolved by keeping
    the positive-branch prefactor; the theta-identity checks pin this choice.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    if sign == 1:
        inner = euler_product(order)
    else:
        inner = PowerSeries.one(order)
        for n in range(1, order):
            # factor 1 - (-1)^n q^n
            c = -1 if n % 2 == 0 else 1
            inner = inner * PowerSeries.from_terms({0: 1, n: c}, order)
    scaled = inner.subst_monomial(1, t)
    return FracSeries.make(24, t, scaled.subst_monomial(1, 24))


def eta_quotient_series(eq: EtaQuotient, order: int) -> FracSeries:
    """Expand the quotient with inner products carried to the given q-order."""
    result = None
    for t, r in eq.terms:
        inner_order = order // t + 1
        part = frac_pow(frac_subst_scale(dedekind_eta(max(inner_order, 2)), t), r)
        result = part if result is None else frac_mul(result, part)
    if result is None:
        return FracSeries.from_power_series(PowerSeries.one(order))
    return result


def e2_series(order: int) -> PowerSeries:
    """E2 = 1/24 - sum sigma_1(n) q^n, exact; only the constant is rational."""
    if order < 1:
        raise ValueError("order must be >= 1")
    c = [Fraction(0)] * order
    c[0] = Fraction(1, 24)
    for d in range(1, order):
        for m in range(d, order, d):
            c[m] -= d
    return PowerSeries(tuple(c))


def verify_e2_identity(order: int) -> bool:
    """Check q (d eta / dq) / eta = E2 to the given order.

    The fractional prefactor q^(1/24) contributes the constant 1/24, so the
    check reduces to 1/24 + q P'/P = E2 with P the Euler product.
    """
    p = euler_product(order)
    lhs = p.q_d_dq().to_rational() * p.to_rational().inverse()
    lhs = PowerSeries((lhs.coeffs[0] + Fraction(1, 24),) + lhs.coeffs[1:])
    return lhs.coeffs == e2_series(order).coeffs
