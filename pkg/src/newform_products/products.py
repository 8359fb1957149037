"""Product-formula machinery: exponent extraction and reconstruction.

A monic-at-q integer series f = q + ... determines unique integers g_n with
f = q * prod (1 - q^n)^{g_n}.  Extraction goes through the logarithmic
derivative: writing 1 - q f'/f = sum c_m q^m gives c_m = sum_{d|m} d*g_d,
inverted by Moebius.  A slower peel-off route is kept as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import divisors, mobius
from .errors import (
    BlockMismatch,
    InternalIntegralityFailure,
    NonMonicSeries,
    PrecisionExceeded,
    ZeroSequence,
)
from .qseries import PowerSeries


@dataclass(frozen=True)
class ExponentSequence:
    """Exponents g_1..g_upto of the infinite-product form."""

    g: tuple

    @property
    def upto(self) -> int:
        return len(self.g)

    def at(self, n: int):
        if not 1 <= n <= self.upto:
            raise PrecisionExceeded(f"g_{n} beyond computed range {self.upto}")
        return self.g[n - 1]


@dataclass(frozen=True)
class BlockProfile:
    """Result of reading an exponent sequence as r * a_{n/t} on the t-grid."""

    r_check: int
    t_check: int
    a: tuple
    gcd_prefix: int
    monotone_report: tuple

    @property
    def length(self) -> int:
        return len(self.a)


def _monic_unit_part(f: PowerSeries) -> PowerSeries:
    if f.coeffs[0] != 0 or f.order < 2 or f.coeffs[1] != 1:
        raise NonMonicSeries("series must have shape q + O(q^2)")
    return PowerSeries(f.coeffs[1:])


def log_derivative_quotient(f: PowerSeries) -> PowerSeries:
    """E_f = q f'/f for f = q + O(q^2); constant term 1, order = order(f) - 1.

    Computed in integer arithmetic as 1 + q u'/u with u = f/q.
    """
    u = _monic_unit_part(f)
    e = u.q_d_dq() * u.inverse()
    return PowerSeries((e.coeffs[0] + 1,) + e.coeffs[1:])


def extract_exponents(f: PowerSeries) -> ExponentSequence:
    """Exponents g_n with f = q * prod (1-q^n)^{g_n}, for n < order(f) - 1."""
    e = log_derivative_quotient(f)
    # 1 - E_f = sum_{m>=1} c_m q^m with c_m = sum_{d|m} d * g_d
    c = [-v for v in e.coeffs]
    g = []
    for m in range(1, len(c)):
        s = sum(mobius(m // d) * c[d] for d in divisors(m))
        if s % m != 0:
            raise InternalIntegralityFailure(
                f"Moebius inversion gave non-integer exponent at n={m}"
            )
        g.append(s // m)
    return ExponentSequence(tuple(g))


def extract_exponents_peeling(f: PowerSeries) -> ExponentSequence:
    """Oracle route: successively divide f/q by (1 - q^m)^{g_m}."""
    h = _monic_unit_part(f)
    g = []
    for m in range(1, h.order):
        gm = -h.coeffs[m]
        g.append(gm)
        if gm != 0:
            factor = PowerSeries.from_terms({0: 1, m: -1}, h.order)
            h = h * factor.pow_int(-gm)
        assert all(h.coeffs[k] == 0 for k in range(1, m + 1))
    return ExponentSequence(tuple(g))


def reconstruct(g: ExponentSequence, order: int) -> PowerSeries:
    """q * prod_{n <= order-1} (1 - q^n)^{g_n}, truncated to the given order."""
    if order > g.upto + 1:
        raise PrecisionExceeded(
            f"reconstruction to order {order} needs exponents up to {order - 1}, "
            f"have {g.upto}"
        )
    u = unit_product(g, order - 1) if order > 1 else PowerSeries.one(1)
    return PowerSeries((0,) + u.coeffs[: order - 1])


def unit_product(g: ExponentSequence, order: int) -> PowerSeries:
    """prod_{n < order} (1 - q^n)^{g_n} truncated to the given order."""
    if order > g.upto + 1:
        raise PrecisionExceeded(
            f"product to order {order} needs exponents up to {order - 1}, have {g.upto}"
        )
    u = PowerSeries.one(order)
    for n in range(1, order):
        gn = g.g[n - 1]
        if gn:
            u = u * PowerSeries.from_terms({0: 1, n: -1}, order).pow_int(gn)
    return u


def block_profile(g: ExponentSequence, r_check: int, t_check: int) -> BlockProfile:
    """Read g as g_{t*n} = r * a_n (zero off the t-grid); report shape violations.

    Monotonicity/positivity of a_n is expected but not guaranteed, so it is
    reported, never asserted: some known rows start at zero or plateau.
    """
    if r_check < 1 or t_check < 1:
        raise ValueError("r_check and t_check must be positive")
    for m in range(1, g.upto + 1):
        if m % t_check != 0 and g.at(m) != 0:
            raise BlockMismatch(f"g_{m} = {g.at(m)} nonzero off the t={t_check} grid")
    a = []
    for n in range(1, g.upto // t_check + 1):
        v = g.at(t_check * n)
        if v % r_check != 0:
            raise BlockMismatch(f"g_{t_check * n} = {v} not divisible by r={r_check}")
        a.append(v // r_check)
    violations = []
    for i, v in enumerate(a, start=1):
        if v <= 0 or (i >= 2 and v <= a[i - 2]):
            violations.append(i)
    return BlockProfile(
        r_check=r_check,
        t_check=t_check,
        a=tuple(a),
        gcd_prefix=math.gcd(*a) if a else 0,
        monotone_report=tuple(violations),
    )


def infer_block(g: ExponentSequence) -> tuple[int, int]:
    """Infer (r, t): t = gcd of the support indices, r = gcd of the values."""
    support = [n for n in range(1, g.upto + 1) if g.at(n) != 0]
    if not support:
        raise ZeroSequence("cannot infer a block from the zero sequence")
    t = math.gcd(*support)
    r = math.gcd(*(abs(g.at(n)) for n in support))
    return r, t


def generalized_logder_check(
    blocks, f: PowerSeries, order: int
) -> tuple[bool, int | None]:
    """Check the multi-block logarithmic-derivative expansion against f.

    blocks: iterable of (a_values, r_i, t_i) where a_values is the block's
    exponent prefix a_1, a_2, ...  Verifies, for every m < order, that the
    coefficient c_m of 1 - q f'/f equals sum_{d|m} d * lam_d with
    lam_d = sum_{t_i | d} r_i * a_{i, d/t_i}.  Returns (ok, first mismatch m).
    """
    e = log_derivative_quotient(f)
    checkable = min(order, e.order)
    for _, (a_values, _, t_i) in enumerate(blocks):
        need = (checkable - 1) // t_i
        if len(a_values) < need:
            raise PrecisionExceeded(
                f"block with t={t_i} supplies {len(a_values)} terms, needs {need}"
            )
    for m in range(1, checkable):
        c_m = -e.coeffs[m]
        total = 0
        for d in divisors(m):
            lam = 0
            for a_values, r_i, t_i in blocks:
                if d % t_i == 0:
                    lam += r_i * a_values[d // t_i - 1]
            total += d * lam
        if total != c_m:
            return False, m
    return True, None
