"""Bounded search for product decompositions of weight-two newforms.

Candidates f = prod_i block_i^{r_i}(q^{t_i}) must satisfy two exact linear
constraints (leading exponent 1 and total weight 2):

    sum r_i t_i / (rc_i tc_i) = 1        sum r_i / rc_i = 1

where (rc, tc) are the block's own shape parameters.  All "no match"
outcomes are bounded-search facts, never nonexistence claims.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations_with_replacement

from .arith import divisors
from .elliptic import an_expansion, curve_from_quintuple
from .errors import PrecisionExceeded, UnknownLevel
from .eta import EtaQuotient, eta_quotient_series
from .products import ExponentSequence, extract_exponents, unit_product
from .qseries import FracSeries, PowerSeries, frac_mul, frac_pow, frac_subst_scale
from .registry import BlockRecord, extend_block, record_for

MATCH = "match"
MISMATCH = "mismatch"
UNDECIDED = "undecided"

DEFAULT_OVERLAP_FLOOR = 20
DEFAULT_ETA_EXPONENT_BOUND = 24


@dataclass(frozen=True)
class SearchCandidate:
    """A candidate decomposition: parts are (conductor, r_i, t_i), sorted."""

    parts: tuple[tuple[int, int, int], ...]
    verdict: str | None = None
    match_order: int | None = None
    mismatch_at: Fraction | None = None


def _constraints_hold(blocks: dict[int, BlockRecord], parts) -> bool:
    s_exp = Fraction(0)
    s_wt = Fraction(0)
    for conductor, r, t in parts:
        rec = blocks[conductor]
        s_exp += Fraction(r * t, rec.r_check * rec.t_check)
        s_wt += Fraction(r, rec.r_check)
    return s_exp == 1 and s_wt == 1


def enumerate_candidates(
    blocks: list[BlockRecord], s: int, r_bound: int, t_bound: int
) -> list[SearchCandidate]:
    """All s-part candidates with 0 < |r| <= r_bound, 1 <= t <= t_bound that
    satisfy both constraints exactly; canonical order, reordering-duplicates
    removed."""
    if s not in (1, 2, 3):
        raise ValueError("part count s must be 1, 2, or 3")
    if r_bound < 0 or t_bound < 1:
        raise ValueError("bounds must be positive")
    by_id = {rec.conductor: rec for rec in blocks}
    atoms = [
        (conductor, r, t)
        for conductor in sorted(by_id)
        for t in range(1, t_bound + 1)
        for r in range(-r_bound, r_bound + 1)
        if r != 0
    ]
    out = []
    for combo in combinations_with_replacement(atoms, s):
        if _constraints_hold(by_id, combo):
            out.append(SearchCandidate(parts=tuple(sorted(combo))))
    out.sort(key=lambda c: c.parts)
    return out


def _block_series(rec: BlockRecord, order: int) -> FracSeries:
    """The block as q^(1/(rc*tc)) * prod (1-q^n)^(a_n), inner order as given."""
    a = rec.prefix(order - 1) if order > 1 else ()
    d = rec.r_check * rec.t_check
    inner = unit_product(ExponentSequence(tuple(a)), order)
    return FracSeries.make(d, 1, inner.subst_monomial(1, d))


def assemble(
    cand: SearchCandidate, blocks: list[BlockRecord], order: int
) -> FracSeries:
    """Expand the candidate product with exact fractional-exponent bookkeeping."""
    by_id = {rec.conductor: rec for rec in blocks}
    result = None
    for conductor, r, t in cand.parts:
        rec = by_id[conductor]
        inner_order = -(-order // t) + 1
        available = len(rec.a_extended or rec.a_printed)
        if available < inner_order - 1:
            raise PrecisionExceeded(
                f"block {conductor} extends to a_{available}, candidate needs "
                f"a_{inner_order - 1} at t={t}; extend the block first"
            )
        part = frac_pow(frac_subst_scale(_block_series(rec, inner_order), t), r)
        result = part if result is None else frac_mul(result, part)
    assert result is not None and result.leading_exponent == 1
    return result


def match_against(
    cand: SearchCandidate,
    series: FracSeries,
    target: PowerSeries,
    overlap_floor: int = DEFAULT_OVERLAP_FLOOR,
) -> SearchCandidate:
    """Fill the candidate verdict by coefficient comparison against the target.

    target must be monic at q.  A nonzero coefficient at a fractional
    exponent is a mismatch at that exponent.
    """
    if target.coeffs[0] != 0 or target.order < 2 or target.coeffs[1] != 1:
        raise ValueError("target must be monic at q")
    overlap = min(int(series.exponent_bound()), target.order)
    for e, c in series.support():
        if e >= overlap:
            break
        if e.denominator != 1:
            return replace(cand, verdict=MISMATCH, mismatch_at=e)
        n = int(e)
        if target.coeffs[n] != c:
            return replace(cand, verdict=MISMATCH, mismatch_at=e)
    # zero coefficients of the series against nonzero target entries
    for n in range(1, overlap):
        c = series.coeff_at(n) if (n * series.denom - series.offset) >= 0 else 0
        if c != target.coeffs[n]:
            return replace(cand, verdict=MISMATCH, mismatch_at=Fraction(n))
    if overlap - 1 < overlap_floor:
        return replace(cand, verdict=UNDECIDED, match_order=overlap - 1)
    return replace(cand, verdict=MATCH, match_order=overlap - 1)


def eta_quotient_search(
    level: int,
    order: int,
    exponent_bound: int = DEFAULT_ETA_EXPONENT_BOUND,
) -> list[EtaQuotient]:
    """All classical eta quotients with scales t | level, sum r = 4,
    sum t*r = 24, |r| <= exponent_bound, matching the level's registry
    newform to the given order.

    The exponents of a matching quotient are determined triangularly by the
    target's extracted g_n (g_n = sum_{t|n} r_t), so the bounded enumeration
    reduces to solving that system on the divisors of the level and checking
    the remaining coefficients; the found quotient's series is re-expanded
    and compared as an independent confirmation.
    """
    rec = record_for(level)
    if rec is None:
        raise UnknownLevel(f"no registry record for conductor {level}")
    target = an_expansion(curve_from_quintuple(rec.curves[0]), order)
    g = extract_exponents(target)
    r: dict[int, int] = {}
    for t in divisors(level):
        if t > g.upto:
            break
        r[t] = g.at(t) - sum(r[d] for d in divisors(t) if d != t)
    # consistency of every extracted exponent with the periodic pattern
    for n in range(1, g.upto + 1):
        expected = sum(rt for t, rt in r.items() if n % t == 0)
        if g.at(n) != expected:
            return []
    terms = tuple(sorted((t, rt) for t, rt in r.items() if rt != 0))
    if not terms:
        return []
    if any(abs(rt) > exponent_bound for _, rt in terms):
        return []
    eq = EtaQuotient(terms)
    if sum(rt for _, rt in terms) != 4 or sum(t * rt for t, rt in terms) != 24:
        return []
    # independent confirmation by direct expansion
    series = eta_quotient_series(eq, order)
    for n in range(1, order):
        if series.coeff_at(n) != target.coeffs[n]:
            return []
    return [eq]
