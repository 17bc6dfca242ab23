"""Biased urn: Fisher's noncentral hypergeometric distribution.

Sensitivity analysis asks what happens if working-supporting items were
easier to draw than rival-supporting ones. That is modeled by an odds
ratio omega applied multiplicatively per working-supporting item drawn:
a draw of k such items carries weight C(t, k) * C(r, n - k) * omega**k,
normalized over the support window. At omega = 1 this reduces to the
central hypergeometric of the unbiased urn.

This is the conditional (simultaneous-draw) noncentral family, not the
sequential-draw one: the bias reweights size-n subsets of the urn rather
than changing the draw-by-draw dynamics, and the two families differ for
omega != 1. The exact enumeration oracle and the closed-form sensitivity
check both agree with this family.

Evaluation is exact for desk-scale urns: a float omega is a dyadic
rational p/q, so every term C(t, j) * C(r, n - j) * p**j * q**(hi - j) is
an arbitrary-precision integer and the returned float is the correctly
rounded value of an exact rational. Urns with more than
EXACT_TOTAL_LIMIT items switch to log-space summation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .exact import binomial, log_binomial
from .urn import UrnSpec

__all__ = ["fnch_pmf", "fnch_tail", "EXACT_TOTAL_LIMIT"]

EXACT_TOTAL_LIMIT = 300


def _as_odds(omega) -> Fraction:
    """Validate omega > 0 and return it as an exact rational."""
    try:
        frac = Fraction(omega)
    except (ValueError, OverflowError, TypeError) as exc:
        raise DomainError(f"odds ratio must be a finite positive number, got {omega!r}") from exc
    if frac <= 0:
        raise DomainError(f"odds ratio must be positive, got {omega!r}")
    return frac


@lru_cache(maxsize=512)
def _exact_terms(urn: UrnSpec, odds: Fraction) -> tuple[int, ...]:
    """Integer weights of each support point j = lo..hi, common factor cleared.

    With odds = p/q the term for j is C(t,j) C(r,n-j) p**j q**(hi-j); the
    shared power of q cancels in every ratio of sums, as does p**lo.
    """
    t, r, n = urn.t_count, urn.r_count, urn.sample_size
    lo, hi = urn.support()
    p, q = odds.numerator, odds.denominator
    return tuple(
        binomial(t, j) * binomial(r, n - j) * p ** (j - lo) * q ** (hi - j)
        for j in range(lo, hi + 1)
    )


@lru_cache(maxsize=512)
def _log_terms(urn: UrnSpec, odds: Fraction) -> tuple[float, ...]:
    t, r, n = urn.t_count, urn.r_count, urn.sample_size
    lo, hi = urn.support()
    log_omega = math.log(odds.numerator) - math.log(odds.denominator)
    return tuple(
        log_binomial(t, j) + log_binomial(r, n - j) + j * log_omega
        for j in range(lo, hi + 1)
    )


def _log_sum(values: tuple[float, ...]) -> float:
    m = max(values)
    return m + math.log(math.fsum(math.exp(v - m) for v in values))


def fnch_pmf(urn: UrnSpec, k: int, omega) -> float:
    """Probability of drawing exactly k working-supporting items at bias omega."""
    odds = _as_odds(omega)
    lo, hi = urn.support()
    if k < lo or k > hi:
        return 0.0
    if urn.total <= EXACT_TOTAL_LIMIT:
        terms = _exact_terms(urn, odds)
        return float(Fraction(terms[k - lo], sum(terms)))
    logs = _log_terms(urn, odds)
    return math.exp(logs[k - lo] - _log_sum(logs))


def fnch_tail(urn: UrnSpec, omega) -> float:
    """Probability of drawing the observed support count or more at bias omega.

    Strictly increasing in omega whenever the observed count sits above the
    bottom of the support window, which is what makes the sensitivity
    analysis solvable by bisection.
    """
    odds = _as_odds(omega)
    x = urn.support_count
    lo, hi = urn.support()
    if urn.total <= EXACT_TOTAL_LIMIT:
        terms = _exact_terms(urn, odds)
        return float(Fraction(sum(terms[max(x, lo) - lo :]), sum(terms)))
    logs = _log_terms(urn, odds)
    return math.exp(_log_sum(logs[max(x, lo) - lo :]) - _log_sum(logs))
