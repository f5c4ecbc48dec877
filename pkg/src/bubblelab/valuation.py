"""Discounting, fundamental values, and bubble verdicts on realized paths.

Discount factors compound realized returns: q_0 = 1, q_{t+1} = q_t / R_t,
which makes q_t P_t = q_{t+1} (P_{t+1} + D_{t+1}) an identity on any path
whose rates were computed from its own prices. Iterating it,

    P_t = sum_{s=1}^{T} (q_{t+s}/q_t) D_{t+s}  +  (q_{t+T}/q_t) P_{t+T}

for every truncation T: price = discounted dividends + discounted resale.
The fundamental value is the T -> infinity limit of the first term; the
bubble is whatever survives in the second.

On a finite sample the infinite sum is estimated by a truncated sum plus a
geometric continuation D_{t+T} * (q_{t+T}/q_t) * R/(R-1), where R is the
terminal rate estimated from the final tenth of the path (trusted only if
that tail is flat to 1e-6). The same quantity serves as the truncation
error scale ("tail bound"): a bubble is only called when the bubble
component clears three times the bound, and its absence is only called when
on top of that the bound is negligible against the price itself. Everything
else is reported Inconclusive; desk-scale horizons cannot decide boundary
cases and this module does not pretend otherwise.

If the terminal rate is at or below 1 while dividends stay bounded away
from zero, the dividend sum diverges: no finite price could ever equal it,
and the path is flagged ``infinite_pv`` instead of valued.

``detect_bubble`` is the complementary series test: on a positive-price
path, sum D_t / P_t diverges exactly when the price is all fundamental, so
the series classifier's verdict maps directly to bubble / no bubble.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .paths import EquilibriumPath
from .recur import SeriesClass, SeriesKind, classify_series

BUBBLY = "bubbly"
FUNDAMENTAL = "fundamental"
INCONCLUSIVE = "inconclusive"

_RATE_SPREAD_TOL = 1e-6    # tail rates must be this flat to extrapolate
_BOUND_MULTIPLE = 3.0      # bubble must clear this many tail bounds
_NEGLIGIBLE_TAIL = 1e-3    # tail bound vs price for a Fundamental verdict


@dataclass(frozen=True)
class DiscountPath:
    """Compounded discount factors q_t along a realized path."""

    q: np.ndarray


def _usable_rates(path: EquilibriumPath) -> np.ndarray:
    rates = path.rate[:-1]   # the final entry is NaN by construction
    if rates.size == 0:
        raise ValueError("path too short to discount")
    if not np.all(np.isfinite(rates)) or np.any(rates <= 0.0):
        raise ValueError("discounting requires positive finite rates")
    return rates


def discount_factors(path: EquilibriumPath) -> DiscountPath:
    rates = _usable_rates(path)
    q = np.empty(path.price.size)
    q[0] = 1.0
    q[1:] = np.exp(-np.cumsum(np.log(rates)))
    return DiscountPath(q=q)


def no_arbitrage_residuals(path: EquilibriumPath) -> np.ndarray:
    """Relative residuals of q_t P_t = q_{t+1} (P_{t+1} + D_{t+1})."""
    q = discount_factors(path).q
    lhs = q[:-1] * path.price[:-1]
    rhs = q[1:] * (path.price[1:] + path.dividend[1:])
    return np.abs(rhs - lhs) / np.abs(lhs)


def truncation_identity_residuals(
    path: EquilibriumPath, truncation: int
) -> np.ndarray:
    """Residuals of the exact decomposition
    P_t = sum_{s<=T} (q_{t+s}/q_t) D_{t+s} + (q_{t+T}/q_t) P_{t+T},
    relative to P_t, for t = 0..n-1-T."""
    rates = _usable_rates(path)
    n = path.price.size
    T = truncation
    if not (1 <= T <= n - 1):
        raise ValueError("truncation must lie in [1, n-1]")
    logq = np.concatenate(([0.0], np.cumsum(np.log(rates))))  # -log q_t
    m = n - T
    out = np.empty(m)
    for t in range(m):
        ratios = np.exp(logq[t] - logq[t + 1 : t + T + 1])
        pv = float(ratios @ path.dividend[t + 1 : t + T + 1])
        resale = ratios[-1] * path.price[t + T]
        out[t] = abs(pv + resale - path.price[t]) / path.price[t]
    return out


@dataclass(frozen=True)
class BubbleReport:
    fundamental: np.ndarray       # V_t, defined for t = 0..n-1-truncation
    bubble_component: np.ndarray  # P_t - V_t on the same range
    tail_bound: np.ndarray        # truncation error scale, same range
    limit_rate: float             # terminal rate estimate
    rate_spread: float            # max - min over the rate tail
    verdict: str                  # bubbly | fundamental | inconclusive
    infinite_pv: bool             # dividend PV diverges; no valuation possible
    tvc_estimate: float           # q_{n-1} P_{n-1}
    truncation: int


def fundamental_value(path: EquilibriumPath, truncation: int) -> BubbleReport:
    """Estimate V_t and the bubble component P_t - V_t along the path.

    ``truncation`` is the window length T of explicitly discounted
    dividends; V is reported for t = 0..n-1-T. See the module docstring for
    the verdict rules.
    """
    n = path.price.size
    T = truncation
    if not (10 <= T <= n - 1):
        raise ValueError("truncation must lie in [10, n-1]")
    if np.any(path.price <= 0.0):
        raise ValueError("valuation requires strictly positive prices")
    if np.any(path.dividend < 0.0):
        raise ValueError("dividends must be nonnegative")

    rates = _usable_rates(path)
    logq = np.concatenate(([0.0], np.cumsum(np.log(rates))))
    q = np.exp(-logq)
    tvc = float(q[-1] * path.price[-1])
    m = n - T

    tail_m = max(10, rates.size // 10)
    rate_tail = rates[-tail_m:]
    limit_rate = float(np.mean(rate_tail))
    rate_spread = float(np.max(rate_tail) - np.min(rate_tail))

    if not np.any(path.dividend > 0.0):
        # pure bubble: the fundamental is exactly zero
        zeros = np.zeros(m)
        return BubbleReport(
            fundamental=zeros,
            bubble_component=path.price[:m].copy(),
            tail_bound=zeros,
            limit_rate=limit_rate,
            rate_spread=rate_spread,
            verdict=BUBBLY,
            infinite_pv=False,
            tvc_estimate=tvc,
            truncation=T,
        )

    div_m = max(10, n // 10)
    div_tail_min = float(np.min(path.dividend[-div_m:]))

    trunc_sum = np.empty(m)
    qr_end = np.empty(m)    # q_{t+T} / q_t
    for t in range(m):
        ratios = np.exp(logq[t] - logq[t + 1 : t + T + 1])
        trunc_sum[t] = float(ratios @ path.dividend[t + 1 : t + T + 1])
        qr_end[t] = ratios[-1]

    if limit_rate <= 1.0 and div_tail_min > 0.0:
        # geometric continuation diverges: the path cannot be valued
        inf_arr = np.full(m, math.inf)
        return BubbleReport(
            fundamental=trunc_sum,
            bubble_component=path.price[:m] - trunc_sum,
            tail_bound=inf_arr,
            limit_rate=limit_rate,
            rate_spread=rate_spread,
            verdict=INCONCLUSIVE,
            infinite_pv=True,
            tvc_estimate=tvc,
            truncation=T,
        )

    if rate_spread >= _RATE_SPREAD_TOL or limit_rate <= 1.0:
        # terminal rate not trustworthy; no continuation can be attached
        fundamental = trunc_sum
        bubble = path.price[:m] - fundamental
        return BubbleReport(
            fundamental=fundamental,
            bubble_component=bubble,
            tail_bound=np.full(m, math.inf),
            limit_rate=limit_rate,
            rate_spread=rate_spread,
            verdict=INCONCLUSIVE,
            infinite_pv=False,
            tvc_estimate=tvc,
            truncation=T,
        )

    tail_est = qr_end * path.dividend[T:] * (limit_rate / (limit_rate - 1.0))
    fundamental = trunc_sum + tail_est
    bubble = path.price[:m] - fundamental
    tail_bound = tail_est

    slack = _BOUND_MULTIPLE * tail_bound + 1e-12 * path.price[:m]
    if np.any(bubble < -slack):
        raise ValueError(
            "negative bubble component beyond the truncation error; "
            "the input is not a no-arbitrage equilibrium path"
        )
    last = m - 1
    if bubble[last] > slack[last]:
        verdict = BUBBLY
    elif (
        np.all(bubble <= slack)
        and tail_bound[last] <= _NEGLIGIBLE_TAIL * path.price[last]
    ):
        verdict = FUNDAMENTAL
    else:
        verdict = INCONCLUSIVE
    return BubbleReport(
        fundamental=fundamental,
        bubble_component=bubble,
        tail_bound=tail_bound,
        limit_rate=limit_rate,
        rate_spread=rate_spread,
        verdict=verdict,
        infinite_pv=False,
        tvc_estimate=tvc,
        truncation=T,
    )


@dataclass(frozen=True)
class YieldDetection:
    series: SeriesClass
    verdict: str


def detect_bubble(path: EquilibriumPath) -> YieldDetection:
    """Bubble test via the dividend-yield series: sum_{t>=1} D_t / P_t
    converges iff the price carries a bubble. Maps Convergent -> bubbly,
    Divergent -> fundamental, otherwise inconclusive."""
    if np.any(path.price <= 0.0):
        raise ValueError("the yield test requires strictly positive prices")
    terms = path.dividend[1:] / path.price[1:]
    series = classify_series(terms, horizon=max(100, terms.size))
    if series.kind is SeriesKind.CONVERGENT:
        verdict = BUBBLY
    elif series.kind is SeriesKind.DIVERGENT:
        verdict = FUNDAMENTAL
    else:
        verdict = INCONCLUSIVE
    return YieldDetection(series=series, verdict=verdict)
