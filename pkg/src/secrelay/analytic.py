"""Closed-form secrecy performance of AF and DF relaying under imperfect CSI.

Capacities in bit/s, probabilities in [0, 1].  Every secrecy outage capacity
is clamped at zero.  The large-antenna (channel-hardening) approximations are
exact in the limit and validated against simulation by the montecarlo module.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .params import SystemParams


class Scheme(str, Enum):
    AF = "AF"
    DF = "DF"


class Regime(str, Enum):
    LARGE_SOURCE_POWER = "large-source-power"
    LARGE_RELAY_POWER = "large-relay-power"


@dataclass(frozen=True)
class CompositeCoefficients:
    """Power/path-loss products shared by the SNR expressions.

    Built so that a == c*b and d == c*e_coef hold exactly in floating point.
    """

    a: float       # p_s * p_r * alpha_sr * alpha_rd
    b: float       # p_r * alpha_rd
    c: float       # p_s * alpha_sr
    d: float       # p_s * p_r * alpha_sr * alpha_re
    e_coef: float  # p_r * alpha_re


@dataclass(frozen=True)
class SchemeReport:
    scheme: Scheme
    c_d: float    # legitimate channel capacity, bit/s
    c_soc: float  # secrecy outage capacity, bit/s (clamped at 0)
    p0: float     # interception probability


class AsymptoticLimit(NamedTuple):
    c_soc_limit: float
    p0_limit: float


def composite_coefficients(params: SystemParams) -> CompositeCoefficients:
    b = params.p_r * params.alpha_rd
    c = params.p_s * params.alpha_sr
    e_coef = params.p_r * params.alpha_re
    return CompositeCoefficients(a=c * b, b=b, c=c, d=c * e_coef, e_coef=e_coef)


def legit_capacity_af(params: SystemParams) -> float:
    """Hardened legitimate capacity of the AF link, bit/s."""
    k = composite_coefficients(params)
    n = params.n_r
    snr = k.a * params.rho * n * n / (k.b * params.rho * n + k.c * n + 1.0)
    return params.w_hz * math.log2(1.0 + snr)


def _eavesdropper_allowance_af(params: SystemParams) -> float:
    # Rate ceded to the eavesdropper at outage level epsilon.  With
    # 0 < epsilon <= 1 both numerator and denominator of the ratio are
    # non-positive, so the log argument is >= 1; anything else means the
    # inputs are corrupt.
    k = composite_coefficients(params)
    n = params.n_r
    ln_eps = math.log(params.epsilon)
    arg = 1.0 + k.d * n * ln_eps / (k.e_coef * ln_eps - k.c * n - 1.0)
    assert arg >= 1.0, f"eavesdropper log argument {arg} < 1: corrupt parameters"
    return params.w_hz * math.log2(arg)


def secrecy_outage_capacity_af(params: SystemParams) -> float:
    """Secrecy outage capacity of AF relaying at outage level epsilon, bit/s."""
    return max(legit_capacity_af(params) - _eavesdropper_allowance_af(params), 0.0)


def interception_probability_af(params: SystemParams) -> float:
    """Probability that the AF eavesdropper capacity reaches the legitimate one.

    Zero source or relay power is reported as the convention 1.0 (no secrecy
    is possible), not as a value of the closed form.
    """
    if params.p_s == 0.0 or params.p_r == 0.0:
        return 1.0
    k = composite_coefficients(params)
    n = params.n_r
    snr_d = k.a * params.rho * n * n / (k.b * params.rho * n + k.c * n + 1.0)
    p = math.exp(-(k.c * n + 1.0) * snr_d / (k.d * n - k.e_coef * snr_d))
    return min(max(p, 0.0), 1.0)


def legit_capacity_df(params: SystemParams) -> float:
    """Hardened legitimate capacity of the DF link (min of the two hops), bit/s."""
    n = params.n_r
    snr = min(params.p_s * params.alpha_sr * n, params.p_r * params.alpha_rd * params.rho * n)
    return params.w_hz * math.log2(1.0 + snr)


def secrecy_outage_capacity_df(params: SystemParams) -> float:
    """Secrecy outage capacity of DF relaying at outage level epsilon, bit/s."""
    allowance = params.w_hz * math.log2(1.0 - params.p_r * params.alpha_re * math.log(params.epsilon))
    return max(legit_capacity_df(params) - allowance, 0.0)


def interception_probability_df(params: SystemParams) -> float:
    """Probability that the DF eavesdropper capacity reaches the legitimate one.

    Zero relay power is reported as the convention 0.0 (nothing is
    transmitted, so nothing can be intercepted).
    """
    if params.p_r == 0.0:
        return 0.0
    n = params.n_r
    snr_d = min(params.p_s * params.alpha_sr * n, params.p_r * params.alpha_rd * params.rho * n)
    p = math.exp(-snr_d / (params.p_r * params.alpha_re))
    return min(max(p, 0.0), 1.0)


def eavesdropper_cdf_af(x: float, params: SystemParams) -> float:
    """CDF of the hardened AF eavesdropper SNR, defined on [0, d*n_r/e_coef)."""
    k = composite_coefficients(params)
    if k.d <= 0.0 or k.e_coef <= 0.0:
        raise ValueError("eavesdropper SNR law requires positive p_s and p_r")
    n = params.n_r
    bound = k.d * n / k.e_coef
    if not 0.0 <= x < bound:
        raise ValueError(f"x must lie in [0, {bound}), got {x}")
    return 1.0 - math.exp(-(k.c * n + 1.0) * x / (k.d * n - k.e_coef * x))


def asymptotic_limit(params: SystemParams, regime, scheme) -> AsymptoticLimit:
    """High-power limits of (secrecy outage capacity, interception probability).

    Large relay power collapses the secrecy outage capacity for both schemes,
    with interception probability 0 (AF) or 1 (DF).  Large source power gives
    a power-free ceiling for AF and a relay-power-dependent one for DF, both
    with the same interception probability.
    """
    regime = Regime(regime)
    scheme = Scheme(scheme)
    if regime is Regime.LARGE_RELAY_POWER:
        return AsymptoticLimit(0.0, 0.0 if scheme is Scheme.AF else 1.0)
    if params.epsilon == 1.0:
        raise ValueError("epsilon = 1 leaves the large-source-power limit undefined")
    ln_eps = math.log(params.epsilon)
    rho_n = params.rho * params.n_r
    p0 = min(math.exp(-params.alpha_rd * rho_n / params.alpha_re), 1.0)
    if scheme is Scheme.AF:
        arg = -params.alpha_rd * rho_n / (params.alpha_re * ln_eps)
        # rho = 0 collapses the ceiling entirely (log argument 0).
        c_soc = params.w_hz * math.log2(arg) if arg > 0.0 else 0.0
    else:
        c_soc = params.w_hz * math.log2(
            (1.0 + params.p_r * params.alpha_rd * rho_n)
            / (1.0 - params.p_r * params.alpha_re * ln_eps)
        )
    return AsymptoticLimit(max(c_soc, 0.0), p0)


def scheme_report(scheme, params: SystemParams) -> SchemeReport:
    """Evaluate all three closed-form figures of merit for one scheme."""
    scheme = Scheme(scheme)
    if scheme is Scheme.AF:
        return SchemeReport(
            scheme=scheme,
            c_d=legit_capacity_af(params),
            c_soc=secrecy_outage_capacity_af(params),
            p0=interception_probability_af(params),
        )
    return SchemeReport(
        scheme=scheme,
        c_d=legit_capacity_df(params),
        c_soc=secrecy_outage_capacity_df(params),
        p0=interception_probability_df(params),
    )
