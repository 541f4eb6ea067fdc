"""Monte Carlo estimation of secrecy outage capacity and interception
probability from the exact per-realization SNRs.

Per-draw SNRs are computed in closed form from the link statistics, so no
additive noise is ever sampled; that removes estimator variance without bias.
Trials are derived counter-based from (seed, trial index), which makes every
estimate reproducible for any worker count.
"""
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.stats import binom

from .analytic import Scheme, composite_coefficients
from .channel import LinkStatistics, draw_channels, link_statistics, trial_rng
from .params import SystemParams

WORKERS_ENV = "SECRELAY_THREADS"
_CHUNK = 512  # trials per work unit; chunking never affects per-trial values


class InsufficientSampleError(ValueError):
    """Too few trials to resolve the requested outage quantile."""


@dataclass(frozen=True)
class McEstimate:
    value: float      # bit/s for capacities, probability for interception
    std_error: float  # estimated standard error of ``value``
    trials: int
    seed: int


class RatePair(NamedTuple):
    c_d: float  # legitimate rate, bit/s
    c_e: float  # eavesdropper rate, bit/s


class SecrecyEstimates(NamedTuple):
    c_soc: McEstimate
    p0: McEstimate


def _af_rates(g_sr, g_d, g_e, params: SystemParams):
    k = composite_coefficients(params)
    snr_d = k.a * g_d * g_sr / (k.b * g_d + k.c * g_sr + 1.0)
    snr_e = k.d * g_e * g_sr / (k.e_coef * g_e + k.c * g_sr + 1.0)
    return params.w_hz * np.log2(1.0 + snr_d), params.w_hz * np.log2(1.0 + snr_e)


def _df_rates(g_sr, g_d, g_e, params: SystemParams):
    # The relay cannot forward more than it decoded, so the first hop caps
    # the eavesdropper rate exactly as it caps the legitimate one.
    first_hop = params.p_s * params.alpha_sr * g_sr
    snr_d = np.minimum(first_hop, params.p_r * params.alpha_rd * g_d)
    snr_e = np.minimum(first_hop, params.p_r * params.alpha_re * g_e)
    return params.w_hz * np.log2(1.0 + snr_d), params.w_hz * np.log2(1.0 + snr_e)


def af_realization_rates(stats: LinkStatistics, params: SystemParams) -> RatePair:
    """Per-draw legitimate and eavesdropper rates under AF relaying."""
    c_d, c_e = _af_rates(stats.g_sr, stats.g_d, stats.g_e, params)
    return RatePair(float(c_d), float(c_e))


def df_realization_rates(stats: LinkStatistics, params: SystemParams) -> RatePair:
    """Per-draw legitimate and eavesdropper rates under DF relaying."""
    c_d, c_e = _df_rates(stats.g_sr, stats.g_d, stats.g_e, params)
    return RatePair(float(c_d), float(c_e))


def empirical_quantile(samples, epsilon: float) -> float:
    """k-th smallest sample with k = max(1, ceil(epsilon*n)); no interpolation."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("empty sample")
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    k = max(1, math.ceil(epsilon * x.size))
    return float(np.partition(x, k - 1)[k - 1])


def _quantile_std_error(sorted_samples: np.ndarray, epsilon: float) -> float:
    # Order-statistic method: half-width of the 68% binomial band around k.
    n = sorted_samples.size
    j_lo = min(max(int(binom.ppf(0.16, n, epsilon)), 1), n)
    j_hi = min(max(int(binom.ppf(0.84, n, epsilon)), 1), n)
    return float(sorted_samples[j_hi - 1] - sorted_samples[j_lo - 1]) / 2.0


def worker_count() -> int:
    """Worker cap taken from SECRELAY_THREADS; defaults to 1."""
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return max(1, value)


def _collect_statistics(params: SystemParams, trials: int, seed: int):
    """Gather (g_sr, g_d, g_e) for all trials, in trial-index order."""
    out = np.empty((trials, 3))

    def fill(span):
        lo, hi = span
        for i in range(lo, hi):
            stats = link_statistics(draw_channels(params, trial_rng(seed, i)))
            out[i, 0] = stats.g_sr
            out[i, 1] = stats.g_d
            out[i, 2] = stats.g_e

    spans = [(lo, min(lo + _CHUNK, trials)) for lo in range(0, trials, _CHUNK)]
    workers = min(worker_count(), len(spans))
    if workers <= 1:
        for span in spans:
            fill(span)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, spans))
    return out[:, 0], out[:, 1], out[:, 2]


def estimate(scheme, params: SystemParams, trials: int, seed: int) -> SecrecyEstimates:
    """Estimate secrecy outage capacity and interception probability.

    The secrecy outage capacity estimate is the clamped epsilon-quantile of
    the per-draw rate difference; the interception probability is the
    fraction of draws whose eavesdropper rate reaches the legitimate rate
    (ties count as interception).

    Raises:
        ValueError: non-positive trial count or out-of-range seed.
        InsufficientSampleError: trials < 100 or epsilon*trials < 1.
    """
    if trials <= 0:
        raise ValueError(f"trials must be a positive integer, got {trials}")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if trials < 100 or params.epsilon * trials < 1.0:
        raise InsufficientSampleError(
            f"{trials} trials cannot resolve the epsilon={params.epsilon} quantile; "
            "need trials >= 100 and epsilon*trials >= 1"
        )
    scheme = Scheme(scheme)
    g_sr, g_d, g_e = _collect_statistics(params, trials, seed)
    rates = _af_rates if scheme is Scheme.AF else _df_rates
    c_d, c_e = rates(g_sr, g_d, g_e, params)
    diff = np.sort(c_d - c_e)
    c_soc = McEstimate(
        value=max(empirical_quantile(diff, params.epsilon), 0.0),
        std_error=_quantile_std_error(diff, params.epsilon),
        trials=trials,
        seed=seed,
    )
    frac = float(np.count_nonzero(c_e >= c_d)) / trials
    p0 = McEstimate(
        value=frac,
        std_error=math.sqrt(frac * (1.0 - frac) / trials),
        trials=trials,
        seed=seed,
    )
    return SecrecyEstimates(c_soc=c_soc, p0=p0)
