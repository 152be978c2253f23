"""Unimodality analysis of rating histograms.

The dip statistic measures how far the empirical CDF of a sample lies
from the nearest unimodal CDF; its null distribution is obtained by a
seeded uniform bootstrap. Discrete vote histograms are expanded to a
sample with deterministic equal-spaced offsets inside each score bin,
which breaks the heavy ties that would otherwise degenerate the
statistic while keeping runs exactly reproducible.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distributions import NUM_BINS, RatingDistribution
from .errors import MissingRaterCount, TooFewPoints

__all__ = [
    "ModalityResult",
    "dip_statistic",
    "dip_test",
    "count_modes",
    "expand_histogram",
    "null_dip_samples",
]

DEFAULT_BOOT = 2000
DEFAULT_SIGNIFICANCE = 0.05


@dataclass(frozen=True)
class ModalityResult:
    dip: float
    p_value: float
    n: int
    mode_count: int
    unimodal: bool


def dip_statistic(sample: Sequence[float]) -> float:
    """Hartigan-Hartigan dip of a sorted sample.

    Runs the standard iterative greatest-convex-minorant / least-concave-
    majorant algorithm. The result is floored at 1/(2n), the exact value
    for perfectly unimodal configurations, and never exceeds 0.25.
    """
    x = np.asarray(sample, dtype=float)
    n = len(x)
    if n < 2:
        raise TooFewPoints(f"dip needs at least 2 points, got {n}")
    if np.any(np.diff(x) < 0):
        raise ValueError("sample must be sorted ascending")
    floor = 1.0 / (2.0 * n)
    if n < 4 or x[0] == x[-1]:
        return floor
    with np.errstate(divide="ignore", invalid="ignore"):
        dip_scaled = _dip_scaled(x, n)
    return max(dip_scaled / (2.0 * n), floor)


def _dip_scaled(x: np.ndarray, n: int) -> float:
    # Deviations are tracked in units of 2n*dip, as in the classic
    # algorithm; ties produce inf/nan intermediates that IEEE comparison
    # semantics discard, hence the errstate guard in the caller.
    low, high = 0, n - 1
    dip_value = 1.0

    # mn[j]: leftmost index joined with j for the greatest convex minorant.
    mn = np.zeros(n, dtype=np.int64)
    for j in range(1, n):
        mn[j] = j - 1
        while True:
            mnj = mn[j]
            mnmnj = mn[mnj]
            if mnj == 0 or (x[j] - x[mnj]) * (mnj - mnmnj) < (x[mnj] - x[mnmnj]) * (j - mnj):
                break
            mn[j] = mnmnj

    # mj[k]: rightmost index joined with k for the least concave majorant.
    mj = np.zeros(n, dtype=np.int64)
    mj[n - 1] = n - 1
    for k in range(n - 2, -1, -1):
        mj[k] = k + 1
        while True:
            mjk = mj[k]
            mjmjk = mj[mjk]
            if mjk == n - 1 or (x[k] - x[mjk]) * (mjk - mjmjk) < (x[mjk] - x[mjmjk]) * (k - mjk):
                break
            mj[k] = mjmjk

    gcm = np.zeros(n + 1, dtype=np.int64)
    lcm = np.zeros(n + 1, dtype=np.int64)
    while True:
        # Collect both fits restricted to the current modal interval.
        gcm[0] = high
        i = 0
        while gcm[i] > low:
            gcm[i + 1] = mn[gcm[i]]
            i += 1
        ig = l_gcm = i
        ix = ig - 1

        lcm[0] = low
        i = 0
        while lcm[i] < high:
            lcm[i + 1] = mj[lcm[i]]
            i += 1
        ih = l_lcm = i
        iv = 1

        # Walk both hulls to find the largest deviation between them.
        d = 0.0
        if l_gcm != 1 or l_lcm != 1:
            while True:
                gcmix = gcm[ix]
                lcmiv = lcm[iv]
                if gcmix > lcmiv:
                    gcmi1 = gcm[ix + 1]
                    dx = (lcmiv - gcmi1 + 1) - (x[lcmiv] - x[gcmi1]) * (gcmix - gcmi1) / (
                        x[gcmix] - x[gcmi1]
                    )
                    iv += 1
                    if dx >= d:
                        d = dx
                        ig = ix + 1
                        ih = iv - 1
                else:
                    lcmiv1 = lcm[iv - 1]
                    dx = (x[gcmix] - x[lcmiv1]) * (lcmiv - lcmiv1) / (
                        x[lcmiv] - x[lcmiv1]
                    ) - (gcmix - lcmiv1 - 1)
                    ix -= 1
                    if dx >= d:
                        d = dx
                        ig = ix + 1
                        ih = iv
                if ix < 0:
                    ix = 0
                if iv > l_lcm:
                    iv = l_lcm
                if gcm[ix] == lcm[iv]:
                    break
        if d < dip_value:
            break

        # Largest deviation of the empirical CDF from the convex minorant...
        dip_l = 0.0
        for j in range(ig, l_gcm):
            max_t = 1.0
            jb = gcm[j + 1]
            je = gcm[j]
            if je - jb > 1 and x[je] != x[jb]:
                c = (je - jb) / (x[je] - x[jb])
                for jj in range(jb, je + 1):
                    t = (jj - jb + 1) - (x[jj] - x[jb]) * c
                    if max_t < t:
                        max_t = t
            if dip_l < max_t:
                dip_l = max_t

        # ... and from the concave majorant.
        dip_u = 0.0
        for j in range(ih, l_lcm):
            max_t = 1.0
            jb = lcm[j]
            je = lcm[j + 1]
            if je - jb > 1 and x[je] != x[jb]:
                c = (je - jb) / (x[je] - x[jb])
                for jj in range(jb, je + 1):
                    t = (x[jj] - x[jb]) * c - (jj - jb - 1)
                    if max_t < t:
                        max_t = t
            if dip_u < max_t:
                dip_u = max_t

        dip_new = max(dip_l, dip_u)
        if dip_value < dip_new:
            dip_value = dip_new
        if low == gcm[ig] and high == lcm[ih]:
            break
        low = gcm[ig]
        high = lcm[ih]

    return float(dip_value)


def expand_histogram(p: RatingDistribution) -> np.ndarray:
    """Expand a counted histogram into a sorted sample on [0, 1].

    Vote j of m inside a bin sits at offset (j - 0.5)/m of the bin width:
    deterministic tie-breaking, so repeated runs agree bit for bit.
    """
    if p.n_raters is None:
        raise MissingRaterCount("histogram-to-sample expansion needs n_raters")
    counts = np.rint(p.as_array() * p.n_raters).astype(int)
    width = 1.0 / NUM_BINS
    points: list[float] = []
    for b, m in enumerate(counts):
        if m <= 0:
            continue
        left = b * width
        points.extend(left + (j - 0.5) / m * width for j in range(1, m + 1))
    return np.asarray(points, dtype=float)


@functools.lru_cache(maxsize=64)
def null_dip_samples(n: int, boot: int, seed: int) -> np.ndarray:
    """Dip values of `boot` seeded uniform(0,1) samples of size n.

    The null depends only on (n, boot, seed), so the table is memoized and
    shared by every histogram with the same rater count. Iteration i uses
    its own counter-derived stream, making the table independent of any
    evaluation order a caller might choose.
    """
    dips = np.empty(boot, dtype=float)
    for i in range(boot):
        rng = np.random.default_rng([seed, i])
        dips[i] = dip_statistic(np.sort(rng.random(n)))
    dips.setflags(write=False)
    return dips


def dip_test(
    p: RatingDistribution,
    boot: int = DEFAULT_BOOT,
    seed: int = 0,
    significance: float = DEFAULT_SIGNIFICANCE,
) -> ModalityResult:
    """Bootstrap dip test of unimodality for one rating histogram.

    The p-value is the fraction of null dips at least as large as the
    observed one; the histogram is called unimodal when p >= significance.
    """
    if boot < 1:
        raise ValueError("boot must be positive")
    if p.n_raters is None:
        raise MissingRaterCount("dip test needs n_raters on the distribution")
    if p.n_raters < 2:
        raise TooFewPoints(f"dip test needs at least 2 raters, got {p.n_raters}")
    sample = expand_histogram(p)
    observed = dip_statistic(sample)
    null = null_dip_samples(len(sample), boot, seed)
    p_value = float(np.count_nonzero(null >= observed)) / boot
    return ModalityResult(
        dip=observed,
        p_value=p_value,
        n=len(sample),
        mode_count=count_modes(p),
        unimodal=p_value >= significance,
    )


def count_modes(p: RatingDistribution) -> int:
    """Count strict local maxima of the bin-mass sequence.

    Adjacent equal bins merge into a plateau first, and a plateau counts
    as a single candidate maximum, so the uniform histogram has one mode.
    """
    probs = p.as_array()
    plateaus: list[float] = []
    for v in probs:
        if not plateaus or abs(v - plateaus[-1]) > 1e-12:
            plateaus.append(float(v))
    modes = 0
    k = len(plateaus)
    for i, v in enumerate(plateaus):
        left_ok = i == 0 or plateaus[i - 1] < v
        right_ok = i == k - 1 or plateaus[i + 1] < v
        if left_ok and right_ok:
            modes += 1
    return modes
