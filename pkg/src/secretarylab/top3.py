"""Classical threshold rule scored against a relaxed, top-3 objective.

Candidates arrive exactly once in uniformly random order.  The rule rejects
the first k arrivals and accepts the next arrival that beats everything seen
so far; the hire counts as a success when its absolute rank is 1, 2 or 3.

prob[k] satisfies the backward recurrence

    prob[k] = (1 - q(k)) / (k + 1) + k / (k + 1) * prob[k + 1],  prob[n] = 0,

where q(k) = C(n-3, k+1) / C(n, k+1) is the chance that none of the first
k+1 arrivals ranks in the top three.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInstance, IndexOutOfRange
from .reappearance import OptimalPolicy

__all__ = ["Top3Table", "binom_survival_ratio", "top3_table", "optimal_policy_top3"]


@dataclass(frozen=True)
class Top3Table:
    """Success probability of the threshold-k rule, prob[k] for k = 0..n."""

    n: int
    prob: np.ndarray


def _check_n(n: int):
    if n < 4:
        raise DegenerateInstance(f"top-3 objective needs n >= 4, got n={n}")


def binom_survival_ratio(n: int, k: int) -> float:
    """Probability that none of the first k+1 arrivals is a top-3 candidate.

    Evaluates C(n-3, k+1) / C(n, k+1) in the cancelled product form
    ((n-k-1)/n) * ((n-k-2)/(n-1)) * ((n-k-3)/(n-2)); every factor is at
    most 1, so the computation cannot overflow for n up to 1e7.  The result
    is exactly 0 whenever k+1 > n-3.
    """
    _check_n(n)
    if not 0 <= k <= n - 1:
        raise IndexOutOfRange(f"k={k} outside 0..{n - 1}")
    r = ((n - k - 1) / n) * ((n - k - 2) / (n - 1)) * ((n - k - 3) / (n - 2))
    return r + 0.0  # normalise -0.0 from the zero factor at the tail


def top3_table(n: int) -> Top3Table:
    """Fill prob[0..n] for the top-3 objective in O(n) time.

    The backward recurrence telescopes to prob[k] = k * sum_{j>=k} g[j] / j
    with g[j] = (1 - q(j)) / (j + 1), which a reversed cumulative sum
    evaluates in vectorised form (agrees with the sequential recurrence to
    ~1e-14 and reproduces its argmax).
    """
    _check_n(n)
    karr = np.arange(n, dtype=np.float64)
    r = ((n - karr - 1.0) / n) * ((n - karr - 2.0) / (n - 1)) * ((n - karr - 3.0) / (n - 2))
    r += 0.0
    g = (1.0 - r) / (karr + 1.0)

    terms = np.zeros(n)
    terms[1:] = g[1:] / karr[1:]
    tail = np.cumsum(terms[::-1])[::-1]

    prob = np.empty(n + 1)
    prob[0] = g[0]
    prob[1:n] = np.arange(1, n) * tail[1:]
    prob[n] = 0.0

    if not ((prob >= 0.0).all() and (prob <= 1.0).all()):
        raise ArithmeticError(f"prob left [0, 1] for n={n}")
    prob.flags.writeable = False
    return Top3Table(n=n, prob=prob)


def optimal_policy_top3(n: int) -> OptimalPolicy:
    """Best threshold in 0..n-1 for the top-3 objective; smallest k on ties."""
    table = top3_table(n)
    k_n = int(np.argmax(table.prob[:n]))
    return OptimalPolicy(k_n=k_n, value=float(table.prob[k_n]))
