"""Exact success probabilities for hiring when candidates may return once.

Each of n distinct candidates is interviewed at least once; after the first
interview a candidate returns for exactly one more interview with
probability p.  The threshold strategy observes the first k distinct
candidates without hiring, then accepts the first arrival that is either
the current leader returning, a fresh leader (accepted with probability
1-p), or a returning leader.

For a given (n, p) this module fills four tables over the threshold k in
linear time:

    phi[k]      P(hire the best | k distinct seen, leader seen once)
    psi[k]      P(hire the best | k distinct seen, leader seen twice)
    upsilon[k]  P(leader seen once when the k-th distinct candidate arrives)
    f[k]        overall success probability of threshold k,
                f = upsilon * phi + (1 - upsilon) * psi

phi and psi satisfy backward recurrences from phi[n] = p, psi[n] = 0;
upsilon satisfies a forward recurrence from upsilon[1] = 1.  At p = 0 the
model collapses to the classical best-choice problem, at p = 1 to the
guaranteed-return variant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, InvalidSpec

__all__ = [
    "ProblemSpec",
    "DpTables",
    "OptimalPolicy",
    "build_tables",
    "success_probability",
    "optimal_policy",
]


@dataclass(frozen=True)
class ProblemSpec:
    """An instance of the re-arrival model: n candidates, return probability p."""

    n: int
    p: float

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec(f"need n >= 1, got n={self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidSpec(f"need 0 <= p <= 1, got p={self.p}")


@dataclass(frozen=True)
class OptimalPolicy:
    """A threshold and the success probability it achieves."""

    k_n: int
    value: float


@dataclass(frozen=True)
class DpTables:
    """Probability tables indexed by threshold k.

    phi and psi cover k = 0..n (index 0 is reached by the backward pass and
    kept for diagnostics).  upsilon and f are defined for k = 1..n; index 0
    holds NaN.  All arrays are read-only.
    """

    n: int
    p: float
    phi: np.ndarray
    psi: np.ndarray
    upsilon: np.ndarray
    f: np.ndarray


def build_tables(spec: ProblemSpec) -> DpTables:
    """Fill the phi/psi/upsilon/f tables for ``spec`` in O(n) time.

    Raises
    ------
    InvalidSpec
        If n < 2 (both recurrence directions must be nonempty).
    """
    n, p = spec.n, float(spec.p)
    if n < 2:
        raise InvalidSpec(f"need n >= 2 to build tables, got n={n}")

    phi = [0.0] * (n + 1)
    psi = [0.0] * (n + 1)
    phi[n] = p
    psi[n] = 0.0
    for k in range(n - 1, -1, -1):
        a = 1.0 / ((1.0 + p) * (n - k) + 1.0)
        phi[k] = (p * a * k + (1.0 - p) * (1.0 - p * a)) / n \
            + (p + k) * (1.0 - p * a) * phi[k + 1] / (k + 1)
        psi[k] = (1.0 - p) / n + (p * phi[k + 1] + k * psi[k + 1]) / (k + 1)

    upsilon = [0.0] * (n + 1)
    upsilon[1] = 1.0
    for k in range(2, n + 1):
        upsilon[k] = 1.0 / k \
            + (1.0 - p / ((1.0 + p) * (n - k + 1) + 1.0)) * (1.0 - 1.0 / k) * upsilon[k - 1]

    phi_a = np.asarray(phi)
    psi_a = np.asarray(psi)
    ups_a = np.asarray(upsilon)
    f_a = ups_a * phi_a + (1.0 - ups_a) * psi_a
    ups_a[0] = np.nan
    f_a[0] = np.nan

    for name, arr in (("phi", phi_a), ("psi", psi_a),
                      ("upsilon", ups_a[1:]), ("f", f_a[1:])):
        if not ((arr >= 0.0).all() and (arr <= 1.0).all()):
            raise ArithmeticError(f"{name} left [0, 1] for n={n}, p={p}")

    for arr in (phi_a, psi_a, ups_a, f_a):
        arr.flags.writeable = False
    return DpTables(n=n, p=p, phi=phi_a, psi=psi_a, upsilon=ups_a, f=f_a)


def success_probability(tables: DpTables, k: int) -> float:
    """Success probability of threshold ``k``: a pure lookup of f[k]."""
    if not 1 <= k <= tables.n:
        raise IndexOutOfRange(f"threshold k={k} outside 1..{tables.n}")
    return float(tables.f[k])


def optimal_policy(spec: ProblemSpec) -> OptimalPolicy:
    """Best threshold in 1..n and its success probability.

    Ties are broken toward the smallest threshold (stop earlier).
    """
    tables = build_tables(spec)
    k_n = int(np.argmax(tables.f[1:])) + 1
    return OptimalPolicy(k_n=k_n, value=float(tables.f[k_n]))
