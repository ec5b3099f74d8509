"""Exact brute-force probabilities on tiny instances.

These enumerations are the ground truth the fast solvers and the simulator
are checked against.  Everything is computed in exact rational arithmetic,
so comparisons at 1e-12 are meaningful.

For the re-arrival model the enumeration walks every reappearance subset
(weighted p^s (1-p)^(n-s)), every rank assignment, and every arrangement of
the appearance tokens (uniform over the multiset, each candidate's earlier
token being its first appearance).  The fresh-leader coin is handled
analytically by branching into accept (weight 1-p) and continue (weight p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from .errors import DegenerateInstance, IndexOutOfRange, InvalidSpec, TooLarge

__all__ = ["ExactResult", "exact_top3", "exact_reappearance"]

_MAX_TOP3_N = 8
_MAX_REAPPEAR_N = 4


@dataclass(frozen=True)
class ExactResult:
    probability: Fraction
    instance: tuple


@lru_cache(maxsize=None)
def exact_top3(n: int, k: int) -> ExactResult:
    """Top-3 success probability of threshold k, by full permutation sweep."""
    if n > _MAX_TOP3_N:
        raise TooLarge(f"exact top-3 enumeration is limited to n <= {_MAX_TOP3_N}")
    if n < 4:
        raise DegenerateInstance(f"top-3 objective needs n >= 4, got n={n}")
    if not 0 <= k <= n - 1:
        raise IndexOutOfRange(f"k={k} outside 0..{n - 1}")

    hits = 0
    for perm in permutations(range(1, n + 1)):
        best = n + 1
        for t, r in enumerate(perm):
            if t >= k and r < best:
                hits += r <= 3
                break
            best = min(best, r)
    return ExactResult(
        probability=Fraction(hits, factorial(n)), instance=(n, None, k, "top3")
    )


@lru_cache(maxsize=None)
def exact_reappearance(n: int, p, k: int) -> ExactResult:
    """Rank-1 success probability of the re-arrival policy at threshold k.

    ``p`` may be a Fraction, int or float; floats are taken at their exact
    binary value.  Limited to n <= 4 (the token-arrangement count explodes).
    """
    if n > _MAX_REAPPEAR_N:
        raise TooLarge(f"exact re-arrival enumeration is limited to n <= {_MAX_REAPPEAR_N}")
    if n < 2:
        raise InvalidSpec(f"need n >= 2, got n={n}")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise InvalidSpec(f"need 0 <= p <= 1, got p={p}")
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"k={k} outside 1..{n}")

    total = Fraction(0)
    weight_seen = Fraction(0)
    rank_weight = Fraction(1, factorial(n))
    for s in range(n + 1):
        for subset in combinations(range(n), s):
            w_subset = p ** s * (1 - p) ** (n - s)
            weight_seen += w_subset
            if w_subset == 0:
                continue
            tokens = tuple(sorted(tuple(range(n)) + subset))
            arrangements = sorted(set(permutations(tokens)))
            assert len(arrangements) == factorial(n + s) // 2 ** s
            w_arr = Fraction(1, len(arrangements))
            for arrangement in arrangements:
                appearance = _appearance_numbers(arrangement)
                for ranks in permutations(range(1, n + 1)):
                    succ = _walk(arrangement, appearance, ranks, k, p, 0, None, 0)
                    total += w_subset * w_arr * rank_weight * succ
    assert weight_seen == 1
    return ExactResult(probability=total, instance=(n, p, k, "best"))


def _appearance_numbers(arrangement):
    seen: dict[int, int] = {}
    out = []
    for c in arrangement:
        seen[c] = seen.get(c, 0) + 1
        out.append(seen[c])
    return tuple(out)


def _walk(arrangement, appearance, ranks, k, p, t, lead, distinct):
    """Success probability continuing from event t; branches on the coin."""
    if t == len(arrangement):
        return Fraction(0)
    c = arrangement[t]
    second = appearance[t] == 2
    rank = ranks[c]
    lead_rank = ranks[lead] if lead is not None else None
    better = lead is None or rank < lead_rank

    if distinct < k:
        if better:
            lead = c
        nxt = distinct + (0 if second else 1)
        return _walk(arrangement, appearance, ranks, k, p, t + 1, lead, nxt)

    if second and c == lead:
        return Fraction(int(rank == 1))
    if better:
        if second:
            return Fraction(int(rank == 1))
        accept = Fraction(int(rank == 1))
        keep = _walk(arrangement, appearance, ranks, k, p, t + 1, c, distinct)
        return (1 - p) * accept + p * keep
    return _walk(arrangement, appearance, ranks, k, p, t + 1, lead, distinct)
