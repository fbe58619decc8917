"""Integer partitions and bipartitions as sorted tuples, with the multiset
operations the pairing formulas consume: containment, union, scaling by a
common divisor, and the binomial-coefficient product

    C(mu, mu') = prod_i binom(a_i, b_i)

over the distinct part values n_i, where a_i (resp. b_i) is the multiplicity
of n_i in mu (resp. mu').  C(mu, mu') counts the sub-multisets of mu equal
to mu' as a multiset.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

__all__ = [
    "Partition",
    "Bipartition",
    "partition",
    "contains",
    "multiset_union",
    "multiset_difference",
    "scale_div",
    "scale_mul",
    "c_coeff",
    "c_coeff_strict",
    "partitions_of",
    "sub_partitions",
    "bipartitions_of",
]

# a partition is a weakly decreasing tuple of positive ints; () is empty
Partition = tuple[int, ...]
Bipartition = tuple[Partition, Partition]


def partition(parts: Iterable[int]) -> Partition:
    """Sort into canonical weakly-decreasing form; reject nonpositive parts."""
    t = tuple(sorted(parts, reverse=True))
    if t and t[-1] < 1:
        raise ValueError(f"partition parts must be positive: {t}")
    return t


def contains(mu: Partition, mup: Partition) -> bool:
    """Multiset containment mu' <= mu.

    >>> contains((2, 1, 1), (1,))
    True
    >>> contains((2, 1), (1, 1))
    False
    """
    cm = Counter(mu)
    return all(cm[v] >= k for v, k in Counter(mup).items())


def multiset_union(*mus: Partition) -> Partition:
    return partition([p for mu in mus for p in mu])


def multiset_difference(mu: Partition, mup: Partition) -> Partition:
    """mu minus mu' as multisets; requires containment."""
    if not contains(mu, mup):
        raise ValueError(f"{mup} not contained in {mu}")
    c = Counter(mu)
    c.subtract(Counter(mup))
    return partition(c.elements())


def scale_div(mu: Partition, h: int) -> Partition:
    """(mu_1/h, ..., mu_k/h); requires h | mu_i for all i."""
    if any(p % h for p in mu):
        raise ValueError(f"{h} does not divide every part of {mu}")
    return partition(p // h for p in mu)


def scale_mul(mu: Partition, h: int) -> Partition:
    return partition(p * h for p in mu)


def c_coeff(mu: Partition, mup: Partition) -> int:
    """C(mu, mu'); 0 when mu' is not contained in mu.

    This is the branch used inside summations ("0 otherwise").

    >>> c_coeff((2, 1, 1), (1,))
    2
    >>> c_coeff((2, 2, 1, 1), (2, 1))
    4
    """
    cm = Counter(mu)
    out = 1
    for v, b in Counter(mup).items():
        a = cm[v]
        if b > a:
            return 0
        out *= comb(a, b)
    return out


def c_coeff_strict(mu: Partition, mup: Partition) -> int:
    """C(mu, mu'), raising when containment fails."""
    if not contains(mu, mup):
        raise ValueError(f"{mup} not contained in {mu}")
    return c_coeff(mu, mup)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n, parts bounded by max_part."""
    if n < 0:
        return
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def sub_partitions(mu: Partition) -> Iterator[Partition]:
    """Distinct sub-multisets of mu, each once (as partitions)."""
    seen: set[Partition] = set()
    for r in range(len(mu) + 1):
        for combo in combinations(mu, r):
            p = partition(combo)
            if p not in seen:
                seen.add(p)
                yield p


def bipartitions_of(n: int) -> Iterator[Bipartition]:
    """All pairs (mu, lam) with |mu| + |lam| = n."""
    for k in range(n + 1):
        for mu in partitions_of(k):
            for lam in partitions_of(n - k):
                yield (mu, lam)
