"""Eigenvalues as exponents in the multiplicative group of the algebraic
closure of F_q, and their Frobenius orbits.

An element of F_{q^k}^x is a power g_k^e of a fixed compatible system of
generators, so it is stored as the pair (level k, exponent e mod q^k - 1).
Compatibility means F_{q^k}^x embeds into F_{q^{k'}}^x (for k | k') by

    e  |->  e * (q^{k'} - 1) / (q^k - 1).

Only the multiplicative structure is ever needed: no polynomial arithmetic,
no discrete logs.  Everything is an exact integer computation.

The Frobenius orbit [a] of an eigenvalue a is its orbit under x -> x^q
(standard twist) or x -> x^{-q} (unitary twist).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

__all__ = [
    "Eigenvalue",
    "FrobeniusOrbit",
    "STANDARD",
    "UNITARY",
    "normalize",
    "embed",
    "eig_inverse",
    "eig_pow",
    "eig_mul",
    "one",
    "minus_one",
    "frobenius_orbit",
    "orbit_key",
    "generator_of_level",
    "check_prime_power",
]

STANDARD = "standard"
UNITARY = "unitary"


class Eigenvalue(NamedTuple):
    """A normalized element of the closure's multiplicative group."""

    level: int
    exponent: int


def check_prime_power(q: int) -> None:
    """Reject q that is not an odd prime power."""
    if q < 3:
        raise ValueError(f"q must be an odd prime power >= 3, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n = q
    while n % p == 0:
        n //= p
    if n != 1:
        raise ValueError(f"q = {q} is not a prime power")
    if p == 2:
        raise ValueError(f"q = {q} has characteristic 2; odd characteristic required")


def _divisors(k: int) -> list[int]:
    out = [d for d in range(1, k + 1) if k % d == 0]
    return out


def normalize(q: int, level: int, exponent: int) -> Eigenvalue:
    """Canonical minimal-level representative of g_level^exponent.

    >>> normalize(3, 2, 4)
    Eigenvalue(level=1, exponent=1)
    >>> normalize(3, 5, 0)
    Eigenvalue(level=1, exponent=0)
    >>> normalize(3, 2, 1)
    Eigenvalue(level=2, exponent=1)
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    modulus = q**level - 1
    e = exponent % modulus
    if e == 0:
        return Eigenvalue(1, 0)
    for d in _divisors(level):
        ratio = modulus // (q**d - 1)
        if e % ratio == 0:
            return Eigenvalue(d, e // ratio)
    raise AssertionError("unreachable: d = level always succeeds")


def embed(q: int, a: Eigenvalue, level: int) -> int:
    """Exponent of a inside F_{q^level}^x.  Requires a.level | level."""
    if level % a.level != 0:
        raise ValueError(f"cannot embed level-{a.level} element into level {level}")
    return a.exponent * ((q**level - 1) // (q**a.level - 1))


def eig_inverse(q: int, a: Eigenvalue) -> Eigenvalue:
    return normalize(q, a.level, -a.exponent)


def eig_pow(q: int, a: Eigenvalue, m: int) -> Eigenvalue:
    return normalize(q, a.level, a.exponent * m)


def eig_mul(q: int, a: Eigenvalue, b: Eigenvalue) -> Eigenvalue:
    """Product ab, computed at the compositum level lcm(a.level, b.level)."""
    from math import lcm

    k = lcm(a.level, b.level)
    return normalize(q, k, embed(q, a, k) + embed(q, b, k))


def one() -> Eigenvalue:
    return Eigenvalue(1, 0)


def minus_one(q: int) -> Eigenvalue:
    """The unique square root of 1 other than 1 (q is odd)."""
    return Eigenvalue(1, (q - 1) // 2)


@dataclass(frozen=True)
class FrobeniusOrbit:
    """The orbit [a] of an eigenvalue under x -> x^q or x -> x^{-q}."""

    twist: str
    members: frozenset[Eigenvalue]
    size: int
    self_inverse: bool
    contains_one: bool
    contains_minus_one: bool

    def key(self) -> Eigenvalue:
        return min(self.members)


@lru_cache(maxsize=None)
def frobenius_orbit(q: int, twist: str, a: Eigenvalue) -> FrobeniusOrbit:
    """Compute [a] = {a^{q^k}} (standard) or {a^{(-q)^k}} (unitary).

    >>> frobenius_orbit(3, "standard", Eigenvalue(2, 1)).size
    2
    >>> sorted(frobenius_orbit(3, "unitary", Eigenvalue(2, 1)).members)
    [Eigenvalue(level=2, exponent=1), Eigenvalue(level=2, exponent=5)]
    """
    if twist not in (STANDARD, UNITARY):
        raise ValueError(f"unknown twist {twist!r}")
    a = normalize(q, a.level, a.exponent)
    step = -q if twist == UNITARY else q
    modulus = q**a.level - 1
    members: list[Eigenvalue] = []
    e = a.exponent
    seen: set[int] = set()
    while e not in seen:
        seen.add(e)
        members.append(normalize(q, a.level, e))
        e = (e * step) % modulus
    mset = frozenset(members)
    inv = eig_inverse(q, a)
    return FrobeniusOrbit(
        twist=twist,
        members=mset,
        size=len(mset),
        self_inverse=inv in mset,
        contains_one=one() in mset,
        contains_minus_one=minus_one(q) in mset,
    )


def orbit_key(orbit: FrobeniusOrbit) -> Eigenvalue:
    """Deterministic label: the lexicographically least member."""
    return orbit.key()


def generator_of_level(q: int, level: int, *, seed: int = 1) -> Eigenvalue:
    """Some element whose minimal level is exactly `level`.

    Scans exponents starting at `seed`; distinct seeds give a supply of
    distinct fresh eigenvalues for synthetic regular characters.
    """
    modulus = q**level - 1
    e = seed
    for _ in range(modulus):
        cand = normalize(q, level, e)
        if cand.level == level:
            return cand
        e = (e + 1) % modulus
    raise ValueError(f"no element of exact level {level} for q={q}")


def all_of_level(q: int, level: int) -> Iterable[Eigenvalue]:
    """All elements whose minimal level divides `level` (i.e. F_{q^level}^x)."""
    for e in range(q**level - 1):
        yield normalize(q, level, e)
