"""Eigenvalue arithmetic against first-principles modular arithmetic."""

import pytest

from ggp.eigenvalue_orbits import (
    Eigenvalue,
    all_of_level,
    check_prime_power,
    eig_inverse,
    eig_mul,
    eig_pow,
    embed,
    frobenius_orbit,
    generator_of_level,
    minus_one,
    normalize,
    one,
)


def test_check_prime_power():
    for q in (3, 5, 7, 9, 27, 121):
        check_prime_power(q)
    for q in (1, 2, 4, 6, 8, 12, 15):
        with pytest.raises(ValueError):
            check_prime_power(q)


def test_normalize_minimality():
    # the normalized level is the least d with e divisible by the embedding
    # ratio, so re-embedding recovers the original exponent
    q = 3
    for level in (1, 2, 3, 4):
        for e in range(q**level - 1):
            a = normalize(q, level, e)
            assert embed(q, a, level) == e
            if a.level > 1:
                # genuinely of that level: not in any proper subfield
                for d in range(1, a.level):
                    if a.level % d == 0:
                        ratio = (q**a.level - 1) // (q**d - 1)
                        assert a.exponent % ratio != 0


def test_group_laws():
    q = 3
    elems = list(all_of_level(q, 2))
    for a in elems:
        assert eig_mul(q, a, eig_inverse(q, a)) == one()
        assert eig_pow(q, a, 0) == one()
        for b in elems:
            assert eig_mul(q, a, b) == eig_mul(q, b, a)
    assert eig_mul(q, minus_one(q), minus_one(q)) == one()


def test_frobenius_orbit_sizes():
    # standard orbit size = multiplicative order of q mod the element order;
    # brute-force the orbit by repeated powering
    q = 3
    for a in all_of_level(q, 4):
        for twist, step in (("standard", q), ("unitary", -q)):
            orb = frobenius_orbit(q, twist, a)
            members = set()
            x = a
            for _ in range(orb.size + 1):
                members.add(x)
                x = eig_pow(q, x, step)
            assert members == set(orb.members)
            assert orb.self_inverse == (eig_inverse(q, a) in orb.members)


def test_generator_of_level():
    q = 3
    for level in (1, 2, 3):
        for seed in (1, 2, 5):
            g = generator_of_level(q, level, seed=seed)
            assert g.level == level


def test_minus_one_is_an_involution():
    for q in (3, 5, 9):
        m = minus_one(q)
        assert m != one()
        assert eig_pow(q, m, 2) == one()
