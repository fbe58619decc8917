"""Weyl-group classes and centralizers against explicit enumeration.

The uniform model represents every F-conjugacy class by a (signed)
permutation b inside an ambient group, with F-centralizer = the plain
centralizer of b.  The oracles below re-derive the class decomposition and
the centralizer orders by raw enumeration.
"""

from fractions import Fraction

import pytest

from ggp.weyl import (
    FClassLabel,
    GroupKind,
    ambient_elements,
    class_rep,
    cycle_type,
    enumerate_f_centralizer,
    f_centralizer_order,
    f_classes,
    sp_inverse,
    sp_mul,
    weyl_order,
)

KINDS_SMALL = (
    [GroupKind("GL", n, 3) for n in (1, 2, 3, 4)]
    + [GroupKind("U", n, 3) for n in (1, 2, 3, 4)]
    + [GroupKind("Sp", n, 3) for n in (1, 2, 3)]
    + [GroupKind("SOodd", n, 3) for n in (1, 2, 3)]
    + [GroupKind("SOeven+", n, 3) for n in (2, 3)]
    + [GroupKind("SOeven-", n, 3) for n in (2, 3)]
)


def test_class_rep_cycle_type_roundtrip():
    for kind in KINDS_SMALL:
        for label in f_classes(kind):
            mu, lam = cycle_type(class_rep(label))
            if kind.family in ("GL", "U"):
                # plain-permutation model: all cycles positive
                assert (mu, lam) == (label.mu, ())
            else:
                assert (mu, lam) == (label.mu, label.lam)


def test_centralizer_formula_vs_enumeration():
    for kind in KINDS_SMALL:
        for label in f_classes(kind):
            assert f_centralizer_order(label) == len(enumerate_f_centralizer(label))


def test_centralizer_is_a_group():
    for kind in KINDS_SMALL[:6]:
        for label in f_classes(kind):
            cent = set(enumerate_f_centralizer(label))
            some = list(cent)[:5]
            for x in some:
                assert sp_inverse(x) in cent
                for y in some:
                    assert sp_mul(x, y) in cent


def test_classes_partition_the_group():
    # the class sizes |W| / |centralizer| sum to the cardinality of the
    # ambient class set (the group for most kinds, the nonsplit coset for
    # SOeven-)
    for kind in KINDS_SMALL:
        total = sum(
            Fraction(weyl_order(kind), f_centralizer_order(label))
            for label in f_classes(kind)
        )
        assert total == weyl_order(kind), kind


def test_class_orbits_biject_with_labels():
    # brute force: conjugating every representative by the whole ambient
    # group yields disjoint orbits of the predicted sizes
    for kind in KINDS_SMALL:
        if kind.n > 3:
            continue
        ambient = ambient_elements(kind)
        seen = set()
        for label in f_classes(kind):
            b = class_rep(label)
            orbit = {sp_mul(sp_inverse(x), sp_mul(b, x)) for x in ambient}
            expected = weyl_order(kind) // f_centralizer_order(label)
            assert len(orbit) == expected, label
            assert not (orbit & seen), f"orbits overlap at {label}"
            seen |= orbit


def test_enumeration_bound_is_enforced():
    with pytest.raises(ValueError):
        enumerate_f_centralizer(FClassLabel(GroupKind("Sp", 7, 3), (7,), ()))
