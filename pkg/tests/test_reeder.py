"""The two summation engines against a literal double-Weyl-sum oracle.

The oracle evaluates the pairing as the shape-sum with the numerator
counted by running over BOTH Weyl centralizers explicitly, so it shares no
code with the closed M-count formulas it checks.
"""

from collections import Counter
from fractions import Fraction

import pytest

from conftest import element_pool, pair_sweep

from ggp.partitions import c_coeff
from ggp.reeder_engine import (
    DualTorusPair,
    _iota_sign_exp,
    _w_g_iota,
    dl_inner_product_same_group,
    iota_shapes,
    pair_family,
    reeder_closed_form,
    reeder_direct,
)
from ggp.tori import TorusDatum, make_element, restrict, weyl_action
from ggp.weyl import (
    FClassLabel,
    GroupKind,
    enumerate_f_centralizer,
    f_centralizer_order,
    f_classes,
)


def brute_pairing(fam, big, small):
    T, t = big.torus, big.element
    S, s = small.torus, small.element
    WT = enumerate_f_centralizer(T.label)
    WS = enumerate_f_centralizer(S.label)
    w_h_s = f_centralizer_order(S.label)
    total = Fraction(0)
    for iota in iota_shapes(fam, big, small):
        mu_p, lam_p = iota.shape
        weight = c_coeff(S.label.mu, mu_p)
        if fam == "SO":
            weight *= c_coeff(S.label.lam, lam_p)
        sign = -1 if _iota_sign_exp(fam, big, small, iota) else 1
        denom = _w_g_iota(fam, big, iota) * w_h_s
        ct = Counter(restrict(T, weyl_action(T, w, t), mu_p, lam_p) for w in WT)
        cs = Counter(restrict(S, weyl_action(S, y, s), mu_p, lam_p) for y in WS)
        num = sum(ct[k] * cs.get(k, 0) for k in ct)
        total += Fraction(weight * sign * num, denom)
    assert total.denominator == 1
    return int(total)


PAIRS = [
    ("GL", GroupKind("GL", 2, 3), GroupKind("GL", 1, 3), 6),
    ("GL", GroupKind("GL", 3, 3), GroupKind("GL", 2, 3), 4),
    ("U", GroupKind("U", 2, 3), GroupKind("U", 1, 3), 6),
    ("U", GroupKind("U", 3, 3), GroupKind("U", 2, 3), 4),
    ("SO", GroupKind("SOodd", 2, 3), GroupKind("SOeven+", 2, 3), 5),
    ("SO", GroupKind("SOodd", 2, 3), GroupKind("SOeven-", 2, 3), 5),
    ("SO", GroupKind("SOodd", 3, 3), GroupKind("SOeven+", 3, 3), 3),
    ("SO", GroupKind("SOodd", 3, 3), GroupKind("SOeven-", 3, 3), 3),
]


@pytest.mark.parametrize("fam,gk,hk,lim", PAIRS, ids=lambda v: str(v))
def test_routes_match_brute_force(fam, gk, hk, lim):
    checks = nonzero = 0
    for big, small in pair_sweep(fam, gk, hk, lim):
        d = reeder_direct(fam, big, small).value
        c = reeder_closed_form(fam, big, small).value
        b = brute_pairing(fam, big, small)
        assert d == c == b, (big.torus.label, small.torus.label, d, c, b)
        checks += 1
        nonzero += d != 0
    assert checks > 0 and nonzero > 0


def test_pair_family_validation():
    q = 3
    assert pair_family(GroupKind("GL", 3, q), GroupKind("GL", 2, q)) == "GL"
    assert pair_family(GroupKind("SOodd", 2, q), GroupKind("SOeven-", 2, q)) == "SO"
    with pytest.raises(ValueError):
        pair_family(GroupKind("GL", 3, q), GroupKind("GL", 1, q))
    with pytest.raises(ValueError):
        pair_family(GroupKind("GL", 2, q), GroupKind("U", 1, q))
    with pytest.raises(ValueError):
        pair_family(GroupKind("SOodd", 3, q), GroupKind("SOeven+", 2, q))
    with pytest.raises(ValueError):
        pair_family(GroupKind("GL", 2, 3), GroupKind("GL", 1, 5))


def test_so_hypothesis_names_the_orbit():
    q = 3
    T = TorusDatum(FClassLabel(GroupKind("SOodd", 2, q), (2,), ()))
    S = TorusDatum(FClassLabel(GroupKind("SOeven+", 2, q), (2,), (), "+"))
    from ggp.eigenvalue_orbits import minus_one, normalize

    big = DualTorusPair(T, make_element(T, [minus_one(q)]))
    small = DualTorusPair(S, make_element(S, [normalize(q, 2, 1)]))
    with pytest.raises(ValueError, match=r"-1"):
        reeder_direct("SO", big, small)
    with pytest.raises(ValueError, match=r"-1"):
        reeder_closed_form("SO", big, small)


def test_same_group_inner_product_is_transporter_count():
    # <R_{T,t}, R_{T',t'}> vanishes across distinct torus classes and counts
    # Weyl transporters on the same class
    q = 3
    G = GroupKind("GL", 2, q)
    labels = f_classes(G)
    for la in labels:
        T = TorusDatum(la)
        for lb in labels:
            S = TorusDatum(lb)
            for t in element_pool(T, 3):
                for s in element_pool(S, 3):
                    got = dl_inner_product_same_group(
                        G, DualTorusPair(T, t), DualTorusPair(S, s)
                    )
                    if la != lb:
                        assert got == 0
                    else:
                        brute = sum(
                            1
                            for w in enumerate_f_centralizer(la)
                            if weyl_action(T, w, t) == s
                        )
                        assert got == brute
