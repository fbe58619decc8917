"""The orbit-factorized route against the verified closed-form engine, and
its independence of all synthetic choices."""

import pytest

from conftest import pair_sweep

from ggp.eigenvalue_orbits import normalize
from ggp.lusztig_decomposition import (
    build_primed_data,
    centralizer_decomposition,
    factorized_pairing,
)
from ggp.reeder_engine import DualTorusPair, reeder_closed_form
from ggp.tori import TorusDatum, make_element
from ggp.weyl import FClassLabel, GroupKind

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
def test_factorized_matches_closed_form(fam, gk, hk, lim):
    checks = 0
    for big, small in pair_sweep(fam, gk, hk, lim):
        c = reeder_closed_form(fam, big, small).value
        f = factorized_pairing(fam, big, small).value
        assert c == f, (big.torus.label, small.torus.label, c, f)
        checks += 1
    assert checks > 0


def _single_orbit_pair():
    """A unitary pair supported on one orbit with per-orbit corank 2, so a
    two-part padding is possible."""
    q = 3
    a = normalize(q, 2, 2)  # order-4 value, unitary orbit size 1
    T = TorusDatum(FClassLabel(GroupKind("U", 3, q), (1, 1, 1)))
    S = TorusDatum(FClassLabel(GroupKind("U", 2, q), (1, 1)))
    big = DualTorusPair(T, make_element(T, [a, a, a]))
    small = DualTorusPair(S, make_element(S, [a, a]))
    return big, small


def test_padding_independence():
    big, small = _single_orbit_pair()
    values = {
        factorized_pairing("U", big, small, padding=p).value
        for p in ((2,), (1, 1))
    }
    assert len(values) == 1
    assert values == {reeder_closed_form("U", big, small).value}


def test_theta_seed_independence():
    for fam, gk, hk, lim in PAIRS[:4]:
        for big, small in pair_sweep(fam, gk, hk, 2):
            vals = {
                factorized_pairing(fam, big, small, theta_seed=s).value
                for s in (0, 1, 5)
            }
            assert len(vals) == 1


def test_per_orbit_factors_are_padding_invariant():
    big, small = _single_orbit_pair()
    per_padding = {}
    for p in ((2,), (1, 1)):
        data = build_primed_data("U", big, small, padding=p)
        assert len(data) == 1
        pd = data[0]
        inner = reeder_closed_form(
            "GL" if pd.Gp.family == "GL" else "U", pd.Tp, pd.Sp
        ).value
        per_padding[p] = pd.eps_a * inner
    assert len(set(per_padding.values())) == 1


def test_centralizer_decomposition_covers_the_rank():
    for fam, gk, hk, lim in PAIRS:
        for big, small in pair_sweep(fam, gk, hk, 2):
            for side, kind in ((big, gk), (small, hk)):
                dec = centralizer_decomposition(fam, side)
                # each factor's nu counts scaled units; the scaled sizes
                # weighted by the ambient orbit size recover n
                assert sum(f.nu * _scale(fam, kind.q, f) for f in dec) == kind.n


def _scale(fam, q, factor):
    from ggp.tori import orbit_class_of

    if fam == "SO":
        oc = orbit_class_of(q, "standard", True, factor.orbit)
        return oc.h // 2 if oc.self_inverse else oc.h
    oc = orbit_class_of(q, "unitary" if fam == "U" else "standard", False, factor.orbit)
    return oc.h
