"""Torus decompositions, M-counts and restriction classes against raw
Weyl-group enumeration."""

from conftest import element_pool

from ggp.eigenvalue_orbits import eig_inverse, normalize, one
from ggp.partitions import sub_partitions
from ggp.tori import (
    TorusDatum,
    d_class_count_oracle,
    decompose_by_orbit,
    expand,
    identity_element,
    in_d_set,
    m_count,
    m_count_oracle,
    make_element,
    p_set,
    restrict,
    restriction_classes,
    stabilizer_order,
    sub_torus,
    torus_factor_orders,
    torus_factors,
    weyl_action,
)
from ggp.weyl import FClassLabel, GroupKind, enumerate_f_centralizer, f_classes

KINDS = (
    [GroupKind("GL", n, 3) for n in (1, 2, 3)]
    + [GroupKind("U", n, 3) for n in (1, 2, 3)]
    + [GroupKind("Sp", n, 3) for n in (1, 2, 3)]
    + [GroupKind("SOodd", n, 3) for n in (1, 2, 3)]
    + [GroupKind("SOeven+", n, 3) for n in (2, 3)]
    + [GroupKind("SOeven-", n, 3) for n in (2, 3)]
)


def _shapes(label):
    return [
        (mu_p, lam_p)
        for mu_p in sub_partitions(label.mu)
        for lam_p in sub_partitions(label.lam)
        if sum(mu_p) + sum(lam_p) < label.kind.n
    ]


def test_torus_orders_multiply_to_known_values():
    # |T^F| for a maximal split / Coxeter torus of small groups
    q = 3
    T_split = TorusDatum(FClassLabel(GroupKind("GL", 3, q), (1, 1, 1)))
    assert torus_factor_orders(T_split) == [q - 1] * 3
    T_cox = TorusDatum(FClassLabel(GroupKind("GL", 3, q), (3,)))
    assert torus_factor_orders(T_cox) == [q**3 - 1]
    # unitary: a 1-cycle is anisotropic (order q+1), a 2-cycle splits over
    # the quadratic extension
    T_u = TorusDatum(FClassLabel(GroupKind("U", 3, q), (2, 1)))
    assert sorted(torus_factor_orders(T_u)) == sorted([q**2 - 1, q + 1])


def test_weyl_action_permutes_the_torus():
    for kind in KINDS[:8]:
        for label in f_classes(kind):
            T = TorusDatum(label)
            cent = enumerate_f_centralizer(label)[:8]
            for t in element_pool(T, 3):
                for w in cent:
                    u = weyl_action(T, w, t)
                    # the action permutes coordinates up to inversion (the
                    # signed ambients invert, the unitary relation twists)
                    def key(v):
                        return sorted(
                            tuple(sorted((x, eig_inverse(T.q, x))))
                            for x in expand(T, v)
                        )

                    assert key(u) == key(t)


def test_decompose_by_orbit_sizes():
    for kind in KINDS:
        for label in f_classes(kind):
            T = TorusDatum(label)
            for t in element_pool(T, 3):
                dec = decompose_by_orbit(T, t)
                total = sum(
                    sum(p.mu) + sum(p.lam) for p in dec.values()
                )
                assert total == kind.n


def test_stabilizer_order_vs_enumeration():
    checks = 0
    for kind in KINDS:
        if kind.family.startswith("SOeven"):
            continue  # the formula serves the GL/U and type-B ambients
        for label in f_classes(kind):
            T = TorusDatum(label)
            cent = enumerate_f_centralizer(label)
            for t in element_pool(T, 6):
                brute = sum(1 for w in cent if weyl_action(T, w, t) == t)
                assert stabilizer_order(T, t) == brute, (label, t)
                checks += 1
    assert checks >= 100


def test_m_count_vs_enumeration():
    checks = 0
    for kind in KINDS:
        for label in f_classes(kind):
            T = TorusDatum(label)
            for t in element_pool(T, 4):
                for mu_p, lam_p in _shapes(label):
                    for tp, _ in restriction_classes(T, t, mu_p, lam_p):
                        assert in_d_set(T, t, mu_p, lam_p, tp)
                        got = m_count(T, t, mu_p, lam_p, tp)
                        want = m_count_oracle(T, t, mu_p, lam_p, tp)
                        assert got == want, (label, t, mu_p, lam_p, tp)
                        checks += 1
    assert checks >= 500


def test_m_count_zero_outside_d():
    # an element outside D gets M-count zero from both routes
    q = 3
    label = FClassLabel(GroupKind("GL", 2, q), (1, 1))
    T = TorusDatum(label)
    t = make_element(T, [one(), one()])
    tp = make_element(sub_torus(T, (1,), ()), [normalize(q, 1, 1)])
    assert not in_d_set(T, t, (1,), (), tp)
    assert m_count(T, t, (1,), (), tp) == 0
    assert m_count_oracle(T, t, (1,), (), tp) == 0


def test_p_set_counts_restriction_classes():
    checks = 0
    for kind in KINDS:
        for label in f_classes(kind):
            T = TorusDatum(label)
            for t in element_pool(T, 3):
                for mu_p, lam_p in _shapes(label):
                    got = len(p_set(T, t, mu_p, lam_p))
                    want = d_class_count_oracle(T, t, mu_p, lam_p)
                    assert got == want, (label, t, mu_p, lam_p)
                    checks += 1
    assert checks >= 200


def test_restriction_class_representatives_cover_d():
    # every Weyl translate restricts to something conjugate to exactly one
    # canonical representative
    q = 3
    for kind in (GroupKind("GL", 3, q), GroupKind("U", 3, q), GroupKind("Sp", 2, q)):
        for label in f_classes(kind):
            T = TorusDatum(label)
            for t in element_pool(T, 2):
                for mu_p, lam_p in _shapes(label):
                    reps = [tp for tp, _ in restriction_classes(T, t, mu_p, lam_p)]
                    assert len(reps) == len(set(reps))
                    d_set = {
                        restrict(T, weyl_action(T, w, t), mu_p, lam_p)
                        for w in enumerate_f_centralizer(label)
                    }
                    assert set(reps) <= d_set
                    total = sum(
                        m_count_oracle(T, t, mu_p, lam_p, x) > 0 for x in d_set
                    )
                    assert total == len(d_set)


def test_identity_element_restricts_to_identity():
    for kind in KINDS[:6]:
        for label in f_classes(kind):
            T = TorusDatum(label)
            e = identity_element(T)
            for mu_p, lam_p in _shapes(label):
                Tp = sub_torus(T, mu_p, lam_p)
                assert restrict(T, e, mu_p, lam_p) == identity_element(Tp)
