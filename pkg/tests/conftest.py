"""Shared test helpers: deterministic element generators and sweeps."""

import itertools

from ggp.eigenvalue_orbits import eig_pow, minus_one, normalize, one
from ggp.reeder_engine import DualTorusPair
from ggp.tori import TorusDatum, make_element, torus_factors
from ggp.weyl import f_classes


def element_pool(T, limit, exclude_pm1=False, per_factor=7):
    """Deterministic torus elements: per-factor eigenvalue alphabets over
    levels 1..4, truncated, then the first `limit` products."""
    q = T.q
    bad = {one(), minus_one(q)}
    pools = []
    for f in torus_factors(T):
        pool = []
        for lev in (1, 2, 3, 4):
            for e in range(q**lev - 1):
                a = normalize(q, lev, e)
                if a in pool or (exclude_pm1 and a in bad):
                    continue
                if eig_pow(q, a, f.order) == one():
                    pool.append(a)
        pools.append(pool[:per_factor])
    return [
        make_element(T, list(c))
        for c in itertools.islice(itertools.product(*pools), limit)
    ]


def pair_sweep(fam, gk, hk, limit, per_factor=7):
    """All torus-class pairs of (gk, hk) with bounded element alphabets."""
    exclude = fam == "SO"
    for lt in f_classes(gk):
        T = TorusDatum(lt)
        ts = element_pool(T, limit, exclude, per_factor)
        for ls in f_classes(hk):
            S = TorusDatum(ls)
            ss = element_pool(S, limit, exclude, per_factor)
            for t in ts:
                for s in ss:
                    yield DualTorusPair(T, t), DualTorusPair(S, s)
