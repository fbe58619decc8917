"""Pairings of Deligne-Lusztig characters for the three basic pair families

    (GL_{n+1}, GL_n),   (U_{n+1}, U_n),   (SO_{2n+1}, SO^eps_{2n}),

computed on the dual side from (T*, t) and (S*, s) by two independent routes:

* reeder_direct: summation over embedding classes [iota].  Each class is a
  shape (a sub-partition, resp. sub-bipartition, contained in both torus
  labels); its contribution is a signed ratio whose numerator counts pairs
  of Weyl elements matching the two restrictions on a common sub-torus,
  evaluated through the closed M-count formulas of module tori.

* reeder_closed_form: the fully factorized product over eigenvalue orbits
  [a] of explicit one-orbit sums (binomial coefficients times stabilizer
  orders), with no Weyl sums left.

Both routes return exact integers and must agree; the test suite enforces
this together with a brute-force double-Weyl-enumeration oracle.

Same-group Deligne-Lusztig orthogonality (a transporter count) is exposed
as well, as the elementary pairing consumed by the representation layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .eigenvalue_orbits import Eigenvalue, eig_pow, one
from .partitions import (
    Partition,
    c_coeff,
    contains,
    multiset_difference,
    sub_partitions,
)
from .tori import (
    OrbitClass,
    SemisimpleElement,
    TorusDatum,
    _compatible_member,
    decompose_by_orbit,
    m_count,
    make_element,
    orbit_class_of,
    stabilizer_order,
    sub_torus,
    torus_factors,
    torus_rank,
    transporter_count,
)
from .weyl import FClassLabel, GroupKind, f_centralizer_order

__all__ = [
    "DualTorusPair",
    "IotaDatum",
    "PairingReport",
    "pair_family",
    "dl_inner_product_same_group",
    "reeder_direct",
    "reeder_closed_form",
]


@dataclass(frozen=True)
class DualTorusPair:
    """A torus class together with a dual semisimple element: (T*, t)."""

    torus: TorusDatum
    element: SemisimpleElement

    def __post_init__(self) -> None:
        # validates one coordinate per factor with the right orders
        make_element(self.torus, self.element)


@dataclass(frozen=True)
class IotaDatum:
    """One embedding class [iota]: corank parameter m and common shape."""

    m: int
    shape: tuple[Partition, Partition]  # (mu', lam'); lam' empty for GL/U


@dataclass(frozen=True)
class PairingReport:
    value: int
    route: str
    breakdown: tuple
    signs: tuple


def pair_family(big: GroupKind, small: GroupKind) -> str:
    """Classify and validate the (G, H) pair: GL, U or SO Bessel shape."""
    if big.q != small.q:
        raise ValueError("pair members must share q")
    if big.family == small.family == "GL":
        fam = "GL"
    elif big.family == small.family == "U":
        fam = "U"
    elif big.family == "SOodd" and small.family.startswith("SOeven"):
        fam = "SO"
    else:
        raise ValueError(f"unsupported pair ({big}, {small})")
    if fam in ("GL", "U"):
        if big.n != small.n + 1:
            raise ValueError(f"sizes must differ by one: ({big}, {small})")
    elif big.n != small.n:
        raise ValueError(f"SO pair needs equal rank parameter: ({big}, {small})")
    return fam


def _check_so_hypothesis(side: DualTorusPair, name: str) -> None:
    """SO engines require that neither 1 nor -1 occurs among the eigenvalues."""
    for key, part in decompose_by_orbit(side.torus, side.element).items():
        if part.orbit.contains_one or part.orbit.contains_minus_one:
            which = "1" if part.orbit.contains_one else "-1"
            raise ValueError(
                f"{name} element has eigenvalue orbit [{key}] containing {which}; "
                "the SO pairing requires both elements to avoid +-1"
            )


def _validate(pair: str, big: DualTorusPair, small: DualTorusPair) -> str:
    fam = pair_family(big.torus.kind, small.torus.kind)
    if pair != fam:
        raise ValueError(f"pair {pair!r} does not match the groups ({fam})")
    if fam == "SO":
        _check_so_hypothesis(big, "big-side")
        _check_so_hypothesis(small, "small-side")
    return fam


def dl_inner_product_same_group(
    G: GroupKind, A: DualTorusPair, B: DualTorusPair
) -> int:
    """<R_{T,a}, R_{T',b}> for one group: the number of Weyl transporters."""
    for side in (A, B):
        if side.torus.kind != G:
            raise ValueError(f"{side.torus.kind} is not a torus datum of {G}")
    if A.torus.label != B.torus.label:
        return 0
    return transporter_count(A.torus, A.element, B.element)


# ---------------------------------------------------------------------------
# the direct route: summation over embedding classes


def iota_shapes(fam: str, big: DualTorusPair, small: DualTorusPair) -> list[IotaDatum]:
    """All classes [iota]: shapes contained in both torus labels."""
    T, S = big.torus, small.torus
    out = []
    if fam in ("GL", "U"):
        mus = set(sub_partitions(T.label.mu)) & set(sub_partitions(S.label.mu))
        for mu_p in sorted(mus):
            out.append(IotaDatum(S.kind.n - sum(mu_p), (mu_p, ())))
    else:
        mus = set(sub_partitions(T.label.mu)) & set(sub_partitions(S.label.mu))
        lams = set(sub_partitions(T.label.lam)) & set(sub_partitions(S.label.lam))
        for mu_p in sorted(mus):
            for lam_p in sorted(lams):
                out.append(IotaDatum(T.kind.n - sum(mu_p) - sum(lam_p), (mu_p, lam_p)))
    return out


def _iota_sign_exp(fam: str, big: DualTorusPair, small: DualTorusPair, iota: IotaDatum) -> int:
    """rk(G_iota) + rk(H_iota) + rk(T) + rk(S), modulo 2."""
    rk_ts = torus_rank(big.torus) + torus_rank(small.torus)
    if fam == "GL":
        inner = 1  # rk GL_{m+1} + rk GL_m = 2m+1
    elif fam == "U":
        inner = iota.m  # rk U_{m+1} + rk U_m = m
    else:
        # rk SO_{2m+1} + rk SO^delta_{2m}: 0 if delta = '+', 1 if '-'
        lam_pp_parts = len(small.torus.label.lam) - len(iota.shape[1])
        inner = lam_pp_parts % 2
    return (inner + rk_ts) % 2


def _w_g_iota(fam: str, big: DualTorusPair, iota: IotaDatum) -> int:
    """|W_{G_iota}(T)^F| = the centralizer order of the complement torus
    inside the inner factor of G_iota."""
    T = big.torus
    mu_p, lam_p = iota.shape
    if fam in ("GL", "U"):
        mu_pp = multiset_difference(T.label.mu, mu_p)
        kind = GroupKind(fam, sum(mu_pp), T.q)
        return f_centralizer_order(FClassLabel(kind, mu_pp))
    mu_pp = multiset_difference(T.label.mu, mu_p)
    lam_pp = multiset_difference(T.label.lam, lam_p)
    kind = GroupKind("SOodd", sum(mu_pp) + sum(lam_pp), T.q)
    return f_centralizer_order(FClassLabel(kind, mu_pp, lam_pp))


def _d_candidates(
    fam: str, big: DualTorusPair, small: DualTorusPair, iota: IotaDatum
):
    """A finite superset of D: all elements of the common sub-torus whose
    factor values come from orbits shared by t and s (the M-counts vanish
    on everything else)."""
    T, t = big.torus, big.element
    S, s = small.torus, small.element
    q = T.q
    shared = set(decompose_by_orbit(T, t)) & set(decompose_by_orbit(S, s))
    if not shared:
        yield from ()
        return
    merged = T.kind.signed
    twist = T.kind.twist
    ocs = [orbit_class_of(q, twist, merged, k) for k in sorted(shared)]
    Tp = sub_torus(T, *iota.shape)
    pools = []
    for f in torus_factors(Tp):
        pool = [
            a
            for oc in ocs
            for a in sorted(oc.members)
            if eig_pow(q, a, f.order) == one()
        ]
        if not pool:
            return
        pools.append(pool)
    for combo in iproduct(*pools):
        yield make_element(Tp, combo)


def reeder_direct(
    pair: str, big: DualTorusPair, small: DualTorusPair
) -> PairingReport:
    """<R^G_{T,chi}, R^H_{S,eta}>_{H^F} by direct summation over [iota]."""
    fam = _validate(pair, big, small)
    T, t = big.torus, big.element
    S, s = small.torus, small.element
    w_h_s = f_centralizer_order(S.label)
    total = Fraction(0)
    breakdown = []
    for iota in iota_shapes(fam, big, small):
        mu_p, lam_p = iota.shape
        weight = c_coeff(S.label.mu, mu_p)
        if fam == "SO":
            weight *= c_coeff(S.label.lam, lam_p)
        sign = -1 if _iota_sign_exp(fam, big, small, iota) else 1
        denom = _w_g_iota(fam, big, iota) * w_h_s
        if sum(mu_p) + sum(lam_p) == 0:
            # empty shape: D = {()} and both M-counts are full Weyl orders
            numer = f_centralizer_order(T.label) * w_h_s
        else:
            numer = 0
            for tp in _d_candidates(fam, big, small, iota):
                mt = m_count(T, t, mu_p, lam_p, tp)
                if mt:
                    numer += mt * m_count(S, s, mu_p, lam_p, tp)
        term = Fraction(weight * sign * numer, denom)
        total += term
        breakdown.append((iota, weight, sign, numer, denom))
    assert total.denominator == 1, "non-integral pairing: formula error"
    return PairingReport(int(total), "direct", tuple(breakdown), (fam,))


# ---------------------------------------------------------------------------
# the closed-form route: product over eigenvalue orbits


def _unsigned_rank(fam: str, mu: Partition) -> int:
    """F_q-rank of the GL/U torus labeled mu: #parts (GL), #even parts (U)."""
    if fam == "GL":
        return len(mu)
    return sum(1 for p in mu if p % 2 == 0)


def _stab_all_in_orbit(
    q: int, fam: str, key: Eigenvalue, mu_p: Partition, lam_p: Partition
) -> int:
    """|W_{C(t'')}(T')^F| for the canonical element t'' of the torus labeled
    (mu', lam') whose every factor value lies in the orbit [key]."""
    n = sum(mu_p) + sum(lam_p)
    if n == 0:
        return 1
    if fam in ("GL", "U"):
        label = FClassLabel(GroupKind(fam, n, q), mu_p)
        merged = False
    else:
        label = FClassLabel(GroupKind("Sp", n, q), mu_p, lam_p)
        merged = True
    Tp = TorusDatum(label)
    twist = Tp.kind.twist
    oc = orbit_class_of(q, twist, merged, key)
    vals = [
        _compatible_member(q, oc, f.size, f.cycle_sign, twist)
        for f in torus_factors(Tp)
    ]
    return stabilizer_order(Tp, make_element(Tp, vals))


def reeder_closed_form(
    pair: str, big: DualTorusPair, small: DualTorusPair
) -> PairingReport:
    """<R^G_{T,chi}, R^H_{S,eta}>_{H^F} as a product of one-orbit sums."""
    fam = _validate(pair, big, small)
    T, t = big.torus, big.element
    S, s = small.torus, small.element
    q = T.q
    dec_t = decompose_by_orbit(T, t)
    dec_s = decompose_by_orbit(S, s)
    keys = sorted(set(dec_t) | set(dec_s))
    empty = ((), ())
    value = 1
    per_orbit = []
    for k in keys:
        mu_t, lam_t = (dec_t[k].mu, dec_t[k].lam) if k in dec_t else empty
        mu_s, lam_s = (dec_s[k].mu, dec_s[k].lam) if k in dec_s else empty
        factor = 0
        if fam in ("GL", "U"):
            base = _unsigned_rank(fam, mu_t) + _unsigned_rank(fam, mu_s)
            if fam == "U":
                base += sum(mu_s)
            for lam in sub_partitions(mu_t):
                if not contains(mu_s, lam):
                    continue
                e = base + (sum(lam) if fam == "U" else 0)
                y = (
                    c_coeff(mu_t, lam)
                    * c_coeff(mu_s, lam)
                    * _stab_all_in_orbit(q, fam, k, lam, ())
                )
                factor += (-1) ** e * y
        else:
            base = len(mu_t) + len(mu_s)
            for mu_sub in sub_partitions(mu_t):
                if not contains(mu_s, mu_sub):
                    continue
                for lam_sub in sub_partitions(lam_t):
                    if not contains(lam_s, lam_sub):
                        continue
                    e = base + len(lam_sub)
                    y = (
                        c_coeff(mu_t, mu_sub)
                        * c_coeff(lam_t, lam_sub)
                        * c_coeff(mu_s, mu_sub)
                        * c_coeff(lam_s, lam_sub)
                        * _stab_all_in_orbit(q, fam, k, mu_sub, lam_sub)
                    )
                    factor += (-1) ** e * y
        value *= factor
        per_orbit.append((k, factor))
    if fam == "GL":
        # rk GL_{m+1} + rk GL_m is odd for every shape: one global sign
        value = -value
        signs = (fam, -1)
    elif fam == "SO":
        from .weyl import group_rank

        g = (-1) ** (group_rank(T.kind) + group_rank(S.kind))
        value *= g
        signs = (fam, g)
    else:
        signs = (fam, 1)
    return PairingReport(value, "closed_form", tuple(per_orbit), signs)
