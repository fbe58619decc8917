"""Rational points of F-stable maximal tori, semisimple elements as exponent
tuples, the Weyl action, orbit decompositions, the restriction sets D and P,
and the M-counts — each with a closed formula and a brute-force oracle.

A torus class is an FClassLabel; its representative b (module weyl) has one
signed cycle per torus factor.  T^F is the product of cyclic groups, one per
factor, of order q^m - 1 or q^m + 1 depending on the cycle sign and the
global Frobenius sign.  A semisimple element is stored as one eigenvalue per
factor (the coordinate at the cycle's least position); the remaining
coordinates are forced by x_{p(i)} = x_i^{eps*q*s_i}, so elements expand to
full coordinate vectors for the Weyl action and compress back.

Orbit indices: for GL/U ambient groups the index [a] is the plain Frobenius
orbit (q-power resp. (-q)-power).  For Sp/SO ambient groups the Weyl group
inverts coordinates, so the index must be inverse-closed: [a] and [a^{-1}]
are merged into one class, while h = #[a] keeps meaning the size of the
plain q-power orbit (that is the h entering every divisibility condition
and every scaled partition).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .eigenvalue_orbits import (
    Eigenvalue,
    eig_inverse,
    eig_pow,
    frobenius_orbit,
    normalize,
    one,
)
from .partitions import (
    Partition,
    c_coeff,
    contains,
    multiset_difference,
    multiset_union,
    partition,
    sub_partitions,
)
from .weyl import (
    FClassLabel,
    GroupKind,
    SignedPerm,
    class_rep,
    enumerate_f_centralizer,
    f_centralizer_order,
    signed_cycles,
)

__all__ = [
    "Factor",
    "TorusDatum",
    "OrbitClass",
    "OrbitPart",
    "SemisimpleElement",
    "torus_factors",
    "torus_factor_orders",
    "make_element",
    "identity_element",
    "expand",
    "compress",
    "weyl_action",
    "orbit_class_of",
    "decompose_by_orbit",
    "torus_rank",
    "sub_torus",
    "restriction_split",
    "restrict",
    "p_set",
    "restriction_classes",
    "element_from_map",
    "in_d_set",
    "m_count",
    "m_count_oracle",
    "d_class_count_oracle",
    "stabilizer_order",
    "transporter_count",
]

# one exponent per torus factor, stored as normalized eigenvalues
SemisimpleElement = tuple[Eigenvalue, ...]


@dataclass(frozen=True)
class Factor:
    positions: tuple[int, ...]  # cycle of b, starting at its least position
    cycle_sign: int  # +1: split (GL_1) factor, -1: anisotropic (U_1)
    size: int
    order: int  # order of the cyclic group of F-rational points
    step: int  # coordinate relation x_{next} = x^step along the cycle


@dataclass(frozen=True)
class TorusDatum:
    label: FClassLabel

    @property
    def kind(self) -> GroupKind:
        return self.label.kind

    @property
    def q(self) -> int:
        return self.label.kind.q


@lru_cache(maxsize=None)
def torus_factors(T: TorusDatum) -> tuple[Factor, ...]:
    """Factors of T^F, one per signed cycle of the class representative,
    sorted: split factors by decreasing size first, then anisotropic ones."""
    kind = T.kind
    q = kind.q
    eps = kind.frob_sign
    b = class_rep(T.label)
    facs = []
    for cyc, sign in signed_cycles(b):
        m = len(cyc)
        es = eps**m * sign
        order = q**m - 1 if es == 1 else q**m + 1
        facs.append(Factor(cyc, sign, m, order, eps * q))
    facs.sort(key=lambda f: (-f.cycle_sign, -f.size, f.positions))
    return tuple(facs)


def torus_factor_orders(T: TorusDatum) -> list[int]:
    return [f.order for f in torus_factors(T)]


def torus_rank(T: TorusDatum) -> int:
    """rk(T): GL ambient = #parts; U = #even parts; Sp/SO = #mu-parts.
    Only the parity is ever consumed."""
    fam = T.kind.family
    if fam == "GL":
        return len(T.label.mu)
    if fam == "U":
        return sum(1 for p in T.label.mu if p % 2 == 0)
    return len(T.label.mu)


def make_element(T: TorusDatum, eigs: list[Eigenvalue] | tuple[Eigenvalue, ...]) -> SemisimpleElement:
    """Validate one eigenvalue per factor and normalize."""
    facs = torus_factors(T)
    if len(eigs) != len(facs):
        raise ValueError(f"expected {len(facs)} coordinates, got {len(eigs)}")
    q = T.q
    out = []
    for a, f in zip(eigs, facs):
        a = normalize(q, a.level, a.exponent)
        if eig_pow(q, a, f.order) != one():
            raise ValueError(f"{a} has order not dividing {f.order}")
        out.append(a)
    return tuple(out)


def identity_element(T: TorusDatum) -> SemisimpleElement:
    return (one(),) * len(torus_factors(T))


def expand(T: TorusDatum, t: SemisimpleElement) -> tuple[Eigenvalue, ...]:
    """Full coordinate vector (x_1, ..., x_n) from the per-factor values."""
    q = T.q
    n = T.kind.n
    coords: list[Eigenvalue | None] = [None] * n
    b = class_rep(T.label)
    p, s = b
    for a, f in zip(t, torus_factors(T)):
        i = f.positions[0]
        x = a
        for _ in range(f.size):
            coords[i] = x
            x = eig_pow(q, x, f.step * s[i])
            i = p[i]
        assert i == f.positions[0]
    assert all(c is not None for c in coords)
    return tuple(coords)  # type: ignore[arg-type]


def compress(T: TorusDatum, coords: tuple[Eigenvalue, ...]) -> SemisimpleElement:
    return tuple(coords[f.positions[0]] for f in torus_factors(T))


def weyl_action(T: TorusDatum, w: SignedPerm, t: SemisimpleElement) -> SemisimpleElement:
    """^w t for w in W_G(T)^F, via the coordinate action x'_{p(i)} = x_i^{s_i}."""
    q = T.q
    x = expand(T, t)
    p, s = w
    y: list[Eigenvalue | None] = [None] * len(x)
    for i in range(len(x)):
        y[p[i]] = x[i] if s[i] == 1 else eig_inverse(q, x[i])
    return compress(T, tuple(y))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# orbit decomposition


@dataclass(frozen=True)
class OrbitClass:
    """The index [a]: a Frobenius orbit, inverse-closed for signed ambients."""

    key: Eigenvalue  # least member (over the merged orbit for signed ambients)
    h: int  # size of the plain twist-orbit of any member
    self_inverse: bool
    contains_one: bool
    contains_minus_one: bool
    members: frozenset[Eigenvalue]


@lru_cache(maxsize=None)
def orbit_class_of(q: int, twist: str, merged: bool, a: Eigenvalue) -> OrbitClass:
    orb = frobenius_orbit(q, twist, a)
    members = orb.members
    if merged and not orb.self_inverse:
        inv_orb = frobenius_orbit(q, twist, eig_inverse(q, a))
        members = members | inv_orb.members
    return OrbitClass(
        key=min(members),
        h=orb.size,
        self_inverse=orb.self_inverse,
        contains_one=orb.contains_one,
        contains_minus_one=orb.contains_minus_one,
        members=members,
    )


@dataclass(frozen=True)
class OrbitPart:
    orbit: OrbitClass
    mu: Partition  # mu[t,a]
    lam: Partition  # lam[t,a]


def decompose_by_orbit(T: TorusDatum, t: SemisimpleElement) -> dict[Eigenvalue, OrbitPart]:
    """mu[t,a] / lam[t,a]: each factor assigned to the orbit of its value."""
    kind = T.kind
    merged = kind.signed
    out: dict[Eigenvalue, tuple[OrbitClass, list[int], list[int]]] = {}
    for a, f in zip(t, torus_factors(T)):
        oc = orbit_class_of(kind.q, kind.twist, merged, a)
        entry = out.setdefault(oc.key, (oc, [], []))
        (entry[1] if f.cycle_sign == 1 else entry[2]).append(f.size)
    return {
        k: OrbitPart(oc, partition(mus), partition(lams))
        for k, (oc, mus, lams) in out.items()
    }


def nu_of(T: TorusDatum, t: SemisimpleElement, key: Eigenvalue) -> int:
    """nu_[a](t): multiplicity of each orbit member among the eigenvalues."""
    dec = decompose_by_orbit(T, t)
    if key not in dec:
        return 0
    part = dec[key]
    return (sum(part.mu) + sum(part.lam)) // part.orbit.h


# ---------------------------------------------------------------------------
# restriction: the embedding T_{mu,lam} = T_{mu',lam'} x T_{mu'',lam''}


def sub_kind(kind: GroupKind, mu_p: Partition, lam_p: Partition) -> GroupKind:
    """The group the primed torus is a maximal torus of."""
    n = sum(mu_p) + sum(lam_p)
    fam = kind.family
    if fam in ("GL", "U", "Sp", "SOodd"):
        # SO_{2n+1} restriction targets in these formulas stay in type B
        return GroupKind(fam, n, kind.q)
    eps = "+" if len(lam_p) % 2 == 0 else "-"
    if n == 0:
        return GroupKind("GL", 0, kind.q)  # trivial group; label bookkeeping only
    return GroupKind("SOeven" + eps, n, kind.q)


def sub_label(kind: GroupKind, mu_p: Partition, lam_p: Partition) -> FClassLabel:
    k = sub_kind(kind, mu_p, lam_p)
    if k.family in ("GL", "U"):
        return FClassLabel(k, multiset_union(mu_p, lam_p) if k.n else ())
    split = None
    if k.family == "SOeven+" and not lam_p and all(p % 2 == 0 for p in mu_p):
        split = "+"  # canonical pick; nothing downstream depends on it
    return FClassLabel(k, mu_p, lam_p, split)


def sub_torus(T: TorusDatum, mu_p: Partition, lam_p: Partition) -> TorusDatum:
    return TorusDatum(sub_label(T.kind, mu_p, lam_p))


@lru_cache(maxsize=None)
def restriction_split(T: TorusDatum, mu_p: Partition, lam_p: Partition) -> tuple[tuple[int, ...], Partition, Partition]:
    """Indices of the factors of T assigned to the primed block (first-fit
    among factors of matching size and type), plus (mu'', lam'')."""
    facs = torus_factors(T)
    used = [False] * len(facs)
    idx: list[int] = []
    for want_sign, parts in ((1, mu_p), (-1, lam_p)):
        for m in parts:
            for i, f in enumerate(facs):
                if not used[i] and f.cycle_sign == want_sign and f.size == m:
                    used[i] = True
                    idx.append(i)
                    break
            else:
                raise ValueError(f"no free factor of size {m}, sign {want_sign}")
    if T.kind.family in ("GL", "U"):
        mu_pp = multiset_difference(T.label.mu, multiset_union(mu_p, lam_p))
        lam_pp: Partition = ()
    else:
        mu_pp = multiset_difference(T.label.mu, mu_p)
        lam_pp = multiset_difference(T.label.lam, lam_p)
    return tuple(idx), mu_pp, lam_pp


def restrict(T: TorusDatum, t: SemisimpleElement, mu_p: Partition, lam_p: Partition) -> SemisimpleElement:
    """t|_{T'} under the fixed embedding: the primed factors' coordinates."""
    idx, _, _ = restriction_split(T, mu_p, lam_p)
    return tuple(t[i] for i in idx)


def target_shape(T: TorusDatum, mu_p: Partition, lam_p: Partition) -> tuple[Partition, Partition]:
    """Normalize a GL/U target (single partition goes into mu)."""
    if T.kind.family in ("GL", "U") and lam_p:
        raise ValueError("GL/U targets carry a single partition")
    return mu_p, lam_p


# ---------------------------------------------------------------------------
# the sets P and D


def p_set(
    T: TorusDatum, t: SemisimpleElement, mu_p: Partition, lam_p: Partition
) -> list[dict[Eigenvalue, tuple[Partition, Partition]]]:
    """All maps f (and f') assigning to each orbit [a] a sub-partition of
    mu[t,a] (and lam[t,a]) with union mu' (and lam')."""
    dec = decompose_by_orbit(T, t)
    keys = sorted(dec)
    results: list[dict[Eigenvalue, tuple[Partition, Partition]]] = []

    def rec(i: int, need_mu: Partition, need_lam: Partition, acc: dict) -> None:
        if i == len(keys):
            if not need_mu and not need_lam:
                results.append(dict(acc))
            return
        k = keys[i]
        part = dec[k]
        for fm in sub_partitions(part.mu):
            if not contains(need_mu, fm):
                continue
            rest_mu = multiset_difference(need_mu, fm)
            for fl in sub_partitions(part.lam):
                if not contains(need_lam, fl):
                    continue
                if fm or fl:
                    acc[k] = (fm, fl)
                rec(i + 1, rest_mu, multiset_difference(need_lam, fl), acc)
                acc.pop(k, None)

    rec(0, mu_p, lam_p, {})
    return results


def _compatible_member(q: int, oc: OrbitClass, size: int, cycle_sign: int, twist: str) -> Eigenvalue:
    """A member a of [a] valid as the base value of a factor of the given
    size and type: a^{step^size} = a."""
    for a in sorted(oc.members):
        if cycle_sign == 1:
            step = -q if twist == "unitary" else q
            if eig_pow(q, a, pow(step, size) - 1) == one():
                return a
        else:
            if eig_pow(q, a, q**size + 1) == one():
                return a
    raise ValueError(f"no member of {oc.key} fits a size-{size} factor")


def element_from_map(
    T: TorusDatum,
    f: dict[Eigenvalue, tuple[Partition, Partition]],
    mu_p: Partition,
    lam_p: Partition,
) -> SemisimpleElement:
    """The canonical representative t' in D with orbit data f: each target
    factor carries the least compatible member of its assigned orbit."""
    Tp = sub_torus(T, mu_p, lam_p)
    q = T.q
    twist = T.kind.twist
    merged = T.kind.signed
    # per factor of T', pick which orbit it belongs to (consume parts of f)
    remaining = {k: [list(v[0]), list(v[1])] for k, v in f.items()}
    vals = []
    for fac in torus_factors(Tp):
        slot = 0 if fac.cycle_sign == 1 else 1
        for k in sorted(remaining):
            parts = remaining[k][slot]
            if fac.size in parts:
                parts.remove(fac.size)
                oc = orbit_class_of(q, twist, merged, k)
                vals.append(_compatible_member(q, oc, fac.size, fac.cycle_sign, twist))
                break
        else:
            raise ValueError("map does not cover the target shape")
    return make_element(Tp, vals)


def restriction_classes(
    T: TorusDatum, t: SemisimpleElement, mu_p: Partition, lam_p: Partition
) -> list[tuple[SemisimpleElement, dict[Eigenvalue, tuple[Partition, Partition]]]]:
    """One representative per conjugacy class of D, labeled by its P-map."""
    return [
        (element_from_map(T, f, mu_p, lam_p), f)
        for f in p_set(T, t, mu_p, lam_p)
    ]


def in_d_set(
    T: TorusDatum,
    t: SemisimpleElement,
    mu_p: Partition,
    lam_p: Partition,
    tp: SemisimpleElement,
) -> bool:
    """Membership t' in D: orbit-wise containment of the decompositions."""
    Tp = sub_torus(T, mu_p, lam_p)
    dec = decompose_by_orbit(T, t)
    for k, part in decompose_by_orbit(Tp, tp).items():
        if k not in dec:
            return False
        if not contains(dec[k].mu, part.mu) or not contains(dec[k].lam, part.lam):
            return False
    return True


# ---------------------------------------------------------------------------
# M-counts: closed formulas


def _sym_factor(mu: Partition, scale: int) -> int:
    out = 1
    for e in set(mu):
        k = mu.count(e)
        out *= (scale * e) ** k * factorial(k)
    return out


def stabilizer_order(Tp: TorusDatum, tp: SemisimpleElement) -> int:
    """|W_G(T', t')^F| = #{w in W_G(T')^F : ^w t' = t'} by the closed
    orbit-product formula (validated against enumeration by the oracle
    tests).  For GL/U ambient and for type-B ambient (Sp / SO_odd)."""
    fam = Tp.kind.family
    dec = decompose_by_orbit(Tp, tp)
    out = 1
    for part in dec.values():
        oc = part.orbit
        h = oc.h
        if fam in ("GL", "U"):
            out *= _sym_factor(tuple(p // h for p in part.mu), 1)
        elif oc.contains_one or oc.contains_minus_one:
            out *= _sym_factor(part.mu, 2) * _sym_factor(part.lam, 2)
        elif oc.self_inverse:
            scaled = tuple(2 * p // h for p in part.mu + part.lam)
            out *= _sym_factor(partition(scaled), 1)
        else:
            out *= _sym_factor(tuple(p // h for p in part.mu), 1)
    return out


@lru_cache(maxsize=None)
def _block_local_group(q: int, size: int, cycle_sign: int) -> tuple[tuple[SignedPerm, ...], TorusDatum]:
    """The symmetry group of a single torus factor (rotations and block
    inversions, order 2*size), as the F-centralizer of a one-factor torus."""
    lab = FClassLabel(
        GroupKind("Sp", size, q),
        (size,) if cycle_sign == 1 else (),
        () if cycle_sign == 1 else (size,),
    )
    T1 = TorusDatum(lab)
    return enumerate_f_centralizer(lab), T1


@lru_cache(maxsize=None)
def _pair_counts(q: int, size: int, cycle_sign: int, u: Eigenvalue, v: Eigenvalue) -> tuple[int, int]:
    """(n+, n-): block-local elements mapping value u to value v, split by
    the sign character (product of coordinate signs)."""
    group, T1 = _block_local_group(q, size, cycle_sign)
    nplus = nminus = 0
    for w in group:
        if weyl_action(T1, w, (u,))[0] == v:
            if prod(w.signs) == 1:
                nplus += 1
            else:
                nminus += 1
    return nplus, nminus


def _orbit_counts(
    q: int,
    blocks: list[tuple[int, int, Eigenvalue]],
    slots: list[tuple[int, int, Eigenvalue]],
) -> tuple[int, int]:
    """Per-orbit M-counts: sum over injections of the target slots into the
    available blocks (matching size and type) of the product of per-pair
    local counts; plain and sign-character-weighted."""
    plain = twist = 0

    def rec(i: int, used: int, acc_p: int, acc_t: int) -> None:
        nonlocal plain, twist
        if i == len(slots):
            plain += acc_p
            twist += acc_t
            return
        m, sign, v = slots[i]
        for j, (bm, bsign, u) in enumerate(blocks):
            if used >> j & 1 or bm != m or bsign != sign:
                continue
            np_, nm_ = _pair_counts(q, m, sign, u, v)
            if np_ + nm_ == 0 and np_ - nm_ == 0:
                continue
            rec(i + 1, used | 1 << j, acc_p * (np_ + nm_), acc_t * (np_ - nm_))

    rec(0, 0, 1, 1)
    return plain, twist


def _free_counts(mu_pp: Partition, lam_pp: Partition) -> tuple[int, int]:
    """Signed-aware counts of the unconstrained complement-side symmetries:
    plain = |W_B(T'')^F|; twisted = 0 unless lam''=0 and all mu'' even."""
    plain = _sym_factor(mu_pp, 2) * _sym_factor(lam_pp, 2)
    if lam_pp or any(p % 2 for p in mu_pp):
        return plain, 0
    return plain, plain


def m_count(
    T: TorusDatum,
    t: SemisimpleElement,
    mu_p: Partition,
    lam_p: Partition,
    tp: SemisimpleElement,
) -> int:
    """#M = #{w' in W_G(T)^F : t' = (^{w'} t)|_{T'}} by the closed formulas."""
    if not in_d_set(T, t, mu_p, lam_p, tp):
        return 0
    fam = T.kind.family
    dec = decompose_by_orbit(T, t)
    Tp = sub_torus(T, mu_p, lam_p)
    decp = decompose_by_orbit(Tp, tp)
    cc = 1
    for k, part in decp.items():
        big = dec[k]
        cc *= c_coeff(big.mu, part.mu) * c_coeff(big.lam, part.lam)
    _, mu_pp, lam_pp = restriction_split(T, mu_p, lam_p)
    if fam in ("GL", "U"):
        Tpp = sub_torus(T, mu_pp, lam_pp)
        return stabilizer_order(Tp, tp) * f_centralizer_order(Tpp.label) * cc
    if fam in ("Sp", "SOodd"):
        wpp = _sym_factor(mu_pp, 2) * _sym_factor(lam_pp, 2)
        return stabilizer_order(Tp, tp) * wpp * cc
    # SOeven +/-: count inside C_{B_n}(b) and project onto D_n with the sign
    # character: #M_D = (#M_B + #M_sgn)/2, each side a product of per-orbit
    # structured counts times the free complement-side count.
    q = T.q
    merged = True
    by_orbit_blocks: dict[Eigenvalue, list[tuple[int, int, Eigenvalue]]] = {}
    for a, f in zip(t, torus_factors(T)):
        k = orbit_class_of(q, T.kind.twist, merged, a).key
        by_orbit_blocks.setdefault(k, []).append((f.size, f.cycle_sign, a))
    by_orbit_slots: dict[Eigenvalue, list[tuple[int, int, Eigenvalue]]] = {}
    for a, f in zip(tp, torus_factors(Tp)):
        k = orbit_class_of(q, T.kind.twist, merged, a).key
        by_orbit_slots.setdefault(k, []).append((f.size, f.cycle_sign, a))
    plain = twist = 1
    for k, slots in by_orbit_slots.items():
        p_k, t_k = _orbit_counts(q, by_orbit_blocks.get(k, []), slots)
        plain *= p_k
        twist *= t_k
    free_p, free_t = _free_counts(mu_pp, lam_pp)
    total = plain * free_p + twist * free_t
    assert total % 2 == 0
    return total // 2


# ---------------------------------------------------------------------------
# oracles


def m_count_oracle(
    T: TorusDatum,
    t: SemisimpleElement,
    mu_p: Partition,
    lam_p: Partition,
    tp: SemisimpleElement,
) -> int:
    return sum(
        1
        for w in enumerate_f_centralizer(T.label)
        if restrict(T, weyl_action(T, w, t), mu_p, lam_p) == tp
    )


def d_class_count_oracle(
    T: TorusDatum, t: SemisimpleElement, mu_p: Partition, lam_p: Partition
) -> int:
    """Number of conjugacy classes in D under the appropriate subgroup, by
    explicit orbit partitioning.  For GL/U/Sp/SO_odd the acting group is
    W_{G'}(T')^F; for SO^± it is S_{mu,lam,mu',lam'} realized as the
    restriction action of all of W_G(T)^F elements preserving the block."""
    d_elems = {
        restrict(T, weyl_action(T, w, t), mu_p, lam_p)
        for w in enumerate_f_centralizer(T.label)
    }
    if not d_elems:
        return 0
    Tp = sub_torus(T, mu_p, lam_p)
    fam = T.kind.family
    if fam.startswith("SOeven"):
        # the acting group: restrictions of big-Weyl elements that send the
        # primed block to itself, acting on T'
        idx, _, _ = restriction_split(T, mu_p, lam_p)
        prim_pos = {p for i in idx for p in torus_factors(T)[i].positions}
        movers = []
        for w in enumerate_f_centralizer(T.label):
            p, _ = w
            if all(p[i] in prim_pos for i in prim_pos):
                movers.append(w)

        def act(w: SignedPerm, x: SemisimpleElement) -> SemisimpleElement:
            vals: list[Eigenvalue] = [one()] * len(torus_factors(T))
            for j, i in enumerate(idx):
                vals[i] = x[j]
            return restrict(T, weyl_action(T, w, make_element(T, vals)), mu_p, lam_p)

        group, action = movers, act
    else:
        group = list(enumerate_f_centralizer(Tp.label))

        def action(w: SignedPerm, x: SemisimpleElement) -> SemisimpleElement:
            return weyl_action(Tp, w, x)

    classes = 0
    remaining = set(d_elems)
    while remaining:
        x = remaining.pop()
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for w in group:
                z = action(w, y)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        remaining -= orbit
        classes += 1
    return classes


def transporter_count(
    T: TorusDatum, t: SemisimpleElement, tp: SemisimpleElement
) -> int:
    """#{w in W_G(T)^F : ^w t = t'}: same-torus Deligne-Lusztig pairing."""
    return sum(
        1 for w in enumerate_f_centralizer(T.label) if weyl_action(T, w, t) == tp
    )
