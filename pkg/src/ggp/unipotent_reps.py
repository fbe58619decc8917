"""Unipotent representations, Lusztig series, and GGP multiplicities.

Unipotent representations of GL_n and U_n are explicit rational combinations
of Deligne-Lusztig characters, with coefficients chi_lambda(mu)/z_mu given
by symmetric-group character values; the global sign for U_n is solved from
the positivity of the degree.  A series member pi in E(G, t) is glued from
one unipotent representation per eigenvalue orbit of t, with coefficients
assembled as the epsilon-twisted product of the per-orbit coefficients.

The GGP multiplicity of two series members is computed twice:

* LHS: bilinear expansion through the closed-form pairing engine,
* RHS: a product over eigenvalue orbits of small multiplicities, each
  evaluated through synthetic regular lifts (parabolically induced
  characters with fresh eigenvalues) and basic corank-one pairings,

and the two are asserted equal (and nonnegative).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

from .eigenvalue_orbits import Eigenvalue, generator_of_level, normalize, one
from .partitions import Partition, partition, partitions_of, scale_mul
from .reeder_engine import (
    DualTorusPair,
    PairingReport,
    dl_inner_product_same_group,
    pair_family,
    reeder_closed_form,
)
from .tori import (
    TorusDatum,
    _compatible_member,
    make_element,
    orbit_class_of,
    torus_factors,
    torus_rank,
)
from .weyl import FClassLabel, GroupKind, f_centralizer_order, group_rank

__all__ = [
    "VirtualCharacter",
    "SeriesDatum",
    "mn_character",
    "unipotent_expansion",
    "degree",
    "vc_inner",
    "vc_pairing",
    "series_member",
    "make_series",
    "gl_multiplicity",
    "reduce_to_basic",
    "ggp_multiplicity",
]


# ---------------------------------------------------------------------------
# symmetric group character values (Murnaghan-Nakayama recursion)


def _from_beta(beta: tuple[int, ...]) -> Partition:
    desc = sorted(beta, reverse=True)
    k = len(desc)
    return partition(
        p for p in (desc[i] - (k - 1 - i) for i in range(k)) if p > 0
    )


@lru_cache(maxsize=None)
def mn_character(lam: Partition, mu: Partition) -> int:
    """chi_lambda(w_mu), the symmetric group character value."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"|{lam}| != |{mu}|")
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    k = len(lam)
    beta = sorted(lam[i] + (k - 1 - i) for i in range(k))
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        newbeta = tuple(sorted(bset - {b} | {nb}))
        total += (-1) ** height * mn_character(_from_beta(newbeta), rest)
    return total


# ---------------------------------------------------------------------------
# virtual characters


@dataclass
class VirtualCharacter:
    """A rational combination of Deligne-Lusztig characters of one group.

    Terms are keyed by (torus class label, canonical dual element)."""

    group: GroupKind
    terms: dict[tuple[FClassLabel, tuple[Eigenvalue, ...]], Fraction] = field(
        default_factory=dict
    )

    def add(self, label: FClassLabel, elem, coeff) -> None:
        key = (label, tuple(elem))
        new = self.terms.get(key, Fraction(0)) + coeff
        if new:
            self.terms[key] = new
        else:
            self.terms.pop(key, None)

    def scaled(self, c) -> "VirtualCharacter":
        return VirtualCharacter(
            self.group, {k: c * v for k, v in self.terms.items()}
        )


def _identity_vc(kind: GroupKind) -> VirtualCharacter:
    """The trivial representation of a rank-0 group."""
    vc = VirtualCharacter(kind)
    vc.add(FClassLabel(kind, ()), (), Fraction(1))
    return vc


def group_order_p_prime(kind: GroupKind) -> int:
    """|G^F|_{p'}, the prime-to-p part of the group order."""
    q, n = kind.q, kind.n
    if kind.family == "GL":
        return prod(q**i - 1 for i in range(1, n + 1))
    if kind.family == "U":
        return prod(q**i - (-1) ** i for i in range(1, n + 1))
    if kind.family in ("Sp", "SOodd"):
        return prod(q ** (2 * i) - 1 for i in range(1, n + 1))
    eps = 1 if kind.family == "SOeven+" else -1
    return (q**n - eps) * prod(q ** (2 * i) - 1 for i in range(1, n))


def degree(vc: VirtualCharacter) -> int:
    """Sum of coefficients times signed torus degrees eps_G eps_T |G|_{p'}/|T|."""
    gp = group_order_p_prime(vc.group)
    eg = (-1) ** group_rank(vc.group)
    total = Fraction(0)
    for (label, _), c in vc.terms.items():
        T = TorusDatum(label)
        t_order = prod(f.order for f in torus_factors(T))
        total += c * eg * (-1) ** torus_rank(T) * Fraction(gp, t_order)
    if total.denominator != 1:
        raise ValueError(f"non-integer degree {total}: expansion bug")
    return int(total)


def vc_inner(A: VirtualCharacter, B: VirtualCharacter) -> Fraction:
    """<A, B> on one finite group, through DL orthogonality."""
    if A.group != B.group:
        raise ValueError("vc_inner needs characters of the same group")
    total = Fraction(0)
    for (la, ea), ca in A.terms.items():
        for (lb, eb), cb in B.terms.items():
            if la != lb:
                continue
            total += ca * cb * dl_inner_product_same_group(
                A.group,
                DualTorusPair(TorusDatum(la), ea),
                DualTorusPair(TorusDatum(lb), eb),
            )
    return total


def vc_pairing(pair: str, big: VirtualCharacter, small: VirtualCharacter) -> Fraction:
    """<big|_H, small>_H by bilinear expansion through the pairing engine."""
    total = Fraction(0)
    for (lt, et), ca in big.terms.items():
        for (ls, es), cb in small.terms.items():
            total += ca * cb * reeder_closed_form(
                pair,
                DualTorusPair(TorusDatum(lt), et),
                DualTorusPair(TorusDatum(ls), es),
            ).value
    return total


def unipotent_expansion(kind: GroupKind, lam: Partition) -> VirtualCharacter:
    """The unipotent representation pi_lambda of GL_n or U_n."""
    if kind.family not in ("GL", "U"):
        raise ValueError(f"unipotent expansions cover GL and U only, not {kind}")
    lam = partition(lam)
    if sum(lam) != kind.n:
        raise ValueError(f"|{lam}| != {kind.n}")
    vc = VirtualCharacter(kind)
    for mu in partitions_of(kind.n):
        label = FClassLabel(kind, mu)
        coeff = Fraction(mn_character(lam, mu), f_centralizer_order(label))
        if coeff:
            vc.add(label, (one(),) * len(mu), coeff)
    d = degree(vc)
    if d < 0:
        vc = vc.scaled(-1)
        d = -d
    if d <= 0:
        raise ValueError(f"non-positive degree for {kind}, {lam}")
    return vc


# ---------------------------------------------------------------------------
# series members glued from per-orbit unipotent pieces


@dataclass(frozen=True)
class CentralizerBlock:
    """One orbit block of a semisimple class: seed, primed group, multiplicity."""

    orbit: Eigenvalue
    group: GroupKind
    nu: int


@dataclass(frozen=True)
class SeriesDatum:
    """A Lusztig-series member: semisimple class plus one unipotent label
    per eigenvalue orbit."""

    group: GroupKind
    element: tuple[CentralizerBlock, ...]
    assignment: tuple[tuple[Eigenvalue, Partition], ...]

    def labels(self) -> dict[Eigenvalue, Partition]:
        return dict(self.assignment)


def _pair_fam_of(kind: GroupKind) -> str:
    if kind.family in ("GL", "U"):
        return kind.family
    if kind.family in ("SOodd", "SOeven+", "SOeven-"):
        return "SO"
    raise ValueError(f"unsupported family {kind.family}")


def _block_info(fam: str, q: int, key: Eigenvalue):
    """(orbit class, primed family, primed q, ambient scale, mixed_signs)."""
    if fam in ("GL", "U"):
        oc = orbit_class_of(q, "unitary" if fam == "U" else "standard", False, key)
        famp = "U" if (fam == "U" and oc.h % 2 == 1) else "GL"
        return oc, famp, q**oc.h, oc.h, False
    oc = orbit_class_of(q, "standard", True, key)
    if oc.self_inverse:
        d = oc.h // 2
        return oc, "U", q**d, d, True
    return oc, "GL", q**oc.h, oc.h, False


def make_series(
    kind: GroupKind, blocks: list[tuple[Eigenvalue, Partition]]
) -> SeriesDatum:
    """Convenience constructor: orbit seeds with their unipotent labels."""
    fam = _pair_fam_of(kind)
    elem = []
    assign = []
    total = 0
    for seed, lam in blocks:
        lam = partition(lam)
        oc, famp, qp, scale, _ = _block_info(fam, kind.q, seed)
        if any(k == oc.key for k, _ in assign):
            raise ValueError(f"two blocks share the orbit [{oc.key}]")
        elem.append(CentralizerBlock(oc.key, GroupKind(famp, sum(lam), qp), sum(lam)))
        assign.append((oc.key, lam))
        total += sum(lam) * scale
    if total != kind.n:
        raise ValueError(f"blocks fill rank {total}, group needs {kind.n}")
    if kind.family.startswith("SOeven"):
        # the number of negative parts of every glued label has the parity
        # of the total multiplicity of the self-inverse orbits
        par = 0
        for seed, lam in blocks:
            oc, famp, _, _, mixed = _block_info(fam, kind.q, seed)
            if mixed:
                par += sum(lam)
        if par % 2 != (0 if kind.family == "SOeven+" else 1):
            raise ValueError(
                f"element parity fits SOeven{'-' if par % 2 else '+'}, not {kind.family}"
            )
    return SeriesDatum(kind, tuple(elem), tuple(assign))


def _assemble_terms(kind: GroupKind, parts):
    """Glue (size, sign, value) blocks into a torus label with canonically
    ordered element coordinates.

    For the split type-D labels only the '+' class is used: the two split
    classes are swapped by the full orthogonal group, so every pairing
    against the odd group is insensitive to the choice."""
    mu = partition(p[0] for p in parts if p[1] == 1)
    lam = partition(p[0] for p in parts if p[1] == -1)
    coords = tuple(
        p[2] for p in sorted(parts, key=lambda p: (-p[1], -p[0], p[2]))
    )
    if (
        kind.family == "SOeven+"
        and not lam
        and all(p % 2 == 0 for p in mu)
    ):
        return [(FClassLabel(kind, mu, lam, "+"), coords)]
    return [(FClassLabel(kind, mu, lam), coords)]


def series_member(series: SeriesDatum) -> VirtualCharacter:
    """The uniform series member with the given per-orbit unipotent pieces."""
    kind = series.group
    q = kind.q
    fam = _pair_fam_of(kind)
    labels = series.labels()
    merged = kind.signed
    twist = kind.twist
    # per-orbit expansions: list of (parts, coefficient) alternatives
    per_orbit = []
    for block in series.element:
        lam = labels[block.orbit]
        oc, famp, qp, scale, mixed = _block_info(fam, q, block.orbit)
        if (famp, qp) != (block.group.family, block.group.q) or sum(lam) != block.nu:
            raise ValueError(f"inconsistent block data at orbit [{block.orbit}]")
        exp = unipotent_expansion(GroupKind(famp, block.nu, qp), lam)
        eps_a = (-1) ** group_rank(exp.group)
        alts = []
        for (plabel, _), c in exp.terms.items():
            parts = []
            for p in plabel.mu:
                sign = -1 if (mixed and p % 2 == 1) else 1
                size = p * scale
                value = _compatible_member(q, oc, size, sign, twist)
                parts.append((size, sign, value))
            alts.append((parts, eps_a * c))
        per_orbit.append(alts)
    vc = VirtualCharacter(kind)
    eps_g = (-1) ** group_rank(kind)

    def rec(i, parts, coeff):
        if i == len(per_orbit):
            for label, coords in _assemble_terms(kind, parts):
                vc.add(label, coords, eps_g * coeff)
            return
        for alt_parts, c in per_orbit[i]:
            rec(i + 1, parts + alt_parts, coeff * c)

    rec(0, [], Fraction(1))
    d = degree(vc)
    if d < 0:
        vc = vc.scaled(-1)
        d = -d
    if d <= 0:
        raise ValueError("series member has non-positive degree")
    return vc


# ---------------------------------------------------------------------------
# synthetic regular lifts and multiplicities


def _support_orbits(twist: str, *vcs: VirtualCharacter) -> set[Eigenvalue]:
    """All eigenvalue orbit keys occurring in the given characters."""
    keys = set()
    for vc in vcs:
        q = vc.group.q
        for (_, elem) in vc.terms:
            for v in elem:
                keys.add(orbit_class_of(q, twist, False, v).key)
    return keys


def _fresh_value(
    q: int, k: int, twist: str, seed: int, avoid: set[Eigenvalue]
) -> Eigenvalue:
    """An eigenvalue of exact level k (full orbit also under the unitary
    twist), different from 1, with its orbit disjoint from `avoid`."""
    modulus = q**k - 1
    for i in range(modulus - 1):
        e = 1 + (seed + i) % (modulus - 1)
        a = normalize(q, k, e)
        if a.level != k:
            continue
        oc = orbit_class_of(q, twist, False, a)
        if oc.key in avoid or (twist == "unitary" and oc.h != k):
            continue
        return a
    raise ValueError(f"no fresh level-{k} eigenvalue over q={q}")


def _regular_tau(
    fam: str, q: int, k: int, seed: int, avoid: set[Eigenvalue]
) -> VirtualCharacter:
    """A regular irreducible +-R of GL_k or U_k on the size-k torus, with a
    fresh eigenvalue (orbit disjoint from `avoid`, 1 not in the support)."""
    if fam == "U" and k % 2 != 0:
        raise ValueError("the unitary regular lift needs even size")
    kind = GroupKind(fam, k, q)
    twist = "unitary" if fam == "U" else "standard"
    a = _fresh_value(q, k, twist, seed, avoid)
    vc = VirtualCharacter(kind)
    vc.add(FClassLabel(kind, (k,)), (a,), Fraction(1))
    if degree(vc) < 0:
        vc = vc.scaled(-1)
    return vc


def _u1_tau(q: int, seed: int, avoid: set[Eigenvalue]) -> VirtualCharacter:
    """tau'_1 in E(U_1, s') with 1 not in s': a nontrivial character of U_1."""
    kind = GroupKind("U", 1, q)
    order = q + 1
    for i in range(order - 1):
        e = (q - 1) * (1 + (seed + i) % (order - 1))
        a = normalize(q, 2, e)
        if a != one() and orbit_class_of(q, "unitary", False, a).key not in avoid:
            break
    else:
        raise ValueError(f"no fresh U_1 character over q={q}")
    vc = VirtualCharacter(kind)
    vc.add(FClassLabel(kind, (1,)), (a,), Fraction(1))
    if degree(vc) < 0:
        vc = vc.scaled(-1)
    return vc


def _induce(tau: VirtualCharacter, sigma: VirtualCharacter) -> VirtualCharacter:
    """Lusztig induction I_P(tau (x) sigma) to the group of the combined rank,
    normalized to positive degree (tau and sigma live on GL/U groups)."""
    fam = tau.group.family
    assert fam == sigma.group.family and tau.group.q == sigma.group.q
    kind = GroupKind(fam, tau.group.n + sigma.group.n, tau.group.q)
    vc = VirtualCharacter(kind)
    for (lt, et), ca in tau.terms.items():
        for (ls, es), cb in sigma.terms.items():
            parts = sorted(
                zip(lt.mu + ls.mu, et + es), key=lambda p: (-p[0], p[1])
            )
            label = FClassLabel(kind, partition(p[0] for p in parts))
            vc.add(label, tuple(p[1] for p in parts), ca * cb)
    if degree(vc) < 0:
        vc = vc.scaled(-1)
    return vc


def gl_multiplicity(
    pi: VirtualCharacter, sigma: VirtualCharacter, seed: int = 0
) -> int:
    """m(pi, sigma) for GL: <pi, I_P(tau (x) sigma)> with a synthetic regular
    tau; independent of the choice of tau (seed only rotates it)."""
    if pi.group.family != "GL" or sigma.group.family != "GL":
        raise ValueError("gl_multiplicity needs GL characters")
    if pi.group.n < sigma.group.n:
        pi, sigma = sigma, pi
    q = pi.group.q
    k = pi.group.n + 1 - sigma.group.n
    tau = _regular_tau("GL", q, k, seed, _support_orbits("standard", pi, sigma))
    sigma_plus = _induce(tau, sigma)
    val = vc_pairing("GL", sigma_plus, pi)
    if val.denominator != 1:
        raise ValueError(f"non-integral multiplicity {val}")
    return int(val)


def reduce_to_basic(
    pi: VirtualCharacter, sigma: VirtualCharacter, corank: int, seed: int = 0
) -> tuple[VirtualCharacter, VirtualCharacter]:
    """Reduce an odd-corank Bessel pair to the basic (corank-one) case:
    sigma is lifted to sigma+ = I_P(tau (x) sigma) on the group one larger
    than pi's, with tau a synthetic regular character on the Coxeter-type
    torus with fresh eigenvalues."""
    if corank % 2 == 0:
        raise ValueError("even corank is out of scope (Fourier-Jacobi shape)")
    if corank != pi.group.n - sigma.group.n:
        raise ValueError("corank does not match the pair")
    if corank == 1:
        return pi, sigma
    q = pi.group.q
    k = corank + 1  # even
    fam = pi.group.family
    twist = "unitary" if fam == "U" else "standard"
    tau = _regular_tau(fam, q, k, seed, _support_orbits(twist, pi, sigma))
    return pi, _induce(tau, sigma)


def _u_multiplicity(
    pi: VirtualCharacter, sigma: VirtualCharacter, seed: int = 0
) -> int:
    """m(pi, sigma) for a unitary pair of any corank: even coranks are lifted
    through a nontrivial U_1 block, odd coranks reduced to the basic case."""
    if pi.group.n < sigma.group.n:
        pi, sigma = sigma, pi
    c = pi.group.n - sigma.group.n
    if c % 2 == 0:
        avoid = _support_orbits("unitary", pi, sigma)
        sigma = _induce(_u1_tau(pi.group.q, seed, avoid), sigma)
        if sigma.group.n > pi.group.n:  # the corank-0 case
            pi, sigma = sigma, pi
        c = pi.group.n - sigma.group.n
    pi, sigma_b = reduce_to_basic(pi, sigma, c, seed)
    if sigma_b.group.n > pi.group.n:
        val = vc_pairing("U", sigma_b, pi)
    else:
        val = vc_pairing("U", pi, sigma_b)
    if val.denominator != 1:
        raise ValueError(f"non-integral multiplicity {val}")
    return int(val)


def ggp_multiplicity(
    pi_series: SeriesDatum, sigma_series: SeriesDatum, seed: int = 0
) -> PairingReport:
    """The GGP multiplicity m(pi, sigma), computed as the bilinear pairing
    (LHS) and as the product of per-orbit multiplicities (RHS); the report
    asserts LHS = RHS >= 0."""
    kt, ks = pi_series.group, sigma_series.group
    if kt.family in ("GL", "U") and kt.family == ks.family and kt.q == ks.q:
        fam = kt.family
        corank = kt.n - ks.n
        if corank < 1 or corank % 2 == 0:
            raise ValueError(
                f"corank {corank} not supported: need an odd positive corank"
            )
    else:
        fam = pair_family(kt, ks)
        corank = 1
    pi = series_member(pi_series)
    sigma = series_member(sigma_series)
    trace = None
    if corank == 1:
        lhs = vc_pairing(fam, pi, sigma)
    else:
        _, sigma_b = reduce_to_basic(pi, sigma, corank, seed)
        trace = (corank, sigma_b.group)
        lhs = vc_pairing(fam, sigma_b, pi)
    if lhs.denominator != 1:
        raise ValueError(f"non-integral pairing {lhs}")
    lhs = int(lhs)
    q = pi_series.group.q
    lab_t = pi_series.labels()
    lab_s = sigma_series.labels()
    factors = []
    rhs = 1
    for key in sorted(set(lab_t) | set(lab_s)):
        oc, famp, qp, _, _ = _block_info(fam, q, key)
        kind0 = GroupKind(famp, 0, qp)
        pa = (
            unipotent_expansion(GroupKind(famp, sum(lab_t[key]), qp), lab_t[key])
            if key in lab_t
            else _identity_vc(kind0)
        )
        sa = (
            unipotent_expansion(GroupKind(famp, sum(lab_s[key]), qp), lab_s[key])
            if key in lab_s
            else _identity_vc(kind0)
        )
        if famp == "GL":
            m_a = gl_multiplicity(pa, sa, seed)
        else:
            m_a = _u_multiplicity(pa, sa, seed)
        factors.append((key, m_a))
        rhs *= m_a
    if lhs < 0 or lhs != rhs:
        raise AssertionError(
            f"multiplicity identity violated: LHS={lhs}, factors={factors}"
        )
    return PairingReport(lhs, "ggp", tuple(factors), (fam, trace))
