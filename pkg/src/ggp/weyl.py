"""Weyl groups of the classical families with their Frobenius actions.

Everything is reduced to one uniform model.  The Weyl group of each family
acts on torus coordinates (x_1, ..., x_n) by signed permutations, and every
F-conjugacy class of every family is represented by a single signed
permutation b together with a global Frobenius sign:

  family      ambient group      class label          representative b
  GL_n        S_n                partition mu         cycle perm of type mu
  U_n         S_n                partition mu         cycle perm of type mu
  Sp_2n,
  SO_{2n+1}   B_n (hyperoct.)    bipartition (mu,lam) block form: mu-parts
                                                      positive cycles,
                                                      lam-parts negative
  SO+_{2n}    D_n                (mu,lam), #lam even  block form; classes
                                                      with lam empty and all
                                                      mu_i even split in two
  SO-_{2n}    D_n (twisted)      (mu,lam), #lam odd   block form (lies in
                                                      the odd coset)

For U_n the F-action on W = S_n is w -> w0 w w0; classes of w biject with
plain conjugacy classes of w*w0, and the representative b stands for w*w0
(the Frobenius raises torus coordinates to the power -q).  For SO-_{2n} the
F-action on D_n is conjugation by the sign flip a in the last coordinate,
and b stands for w*a in the odd coset of B_n.  In all cases

    W_G(T_b)^F  =  { x in ambient : x b = b x },

an ordinary centralizer, and the torus factor structure is read off the
signed cycles of b.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import factorial, prod
from typing import Iterator, NamedTuple

from .partitions import Partition, bipartitions_of, partition, partitions_of

__all__ = [
    "GroupKind",
    "FClassLabel",
    "SignedPerm",
    "sp_identity",
    "sp_mul",
    "sp_inverse",
    "signed_cycles",
    "all_sn",
    "all_bn",
    "all_dn",
    "ambient_elements",
    "class_rep",
    "f_classes",
    "f_centralizer_order",
    "enumerate_f_centralizer",
    "weyl_order",
    "group_rank",
]

FAMILIES = ("GL", "U", "Sp", "SOodd", "SOeven+", "SOeven-")


@dataclass(frozen=True)
class GroupKind:
    """A classical group G(F_q): GL_n, U_n, Sp_2n, SO_{2n+1} or SO^±_{2n}."""

    family: str
    n: int  # rank parameter: GL_n, U_n, Sp_{2n}, SO_{2n+1}, SO^±_{2n}
    q: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 0 or (self.family.startswith("SOeven") and self.n < 1):
            raise ValueError(f"invalid rank parameter {self.n} for {self.family}")

    @property
    def twist(self) -> str:
        """Which Frobenius orbit convention the dual side uses."""
        return "unitary" if self.family == "U" else "standard"

    @property
    def frob_sign(self) -> int:
        """Global sign of the Frobenius exponent on torus coordinates."""
        return -1 if self.family == "U" else 1

    @property
    def signed(self) -> bool:
        return self.family not in ("GL", "U")

    def __str__(self) -> str:
        names = {
            "GL": f"GL_{self.n}",
            "U": f"U_{self.n}",
            "Sp": f"Sp_{2 * self.n}",
            "SOodd": f"SO_{2 * self.n + 1}",
            "SOeven+": f"SO^+_{2 * self.n}",
            "SOeven-": f"SO^-_{2 * self.n}",
        }
        return f"{names[self.family]}(F_{self.q})"


def group_rank(kind: GroupKind) -> int:
    """Rank: GL_n -> n, U_n -> floor(n/2), Sp/SOodd/SOeven+ -> n, SOeven- -> n-1.

    Only the parity is ever consumed (signs (-1)^rk)."""
    if kind.family == "GL":
        return kind.n
    if kind.family == "U":
        return kind.n // 2
    if kind.family == "SOeven-":
        return kind.n - 1
    return kind.n


@dataclass(frozen=True)
class FClassLabel:
    """An F-conjugacy class of the Weyl group / a class of F-stable tori."""

    kind: GroupKind
    mu: Partition
    lam: Partition = ()
    split: str | None = None  # '+'/'-' for the split type-D classes

    def __post_init__(self) -> None:
        fam = self.kind.family
        if fam in ("GL", "U"):
            if self.lam or self.split:
                raise ValueError(f"{fam} labels carry a single partition")
            if sum(self.mu) != self.kind.n:
                raise ValueError(f"|mu| != n for {self}")
        else:
            if sum(self.mu) + sum(self.lam) != self.kind.n:
                raise ValueError(f"|mu|+|lam| != n for {self}")
            if fam == "SOeven+" and len(self.lam) % 2 != 0:
                raise ValueError("SOeven+ labels need an even number of lam-parts")
            if fam == "SOeven-" and len(self.lam) % 2 != 1:
                raise ValueError("SOeven- labels need an odd number of lam-parts")
            is_split = fam == "SOeven+" and not self.lam and all(p % 2 == 0 for p in self.mu)
            if is_split != (self.split is not None):
                raise ValueError(f"split sign present iff lam=0 and all mu even: {self}")
            if self.split not in (None, "+", "-"):
                raise ValueError(f"bad split sign {self.split!r}")


class SignedPerm(NamedTuple):
    """Signed permutation (p, s): coordinate action x'_{p(i)} = x_i^{s_i}."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]


def sp_identity(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(n)), (1,) * n)


def sp_mul(u: SignedPerm, v: SignedPerm) -> SignedPerm:
    """u*v = (apply v, then u) as coordinate actions."""
    pu, su = u
    pv, sv = v
    n = len(pu)
    return SignedPerm(
        tuple(pu[pv[i]] for i in range(n)),
        tuple(sv[i] * su[pv[i]] for i in range(n)),
    )


def sp_inverse(w: SignedPerm) -> SignedPerm:
    p, s = w
    n = len(p)
    q = [0] * n
    t = [1] * n
    for i in range(n):
        q[p[i]] = i
        t[p[i]] = s[i]
    return SignedPerm(tuple(q), tuple(t))


def signed_cycles(w: SignedPerm) -> list[tuple[tuple[int, ...], int]]:
    """Cycles of the underlying permutation, each starting at its least
    element, with the product of signs along the cycle."""
    p, s = w
    n = len(p)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        cyc = []
        sign = 1
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            sign *= s[i]
            i = p[i]
        out.append((tuple(cyc), sign))
    return out


def cycle_type(w: SignedPerm) -> tuple[Partition, Partition]:
    """(mu, lam): lengths of positive and negative cycles."""
    mu, lam = [], []
    for cyc, sign in signed_cycles(w):
        (mu if sign == 1 else lam).append(len(cyc))
    return partition(mu), partition(lam)


@lru_cache(maxsize=None)
def all_sn(n: int) -> tuple[SignedPerm, ...]:
    return tuple(SignedPerm(p, (1,) * n) for p in permutations(range(n)))


@lru_cache(maxsize=None)
def all_bn(n: int) -> tuple[SignedPerm, ...]:
    return tuple(
        SignedPerm(p, s)
        for p in permutations(range(n))
        for s in product((1, -1), repeat=n)
    )


@lru_cache(maxsize=None)
def all_dn(n: int) -> tuple[SignedPerm, ...]:
    return tuple(w for w in all_bn(n) if prod(w.signs) == 1)


def ambient_elements(kind: GroupKind) -> tuple[SignedPerm, ...]:
    """The Weyl group of `kind` as explicit signed permutations."""
    if kind.family in ("GL", "U"):
        return all_sn(kind.n)
    if kind.family in ("Sp", "SOodd"):
        return all_bn(kind.n)
    return all_dn(kind.n)


def flip_last(n: int) -> SignedPerm:
    """The odd reflection a: sign flip in the last coordinate."""
    if n < 1:
        raise ValueError("flip_last needs n >= 1")
    return SignedPerm(tuple(range(n)), (1,) * (n - 1) + (-1,))


def _block_rep(n: int, mu: Partition, lam: Partition) -> SignedPerm:
    """Canonical block representative: for each mu-part a positive cycle
    on consecutive coordinates, for each lam-part a negative cycle (the
    sign sits on the wrap-around edge)."""
    p = list(range(n))
    s = [1] * n
    pos = 0
    for m in mu:
        for i in range(pos, pos + m - 1):
            p[i] = i + 1
        p[pos + m - 1] = pos
        pos += m
    for m in lam:
        for i in range(pos, pos + m - 1):
            p[i] = i + 1
        p[pos + m - 1] = pos
        s[pos + m - 1] = -1
        pos += m
    assert pos == n
    return SignedPerm(tuple(p), tuple(s))


def class_rep(label: FClassLabel) -> SignedPerm:
    """The representative b of the uniform model (see module docstring)."""
    kind = label.kind
    n = kind.n
    if kind.family in ("GL", "U"):
        return _block_rep(n, label.mu, ())
    b = _block_rep(n, label.mu, label.lam)
    if label.split == "-":
        a = flip_last(n)
        b = sp_mul(a, sp_mul(b, a))
    return b


def f_classes(kind: GroupKind) -> list[FClassLabel]:
    """All F-conjugacy class labels of the Weyl group of `kind`."""
    n = kind.n
    out: list[FClassLabel] = []
    if kind.family in ("GL", "U"):
        return [FClassLabel(kind, mu) for mu in partitions_of(n)]
    for mu, lam in bipartitions_of(n):
        if kind.family in ("Sp", "SOodd"):
            out.append(FClassLabel(kind, mu, lam))
        elif kind.family == "SOeven+":
            if len(lam) % 2 == 0:
                if not lam and all(p % 2 == 0 for p in mu):
                    out.append(FClassLabel(kind, mu, lam, "+"))
                    out.append(FClassLabel(kind, mu, lam, "-"))
                else:
                    out.append(FClassLabel(kind, mu, lam))
        else:  # SOeven-
            if len(lam) % 2 == 1:
                out.append(FClassLabel(kind, mu, lam))
    return out


def _mult_factor(mu: Partition, scale: int) -> int:
    """prod over distinct part values e with multiplicity k: (scale*e)^k * k!."""
    out = 1
    for e in set(mu):
        k = mu.count(e)
        out *= (scale * e) ** k * factorial(k)
    return out


def f_centralizer_order(label: FClassLabel) -> int:
    """|W_G(T)^F| = |C_{W,F}(w)| by the closed formulas."""
    fam = label.kind.family
    if fam in ("GL", "U"):
        return _mult_factor(label.mu, 1)
    if fam in ("Sp", "SOodd"):
        return _mult_factor(label.mu, 2) * _mult_factor(label.lam, 2)
    # type D (plus the twisted coset): global 1/2 except for the split rows
    if not label.lam and all(p % 2 == 0 for p in label.mu):
        return _mult_factor(label.mu, 2)
    return _mult_factor(label.mu, 2) * _mult_factor(label.lam, 2) // 2


def weyl_order(kind: GroupKind) -> int:
    if kind.family in ("GL", "U"):
        return factorial(kind.n)
    if kind.family in ("Sp", "SOodd"):
        return 2**kind.n * factorial(kind.n)
    return 2 ** (kind.n - 1) * factorial(kind.n)


@lru_cache(maxsize=None)
def enumerate_f_centralizer(label: FClassLabel) -> tuple[SignedPerm, ...]:
    """Explicit W_G(T_b)^F = {x in ambient : xb = bx}; the oracle behind
    f_centralizer_order."""
    kind = label.kind
    bound = 8 if kind.family in ("GL", "U") else 6
    if kind.n > bound:
        raise ValueError(f"rank {kind.n} exceeds the enumeration bound {bound}")
    b = class_rep(label)
    return tuple(x for x in ambient_elements(kind) if sp_mul(x, b) == sp_mul(b, x))
