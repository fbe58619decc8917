"""Exact pairings of Deligne-Lusztig characters and branching multiplicities
for the classical pairs (GL_{n+1}, GL_n), (U_{n+1}, U_n), (SO_{2n+1}, SO_2n).

All arithmetic is exact (integers and fractions); every nontrivial closed
formula is cross-validated in the test suite against independent routes or
brute-force enumeration.
"""

__version__ = "0.1.0"

from .eigenvalue_orbits import Eigenvalue, frobenius_orbit, generator_of_level
from .weyl import FClassLabel, GroupKind
from .tori import TorusDatum
from .reeder_engine import (
    DualTorusPair,
    PairingReport,
    reeder_closed_form,
    reeder_direct,
)
from .lusztig_decomposition import factorized_pairing
from .unipotent_reps import (
    SeriesDatum,
    VirtualCharacter,
    ggp_multiplicity,
    make_series,
    series_member,
    unipotent_expansion,
)

__all__ = [
    "Eigenvalue",
    "frobenius_orbit",
    "generator_of_level",
    "GroupKind",
    "FClassLabel",
    "TorusDatum",
    "DualTorusPair",
    "PairingReport",
    "reeder_direct",
    "reeder_closed_form",
    "factorized_pairing",
    "VirtualCharacter",
    "SeriesDatum",
    "make_series",
    "series_member",
    "unipotent_expansion",
    "ggp_multiplicity",
]
