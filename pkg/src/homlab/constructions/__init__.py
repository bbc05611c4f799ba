"""Deterministic finite-scale generators for the counterexample structures."""

from .builder import GraphBuilder
from .certificate import HARD_CAP, Axiom, ConstructionReport, LevelCertificate, verify_certificate
from .diamond import SPECIALS, diamond_case, diamond_extend, diamond_M, diamond_poset
from .lattice import lattice_counterexample
from .mainthm import c_index, claim_witness, mainthm_structure, specials_of
from .rado import partitioned_rado, rado_approx

__all__ = [
    "HARD_CAP",
    "SPECIALS",
    "Axiom",
    "ConstructionReport",
    "GraphBuilder",
    "LevelCertificate",
    "c_index",
    "claim_witness",
    "diamond_M",
    "diamond_case",
    "diamond_extend",
    "diamond_poset",
    "lattice_counterexample",
    "mainthm_structure",
    "partitioned_rado",
    "rado_approx",
    "specials_of",
    "verify_certificate",
]
