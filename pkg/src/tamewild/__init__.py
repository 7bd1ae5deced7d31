"""Tame and wild automorphisms of the rank-2 polynomial algebra over Euclidean rings."""
from .decider import (
    NotAutomorphism,
    ReductionStep,
    Tame,
    Undecided,
    Wild,
    decide,
    decide_over_fractions,
    find_reduction,
    reduction_trace,
    verify_automorphism,
)
from .endo import (
    DAut,
    ElementaryMove,
    EndoPair,
    TameCertificate,
    apply_move,
    compose,
    d_aut,
    sample_tame,
)
from .euclid import INTEGERS, RATIONALS, RATPOLY, UPoly, get_ring
from .free import FreeElem, FreeEndo, abelianize, lemma2_chain, nagata_eta, nagata_omega, tau_star
from .parsing import ParseError, parse_endo, parse_free, parse_poly
from .poly2 import Poly2, Word


def nagata_sigma(z, ring=INTEGERS) -> EndoPair:
    """``(x1 + 2*x2*w + z*w^2, x2 + z*w)`` with ``w = z*x1 - x2^2``."""
    z = ring.coerce(z)
    x1, x2 = Poly2.x1(), Poly2.x2()
    w = x1.scale(z) - x2 * x2
    return EndoPair(x1 + (x2 * w).scale(2) + (w * w).scale(z), x2 + w.scale(z))


__all__ = [
    "DAut", "ElementaryMove", "EndoPair", "FreeElem", "FreeEndo", "INTEGERS", "NotAutomorphism",
    "ParseError", "Poly2", "RATIONALS", "RATPOLY", "ReductionStep", "Tame", "TameCertificate",
    "UPoly", "Undecided", "Wild", "Word", "abelianize", "apply_move", "compose", "d_aut", "decide",
    "decide_over_fractions", "find_reduction", "get_ring", "lemma2_chain", "nagata_eta",
    "nagata_omega", "nagata_sigma", "parse_endo", "parse_free", "parse_poly", "reduction_trace",
    "sample_tame", "tau_star", "verify_automorphism",
]
