"""Exact and multiprecision computation on the Siegel upper half space:
integer symplectic group algebra and the M = SP decomposition, Minkowski
and Siegel reduction, rigorously truncated theta-function embeddings, and
isogenies of principally polarized complex tori with their lattice-level
membership certificates.
"""

__version__ = "0.1.0"

from .errors import DomainError, NumericError, SiegelError, ValidationError
from .exact import (adjugate, exact_det, exact_inverse, hnf_decompose,
                    mat_height, rat_height, rowsum_norm)
from .halfspace import (SiegelPoint, gl_partial_act, is_in_siegel_domain,
                        is_minkowski_reduced, minkowski_reduce, moebius_act,
                        riemann_check, siegel_point, siegel_reduce)
from .symplectic import (AffineElement, SymplecticElement, in_congruence_group,
                         is_symplectic, semidirect_act, semidirect_mul,
                         standard_form, symplectic_basis, symplectic_decompose)
from .theta import (EvalContext, ProjectivePoint, automorphy_check,
                    chordal_distance, embedding_phi, exp_map, iota, theta)
from .torus import (OrbitWitness, PolarizedTorus, SublatticeRep, TorusIsogeny,
                    ampleness_bound, check_orbit_witness, complementary_isogeny,
                    enumerate_isogenies_g1, isogeny_from_rational_rep,
                    m4_two_path_check, make_witness, polarization_imaginary_form,
                    polarized_torus, pullback_polarization,
                    real_polarization_form, sublattice_check)

__all__ = [
    "AffineElement", "DomainError", "EvalContext", "NumericError",
    "OrbitWitness", "PolarizedTorus", "ProjectivePoint", "SiegelError",
    "SiegelPoint", "SublatticeRep", "SymplecticElement", "TorusIsogeny",
    "ValidationError", "adjugate", "ampleness_bound", "automorphy_check",
    "check_orbit_witness", "chordal_distance", "complementary_isogeny",
    "embedding_phi", "enumerate_isogenies_g1", "exact_det", "exact_inverse",
    "exp_map", "gl_partial_act", "hnf_decompose", "in_congruence_group",
    "iota", "is_in_siegel_domain", "is_minkowski_reduced", "is_symplectic",
    "isogeny_from_rational_rep", "m4_two_path_check", "make_witness",
    "mat_height", "minkowski_reduce", "moebius_act",
    "polarization_imaginary_form", "polarized_torus",
    "pullback_polarization", "rat_height", "real_polarization_form",
    "riemann_check", "rowsum_norm", "semidirect_act", "semidirect_mul",
    "siegel_point", "siegel_reduce", "standard_form", "sublattice_check",
    "symplectic_basis", "symplectic_decompose", "theta",
]
