"""Exact computation with complex line arrangements.

Computes finite presentations of the fundamental group of the complement
of a line arrangement in C^2 from a braided wiring diagram, decides
freeness of that group, and certifies non-freeness with an explicit
rank-2 free-abelian subgroup witness.  Projective arrangements in CP^2
and hyperplane arrangements in CP^(m+2) are handled through deconing and
generic plane sections.

All geometry is exact, over the field Q(i) of Gaussian rationals.
"""

from arrpi1.exactnum import GaussianRational, ExactMatrix, parse_gq
from arrpi1.geometry import AffineLine, Arrangement, SingularPoint, normalize, singular_points
from arrpi1.wiring import WiringDiagram, wire_arrangement
from arrpi1.presentation import Word, Presentation, arvola_presentation, rebase_at_first_actual
from arrpi1.analysis import FreenessVerdict, Z2Certificate, decide_free_affine, z2_witness
from arrpi1.projective import ProjectiveArrangement, decide_free_projective, decone

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "ExactMatrix",
    "parse_gq",
    "AffineLine",
    "Arrangement",
    "SingularPoint",
    "normalize",
    "singular_points",
    "WiringDiagram",
    "wire_arrangement",
    "Word",
    "Presentation",
    "arvola_presentation",
    "rebase_at_first_actual",
    "FreenessVerdict",
    "Z2Certificate",
    "decide_free_affine",
    "z2_witness",
    "ProjectiveArrangement",
    "decide_free_projective",
    "decone",
    "__version__",
]
