"""Exact algebra of L-infinity structures on a 2|1-dimensional space.

Cochains, their bracket, cohomology of codifferentials, classification of
low-degree codifferentials up to linear automorphism, and miniversal
deformations over a supercommutative parameter ring.
"""

from .canonical import canonical_from_label, d_family, d_sharp, d_star
from .classify import (
    CanonicalLabel,
    ClassificationError,
    ClassificationResult,
    LinearAutomorphism,
    act,
    classify,
    classify_degree1,
    classify_first_kind_deg2,
    classify_second_kind_deg2,
    closeness_scan,
)
from .cohomology import (
    Cohomology,
    CohomologyReport,
    NotACoboundary,
    NotACocycleError,
    NotCodifferentialError,
    coboundaries,
    coboundary_matrix,
    cocycles,
    cohomology_basis,
    cohomology_report,
    decompose_cocycle,
    preimage,
)
from .core import (
    BasisCochain,
    Cochain,
    DegreeError,
    Kind,
    MultiIndex,
    ParityError,
    basis,
    basis_cochains,
    bracket,
    enumerate_monomials,
    evaluate,
    extend_as_coderivation,
    is_codifferential,
    kind_of,
)
from .deformation import DeformationError, MiniversalResult, infinitesimal, residual, run, step, super_bracket
from .grammar import ParseError, format_cochain, parse_cochain
from .oracle import coderivation_matrix, oracle_bracket
from .scalars import Parity, QuadraticNumber
from .superpoly import Parameter, RelationIdeal, SuperPolynomial, parse_superpoly, reduce_mod_relations

__version__ = "0.1.0"
