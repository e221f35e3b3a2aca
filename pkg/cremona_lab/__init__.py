"""Exact computer algebra for Jordan algebras and their quadro-quadric Cremona involutions."""

from .catalog import load_catalog, verify_entry, verify_table
from .cremona import RationalMap, check_involution, multidegree, scheme_type
from .errors import (
    CatalogError,
    DomainError,
    GenericityError,
    InputError,
    InternalError,
    LabError,
    StructuralError,
)
from .exact_poly import Polynomial, parse_polynomial
from .groebner import Ideal
from .jordan import Algebra, adjoint_map, check_jordan, rank_profile
from .settings import Settings, load_settings

__version__ = "0.1.0"
