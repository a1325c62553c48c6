"""Finite categories, delta lenses, their constructions and brute-force oracles."""

from .errors import (
    BoundExceeded, CharacterisationMismatch, CompositeMismatch, ConeDoesNotCommute, DomainMismatch,
    InvalidTriangle, LensLabError, MalformedDiagram, MalformedError, NotDOF, NotDiscrete, NotEpi,
    NotIdempotent, NotMono, SquareDoesNotCommute, ValidationError, Violation,
)
from .fincat import (
    FinCat, Functor, Morphism, chain, coproduct_cat, discrete, discrete_objects, empty_category,
    equaliser_cat, find_isomorphism, full_subcategory, identity_functor, is_isomorphic, monoid,
    opposite, poset, product_cat, pullback_cat, terminal_category, validate_category,
    validate_functor, walking_arrow,
)
from .lens import (
    Lens, TrianglePresentation, Verdict, compose_lens, divide_lens, identity_lens, inverse_lens,
    is_cosieve, is_discrete_opfibration, is_epi_lens, is_iso_lens, is_mono_lens, is_opcartesian,
    lens_from_dof, lens_from_triangle, triangle_representation, validate_lens,
)
from .constructions import (
    CoproductResult, EqualiserResult, FactorisationResult, ImportedCone, coproduct_lens,
    distributivity_iso, equaliser_lens, extensivity_check, factorise_lens, imported_product,
    imported_pullback, initial_lens, orthogonal_fill, product_mediator_discrete,
    pullback_mediator_dof, split_idempotent, terminal_lens,
)
from .oracle import (
    Bounds, OracleReport, brute_force_epi, brute_force_mono, check_universal_equaliser,
    check_universal_product, check_universal_pullback, enumerate_functors, enumerate_lenses,
)
from .io import Document, export_dot, load_document, parse_document, serialize
from .kernels import BACKEND

__version__ = "0.1.0"
