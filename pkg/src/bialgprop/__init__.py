"""Exact symbolic computation in the free PROP on the generators xi(m,n)."""

from .algebra import (
    Element,
    FractionSpec,
    act,
    butterfly,
    comp_at_input,
    comp_at_output,
    fraction,
    generator,
    hcomp,
    identity,
    upsilon,
    vcomp,
)
from .differential import (
    codim1_term_count,
    d0_generator,
    extend_derivation,
    recorded_full_differential,
    verify_square_zero,
)
from .gradings import genus, is_half_prop_monomial, path_grading
from .graph import Monomial, canonicalize, connected_components, to_dot
from .special import check_cd_relation, enumerate_special
from .term import parse_element, print_element

__version__ = "0.1.0"
