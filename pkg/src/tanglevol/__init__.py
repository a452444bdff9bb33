"""Knot and tangle diagrams, twist regions, Jones boundary coefficients and volume bounds."""

from .diagram import (
    CORNERS,
    DiagramError,
    LinkDiagram,
    PDParseError,
    TangleDiagram,
    TangleSign,
    add_belt,
    add_kink,
    braid_closure,
    component_count,
    conway_sum,
    denominator_closure,
    emit_pd,
    excise_crossing,
    horizontal_twist,
    is_alternating,
    is_prime,
    is_strongly_alternating,
    isomorphic,
    mirror,
    numerator_closure,
    parse_pd,
    parse_tangle,
    rational_tangle,
    tangle_sign,
    tangle_sum,
    twist_fill,
    vertical_sum,
    vertical_twist,
)
from .jones import (
    BoundaryCoeffs,
    BracketPair,
    StateSumCapError,
    boundary_coeffs,
    bracket,
    bracket_statesum,
    bracket_transfer,
    jones,
    jones_transfer,
    tangle_bracket,
)
from .polynomial import LaurentPolynomial
from .states import (
    Choice,
    InadequateDiagramWarning,
    LossReport,
    StateGraph,
    StateSummary,
    bridges,
    is_adequate,
    losses,
    reduced_edge_count,
    resolve_state,
    state_graph,
    state_summary,
    stoimenow_quantity,
)
from .twist import (
    TwistPartition,
    is_east_west_twist,
    twist_number,
    twist_number_tangle,
    twist_partition,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
