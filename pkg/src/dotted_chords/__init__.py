"""Exact algebra of dotted chord diagrams: two Hopf structures, the
quasiplanar Wick map, and twist-data checks for weight systems."""

from .diagram import (
    CHORD,
    DOT,
    EMPTY,
    Diagram,
    DiagramError,
    IntersectionGraph,
    concat,
    concat_factorize,
    enumerate_diagrams,
    intersection_graph,
    is_connected,
    is_quasiplanar,
    is_regular,
    iter_diagrams,
    parse,
    pretty,
    render,
)
from .formal_sum import FormalSum, TensorSum
from .hopf_concat import antipode, counit, delta, mu, unit
from .hopf_shuffle import convolve, deconcat, h_map, shuffle, shuffle_antipode
from .weights import (
    FourTContext,
    four_t_obstruction,
    framing_check,
    standard_context,
    twist_matrix,
)
from .wick import (
    enumerate_cq,
    wick,
    wick_basis_decompose,
    wick_closed,
    wick_inductive,
    wick_prime,
    wick_product_expansion,
)

__version__ = "0.1.0"
