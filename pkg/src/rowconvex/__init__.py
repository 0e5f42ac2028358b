"""Straight-tableau bases and two-row straightening for row-convex shapes.

Every identity can be checked against the letterplace expansion
:func:`tableau_to_polynomial`, which is computed independently of the
straightening algorithms.
"""

from .basis import Character, apply_flag, character, coordinates, echelon_certificate, rank
from .branching import (
    Strip,
    branching_check,
    dominance_leq,
    enumerate_strips,
    filtration_ranks,
    quotient_shape,
    strip_from_columns,
)
from .core import (
    Alphabet,
    Letter,
    Shape,
    Tableau,
    column_word,
    deruyts,
    enumerate_row_standard,
    enumerate_shapes,
    enumerate_straight,
    frame_tableau,
    is_standard,
    is_straight,
    make_shape,
    shape_of,
    straight_filling,
    tableau,
)
from .errors import RowConvexError
from .letterplace import DIAG, DiagonalOrder, Polynomial, biproduct, initial_monomial, psi, tab, tableau_to_polynomial
from .ring import groebner_relations_deg2, interleave, relations_for_pair, sagbi_subduct
from .straightening import SyzygySpec, TableauSum, row_straighten, straighten_tableau, syzygy

__version__ = "0.1.0"
