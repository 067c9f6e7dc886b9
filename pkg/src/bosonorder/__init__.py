"""Exact reordering of boson ladder-operator expressions.

Normal, anti-normal, and general s-ordered forms via an exact contraction
calculus, cross-checked by a commutator-rewriting oracle and truncated
Fock-space matrices.
"""

from .combinatorics import BellPoly, StirlingTable, bell_generating_series, bell_number, bell_poly, stirling2
from .exact import DEFAULT_SERIES_ORDER, FormalSeries, MultiPoly
from .fock import identity_check, realize
from .got import Block, BlockSequence, contraction_factor, convert_ordering, count_contraction_sets, got_transform, word_blocks
from .identities import (
    OperatorSeries,
    antinormal_bell_form,
    exp_number_antinormal,
    exp_number_normal,
    number_power_antinormal,
    number_power_normal,
)
from .operators import (
    ANTINORMAL,
    NORMAL,
    WEYL,
    Letter,
    Ordering,
    OrderedPolynomial,
    Word,
    expr_combine,
    vacuum_expectation,
    word,
    word_antinormal_order,
    word_normal_order,
)
from .parser import Ast, lower, parse
from .render import render

__all__ = [
    "ANTINORMAL",
    "Ast",
    "BellPoly",
    "Block",
    "BlockSequence",
    "DEFAULT_SERIES_ORDER",
    "FormalSeries",
    "Letter",
    "MultiPoly",
    "NORMAL",
    "OperatorSeries",
    "OrderedPolynomial",
    "Ordering",
    "StirlingTable",
    "WEYL",
    "Word",
    "antinormal_bell_form",
    "bell_generating_series",
    "bell_number",
    "bell_poly",
    "contraction_factor",
    "convert_ordering",
    "count_contraction_sets",
    "exp_number_antinormal",
    "exp_number_normal",
    "expr_combine",
    "got_transform",
    "identity_check",
    "lower",
    "number_power_antinormal",
    "number_power_normal",
    "parse",
    "realize",
    "render",
    "stirling2",
    "vacuum_expectation",
    "word",
    "word_antinormal_order",
    "word_blocks",
    "word_normal_order",
]

__version__ = "0.1.0"
