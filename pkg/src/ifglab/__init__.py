"""Generalized independence-friendly logic over finite structures.

Parse IFG formulas, evaluate them by trump semantics, compute their
meanings as double suits, and work inside IFG-cylindric set algebras.
"""

from .algebra import Element, classify, cyl, leq, neg, plus, times
from .enumeration import count_double_suits, count_suits, count_table, dsuit_carrier
from .model import Structure, ValuationSpace, make_structure, space
from .semantics import SentenceStatus, eval_minus, eval_plus, meaning, realize_double_suit, sentence_status
from .syntax import Formula, Schema, parse, parse_schema, pretty

__version__ = "0.1.0"

__all__ = [
    "Element", "classify", "cyl", "leq", "neg", "plus", "times",
    "count_double_suits", "count_suits", "count_table", "dsuit_carrier",
    "Structure", "ValuationSpace", "make_structure", "space",
    "SentenceStatus", "eval_minus", "eval_plus", "meaning", "realize_double_suit", "sentence_status",
    "Formula", "Schema", "parse", "parse_schema", "pretty",
]
