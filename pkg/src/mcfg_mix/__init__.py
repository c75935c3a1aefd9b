"""An MCFG for the language O2, with a chart recognizer, a constructive
splitter following the inductive argument, and the exact path geometry
behind its geometric case.
"""

from .chart import chart_stats, derive, parse, recognize
from .grammar import (
    DerivationNode,
    Grammar,
    Lit,
    Predicate,
    Rule,
    Var,
    mix_o2_grammar,
    parse_grammar,
    validate_grammar,
    yield_of,
)
from .language import displacement, enumerate_o2, is_mix, is_o2, lift, reduce, sample_o2
from .splitter import (
    SplitDecision,
    SplitError,
    brute_force_split,
    derive_constructive,
    derive_string,
    find_split,
    validate_decision,
)

__version__ = "0.1.0"

__all__ = [
    "DerivationNode", "Grammar", "Lit", "Predicate", "Rule", "SplitDecision", "SplitError", "Var",
    "brute_force_split", "chart_stats", "derive", "derive_constructive", "derive_string",
    "displacement", "enumerate_o2", "find_split", "is_mix", "is_o2", "lift", "mix_o2_grammar",
    "parse", "parse_grammar", "recognize", "reduce", "sample_o2", "validate_decision",
    "validate_grammar", "yield_of",
]
