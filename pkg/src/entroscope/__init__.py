"""Entropy-based behavioural quotients between finite automata and event logs."""

from .automata import (
    Dfa,
    InfiniteLanguageError,
    Nfa,
    accepts,
    as_dfa,
    canonicalize,
    count_words,
    count_words_of_length,
    determinize,
    empty_language_automaton,
    has_finite_language,
    intersect,
    is_deterministic,
    is_ergodic,
    is_trim,
    minimize,
    short_circuit,
    silent_closure,
    trim,
)
from .labels import CHI, SILENT, Label, label
from .logs import (
    EventLog,
    Trace,
    distinct_language,
    log_alphabet,
    multiplicity,
    prefix_tree_acceptor,
    union,
)
from .measures import (
    AutomatonStats,
    MeasureKind,
    MeasureReport,
    cardinality_measure,
    coverage,
    eig_short_circuit_measure,
    precision,
    precision_and_recall,
    quotient,
    recall,
)
from .spectral import (
    EigenResult,
    SparseMatrix,
    adjacency_matrix,
    entropy,
    perron_frobenius,
)

__all__ = [
    "CHI",
    "SILENT",
    "AutomatonStats",
    "Dfa",
    "EigenResult",
    "EventLog",
    "InfiniteLanguageError",
    "Label",
    "MeasureKind",
    "MeasureReport",
    "Nfa",
    "SparseMatrix",
    "Trace",
    "accepts",
    "adjacency_matrix",
    "as_dfa",
    "canonicalize",
    "cardinality_measure",
    "count_words",
    "count_words_of_length",
    "coverage",
    "determinize",
    "distinct_language",
    "eig_short_circuit_measure",
    "empty_language_automaton",
    "entropy",
    "has_finite_language",
    "intersect",
    "is_deterministic",
    "is_ergodic",
    "is_trim",
    "label",
    "log_alphabet",
    "minimize",
    "multiplicity",
    "perron_frobenius",
    "precision",
    "precision_and_recall",
    "prefix_tree_acceptor",
    "quotient",
    "recall",
    "short_circuit",
    "silent_closure",
    "trim",
    "union",
]
