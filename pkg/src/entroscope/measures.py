"""Language measures, quotients, and the precision/recall/coverage pipeline.

The pipeline follows one fixed order: determinize if needed, trim and
minimize, intersect the minimal automata, and only then short-circuit each
operand.  Short-circuiting before intersecting would make the loop-back
marker part of the compared languages, so it is structurally impossible
here: ``intersect`` rejects short-circuited inputs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from enum import Enum

from .automata import (
    Dfa,
    Nfa,
    as_dfa,
    count_words,
    determinize,
    intersect,
    is_deterministic,
    minimize,
    short_circuit,
    trim,
)
from .logs import EventLog, prefix_tree_acceptor
from .spectral import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    EigenResult,
    adjacency_matrix,
    perron_frobenius,
)


class MeasureKind(Enum):
    """Which language measure instantiates the quotient."""

    CARDINALITY = "cardinality"
    SHORT_CIRCUIT_EIGENVALUE = "short-circuit-eigenvalue"

    @classmethod
    def from_name(cls, name: str) -> MeasureKind:
        if name in ("card", "cardinality"):
            return cls.CARDINALITY
        if name in ("eig", "eigenvalue", "short-circuit-eigenvalue"):
            return cls.SHORT_CIRCUIT_EIGENVALUE
        raise ValueError(f"unknown measure kind: {name!r}")


@dataclass(frozen=True)
class AutomatonStats:
    """Size of one measured automaton plus its eigen solve, if any."""

    states: int
    transitions: int
    eigen: EigenResult | None = None


@dataclass(frozen=True)
class MeasureReport:
    """A computed quotient with its raw measures and solver diagnostics."""

    kind: MeasureKind
    numerator_value: float
    denominator_value: float
    value: float
    undefined: bool = False
    division_by_zero: bool = False
    converged: bool = True
    iterations: int = 0
    numerator: AutomatonStats | None = None
    denominator: AutomatonStats | None = None
    runtime_ms: float = 0.0


def _measure(d: Dfa, kind: MeasureKind, tol: float, max_iter: int) -> tuple[float, AutomatonStats]:
    if kind is MeasureKind.CARDINALITY:
        counted = minimize(d)
        return float(count_words(counted)), AutomatonStats(
            counted.state_count, len(counted.transitions)
        )
    circuited = short_circuit(minimize(d))
    result = perron_frobenius(adjacency_matrix(circuited), tol, max_iter)
    return result.value, AutomatonStats(
        circuited.state_count, len(circuited.transitions), result
    )


def eig_short_circuit_measure(
    d: Dfa, tol: float = DEFAULT_TOLERANCE, max_iter: int = DEFAULT_MAX_ITERATIONS
) -> float:
    """Dominant eigenvalue of the short-circuited minimal automaton of ``L(d)``."""
    if d.short_circuited:
        raise ValueError("input is already short-circuited")
    value, _ = _measure(as_dfa(trim(d)), MeasureKind.SHORT_CIRCUIT_EIGENVALUE, tol, max_iter)
    return value


def cardinality_measure(d: Dfa) -> float:
    """Exact word count of a finite language, as a real."""
    return float(count_words(d))


def _assemble(
    kind: MeasureKind,
    numerator: tuple[float, AutomatonStats],
    denominator: tuple[float, AutomatonStats],
    runtime_ms: float,
) -> MeasureReport:
    num_value, num_stats = numerator
    den_value, den_stats = denominator
    undefined = division_by_zero = False
    if den_value > 0.0:
        value = num_value / den_value
    elif num_value == 0.0:
        value, undefined = 0.0, True
    else:
        value, division_by_zero = math.inf, True
    solves = [s.eigen for s in (num_stats, den_stats) if s.eigen is not None]
    return MeasureReport(
        kind=kind,
        numerator_value=num_value,
        denominator_value=den_value,
        value=value,
        undefined=undefined,
        division_by_zero=division_by_zero,
        converged=all(s.converged for s in solves),
        iterations=sum(s.iterations for s in solves),
        numerator=num_stats,
        denominator=den_stats,
        runtime_ms=runtime_ms,
    )


def _prepare(a: Nfa) -> Dfa:
    return minimize(as_dfa(a) if is_deterministic(a) else determinize(a))


def quotient(
    kind: MeasureKind,
    numerator: Dfa,
    denominator: Dfa,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
) -> MeasureReport:
    """Measure of the first language over the measure of the second."""
    started = time.perf_counter()
    num = _measure(_prepare(numerator), kind, tol, max_iter)
    den = _measure(_prepare(denominator), kind, tol, max_iter)
    return _assemble(kind, num, den, (time.perf_counter() - started) * 1000.0)


def _pair_reports(
    ret: Nfa,
    rel: Nfa,
    kind: MeasureKind,
    tol: float,
    max_iter: int,
    want_precision: bool,
    want_recall: bool,
) -> tuple[MeasureReport | None, MeasureReport | None]:
    started = time.perf_counter()
    m_ret = _prepare(ret)
    m_rel = _prepare(rel)
    shared = _measure(intersect(m_ret, m_rel), kind, tol, max_iter)
    precision_report = recall_report = None
    if want_precision:
        den = _measure(m_ret, kind, tol, max_iter)
        runtime = (time.perf_counter() - started) * 1000.0
        precision_report = _assemble(kind, shared, den, runtime)
    if want_recall:
        den = _measure(m_rel, kind, tol, max_iter)
        runtime = (time.perf_counter() - started) * 1000.0
        recall_report = _assemble(kind, shared, den, runtime)
    return precision_report, recall_report


def precision(
    spec: Nfa,
    log: EventLog,
    kind: MeasureKind = MeasureKind.SHORT_CIRCUIT_EIGENVALUE,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
) -> MeasureReport:
    """Measure of the shared behaviour over the specified behaviour.

    An empty specification language yields an undefined-flagged report; the
    cardinality kind additionally rejects infinite specification languages.
    """
    report, _ = _pair_reports(
        spec, prefix_tree_acceptor(log), kind, tol, max_iter, True, False
    )
    assert report is not None
    return report


def recall(
    spec: Nfa,
    log: EventLog,
    kind: MeasureKind = MeasureKind.SHORT_CIRCUIT_EIGENVALUE,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
) -> MeasureReport:
    """Measure of the shared behaviour over the recorded behaviour."""
    _, report = _pair_reports(
        spec, prefix_tree_acceptor(log), kind, tol, max_iter, False, True
    )
    assert report is not None
    return report


def precision_and_recall(
    ret: Nfa,
    rel: Nfa,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
) -> tuple[MeasureReport, MeasureReport]:
    """Eigenvalue precision and recall of ``ret`` against ``rel``.

    The intersection automaton is built and measured once and shared by
    both quotients.
    """
    kind = MeasureKind.SHORT_CIRCUIT_EIGENVALUE
    pr, rc = _pair_reports(ret, rel, kind, tol, max_iter, True, True)
    assert pr is not None and rc is not None
    return pr, rc


def coverage(
    x: Nfa,
    y: Nfa,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
) -> MeasureReport:
    """Share of the first system's behaviour that the second one covers.

    Equals 1.0 exactly when ``L(x)`` is contained in ``L(y)``; an empty
    ``L(x)`` is reported as undefined.
    """
    report, _ = _pair_reports(
        x, y, MeasureKind.SHORT_CIRCUIT_EIGENVALUE, tol, max_iter, True, False
    )
    assert report is not None
    return report
