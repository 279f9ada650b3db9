"""Sparse adjacency matrices and dominant-eigenvalue computation.

The solver is a power iteration on the diagonally shifted matrix ``M + I``.
The shift makes every irreducible non-negative matrix primitive, so the
iteration cannot oscillate on periodic structures such as cycle automata;
the reported value is ``rho(M) = rho(M + I) - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .automata import Dfa

#: Relative Rayleigh-quotient change below which a solve counts as converged.
DEFAULT_TOLERANCE = 1e-9

#: Iteration cap; non-convergence is flagged, never raised.
DEFAULT_MAX_ITERATIONS = 300_000


@dataclass(frozen=True)
class SparseMatrix:
    """Square non-negative integer matrix in coordinate form.

    Absent coordinates are zero; stored weights are at least one and each
    ``(row, col)`` pair appears at most once.
    """

    order: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))
        if self.order < 1:
            raise ValueError("invariant violated: order must be at least 1")
        seen: set[tuple[int, int]] = set()
        for row, col, weight in self.entries:
            if not (0 <= row < self.order and 0 <= col < self.order):
                raise ValueError("invariant violated: entry index out of range")
            if weight < 1:
                raise ValueError("invariant violated: entry weight must be positive")
            if (row, col) in seen:
                raise ValueError("invariant violated: duplicate entry coordinates")
            seen.add((row, col))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> SparseMatrix:
        """Build from a dense row-major listing (zeros dropped)."""
        entries = tuple(
            (i, j, int(w))
            for i, row in enumerate(rows)
            for j, w in enumerate(row)
            if w
        )
        return cls(len(rows), entries)

    def to_rows(self) -> list[list[int]]:
        dense = [[0] * self.order for _ in range(self.order)]
        for row, col, weight in self.entries:
            dense[row][col] = weight
        return dense


@dataclass(frozen=True)
class EigenResult:
    """Dominant-eigenvalue estimate plus solver diagnostics."""

    value: float
    iterations: int
    converged: bool
    residual: float


def adjacency_matrix(d: Dfa) -> SparseMatrix:
    """Count of labels moving state ``i`` to state ``j``, as a sparse matrix."""
    weights: dict[tuple[int, int], int] = {}
    for p, _, q in d.transitions:
        weights[(p, q)] = weights.get((p, q), 0) + 1
    return SparseMatrix(
        d.state_count, tuple((p, q, w) for (p, q), w in weights.items())
    )


def perron_frobenius(
    m: SparseMatrix,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
) -> EigenResult:
    """Spectral radius of a non-negative matrix by shifted power iteration.

    Starts from the all-ones vector, so runs are deterministic.  On hitting
    the iteration cap the best estimate is returned with ``converged=False``
    rather than raising.
    """
    if not m.entries:
        return EigenResult(0.0, 0, True, 0.0)
    rows = np.fromiter((e[0] for e in m.entries), dtype=np.intp)
    cols = np.fromiter((e[1] for e in m.entries), dtype=np.intp)
    weights = np.fromiter((e[2] for e in m.entries), dtype=np.float64)

    x = np.full(m.order, 1.0 / math.sqrt(m.order))
    rayleigh = math.inf
    residual = math.inf
    for iteration in range(1, max_iter + 1):
        # y = (M + I) x; the shift keeps the iteration primitive.
        y = x + np.bincount(rows, weights=weights * x[cols], minlength=m.order)
        estimate = float(x @ y)
        change = abs(estimate - rayleigh) / estimate
        # The Rayleigh quotient can plateau transiently on non-symmetric
        # matrices, so convergence also demands a small eigen-residual.
        residual = max(change, float(np.linalg.norm(y - estimate * x)) / estimate)
        rayleigh = estimate
        x = y / np.linalg.norm(y)
        if residual <= tol:
            return EigenResult(rayleigh - 1.0, iteration, True, residual)
    return EigenResult(rayleigh - 1.0, max_iter, False, residual)


def entropy(d: Dfa) -> float:
    """Base-2 logarithm of the dominant adjacency eigenvalue.

    Callers are expected to pass an ergodic (short-circuited) automaton with
    a nonempty language; the empty language has no entropy.
    """
    result = perron_frobenius(adjacency_matrix(d))
    if result.value <= 0.0:
        raise ValueError("entropy undefined: empty language")
    return math.log2(result.value)
