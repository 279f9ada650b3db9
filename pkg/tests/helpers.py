"""Shared test machinery: independent language oracles and random generators.

The oracles here deliberately avoid the library's own algorithms: NFA
acceptance is a plain breadth-first replay over raw transition triples, so
determinization, minimization, and intersection can be checked against it.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from entroscope import Dfa, EventLog, Label, Nfa, Trace, label
from entroscope.labels import SILENT, sort_key

ABC = [label("a"), label("b"), label("c")]


def _closure(a: Nfa, states: set[int]) -> frozenset[int]:
    seen = set(states)
    queue = deque(seen)
    while queue:
        p = queue.popleft()
        for src, lab, dst in a.transitions:
            if src == p and lab == SILENT and dst not in seen:
                seen.add(dst)
                queue.append(dst)
    return frozenset(seen)


def nfa_accepts(a: Nfa, word: tuple[Label, ...]) -> bool:
    """Oracle acceptance: subset replay with silent closure, no powerset DFA."""
    current = _closure(a, {a.start})
    for lab in word:
        step = {dst for src, lab2, dst in a.transitions if src in current and lab2 == lab}
        current = _closure(a, step)
        if not current:
            return False
    return bool(current & a.accepts)


def bounded_words(alphabet: list[Label], max_len: int):
    """All words over ``alphabet`` of length 0..max_len, shortest first."""
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def bounded_language_nfa(a: Nfa, alphabet: list[Label], max_len: int) -> set[tuple[Label, ...]]:
    """Accepted word set up to ``max_len`` via subset replay over the word tree."""
    accepted: set[tuple[Label, ...]] = set()
    start = _closure(a, {a.start})
    frontier: list[tuple[tuple[Label, ...], frozenset[int]]] = [((), start)]
    if start & a.accepts:
        accepted.add(())
    for _ in range(max_len):
        nxt = []
        for word, states in frontier:
            for lab in alphabet:
                step = {dst for src, lab2, dst in a.transitions if src in states and lab2 == lab}
                if not step:
                    continue
                closed = _closure(a, step)
                grown = word + (lab,)
                if closed & a.accepts:
                    accepted.add(grown)
                nxt.append((grown, closed))
        frontier = nxt
    return accepted


def bounded_language_dfa(d: Dfa, max_len: int) -> set[tuple[Label, ...]]:
    """Accepted word set up to ``max_len`` by replaying the partial map."""
    accepted: set[tuple[Label, ...]] = set()
    frontier: list[tuple[tuple[Label, ...], int]] = [((), d.start)]
    if d.start in d.accepts:
        accepted.add(())
    for _ in range(max_len):
        nxt = []
        for word, state in frontier:
            for (src, lab), dst in d.step.items():
                if src != state:
                    continue
                grown = word + (lab,)
                if dst in d.accepts:
                    accepted.add(grown)
                nxt.append((grown, dst))
        frontier = nxt
    return accepted


def random_nfa(
    rng: random.Random,
    max_states: int = 8,
    alphabet_size: int = 3,
    allow_silent: bool = True,
) -> Nfa:
    n = rng.randint(1, max_states)
    alphabet = ABC[:alphabet_size]
    edge_count = rng.randint(0, 2 * n)
    labels = list(alphabet) + ([SILENT] if allow_silent else [])
    transitions = set()
    for _ in range(edge_count):
        transitions.add((rng.randrange(n), rng.choice(labels), rng.randrange(n)))
    accepts = frozenset(q for q in range(n) if rng.random() < 0.35)
    return Nfa(n, frozenset(alphabet), frozenset(transitions), 0, accepts)


def random_dfa(
    rng: random.Random,
    max_states: int = 8,
    alphabet_size: int = 3,
    move_probability: float = 0.55,
) -> Dfa:
    n = rng.randint(1, max_states)
    alphabet = ABC[:alphabet_size]
    transitions = set()
    for p in range(n):
        for lab in alphabet:
            if rng.random() < move_probability:
                transitions.add((p, lab, rng.randrange(n)))
    accepts = frozenset(q for q in range(n) if rng.random() < 0.35)
    return Dfa(n, frozenset(alphabet), frozenset(transitions), 0, accepts)


def random_trace(rng: random.Random, alphabet: list[Label], max_len: int = 5) -> Trace:
    return Trace(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len))))


def random_log(
    rng: random.Random,
    alphabet: list[Label] | None = None,
    max_traces: int = 5,
    max_len: int = 5,
) -> EventLog:
    alphabet = alphabet or ABC
    traces = [
        random_trace(rng, alphabet, max_len) for _ in range(rng.randint(0, max_traces))
    ]
    return EventLog(traces)


def word_log(words: list[str]) -> EventLog:
    """Log of single-character-event traces, one instance per word."""
    return EventLog([Trace.of(*word) for word in words])


def same_matrix_up_to_permutation(x: list[list[int]], y: list[list[int]]) -> bool:
    n = len(x)
    if len(y) != n:
        return False
    for perm in itertools.permutations(range(n)):
        if all(x[i][j] == y[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            return True
    return False


def sorted_words(words) -> list[tuple[Label, ...]]:
    return sorted(words, key=lambda w: (len(w), [sort_key(lab) for lab in w]))
