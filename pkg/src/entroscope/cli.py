"""Command-line driver for measurements, conversions, and experiment families.

Exit codes: 0 success (including flagged non-convergence, which warns on
stderr), 2 parse/usage errors on input files, 3 measure not applicable to
the input (e.g. cardinality of an infinite language).
"""

from __future__ import annotations

import argparse
import itertools
import math
import os
import sys
from pathlib import Path

from .automata import (
    Dfa,
    InfiniteLanguageError,
    Nfa,
    as_dfa,
    count_words,
    determinize,
    has_finite_language,
    is_deterministic,
    is_ergodic,
    is_trim,
    minimize,
    short_circuit,
)
from .formats import (
    FormatError,
    document_name,
    export_dot,
    read_automaton,
    read_log,
    read_xes,
    write_automaton,
    write_log,
    write_report,
)
from .labels import label
from .logs import EventLog, Trace, distinct_language, prefix_tree_acceptor
from .measures import (
    MeasureKind,
    MeasureReport,
    coverage,
    eig_short_circuit_measure,
    precision,
    recall,
)
from .spectral import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, adjacency_matrix, perron_frobenius

MAX_ITER_ENV = "ENTROSCOPE_MAX_ITER"

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INAPPLICABLE = 3


def _add_measure_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--measure", choices=("eig", "card"), default="eig")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    parser.add_argument("--max-iter", type=int, default=None)
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument("--seed", type=int, default=None, help="reserved; no effect")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entroscope",
        description="Entropy-based precision, recall, and coverage of automata and event logs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("precision", help="precision of a specification w.r.t. a log")
    p.add_argument("spec", type=Path)
    p.add_argument("log", type=Path)
    _add_measure_options(p)

    p = sub.add_parser("recall", help="recall of a specification w.r.t. a log")
    p.add_argument("spec", type=Path)
    p.add_argument("log", type=Path)
    _add_measure_options(p)

    p = sub.add_parser("coverage", help="coverage of the first automaton by the second")
    p.add_argument("x", type=Path)
    p.add_argument("y", type=Path)
    _add_measure_options(p)

    for name, description in (
        ("eigenvalue", "short-circuit eigenvalue measure of an automaton's language"),
        ("entropy", "topological entropy (base-2 log of the eigenvalue measure)"),
        ("cardinality", "exact word count of a finite language"),
    ):
        p = sub.add_parser(name, help=description)
        p.add_argument("automaton", type=Path)
        _add_measure_options(p)

    p = sub.add_parser("convert", help="convert between formats")
    p.add_argument("input", type=Path)
    p.add_argument("--to", choices=("dot", "log", "automaton"), required=True)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("inspect", help="structural statistics of a file")
    p.add_argument("input", type=Path)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("family", help="generate a synthetic experiment family")
    p.add_argument(
        "name", choices=("bounded-repeat", "kleene", "permutations", "parallel-block")
    )
    p.add_argument("--x", type=int, default=None, help="repeat bound for bounded-repeat")
    p.add_argument("--count", type=int, default=None, help="permutation count")
    p.add_argument("--out", type=Path, default=Path("."))
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _load_automaton(path: Path) -> Nfa:
    return read_automaton(path.read_text(encoding="utf-8"))


def _load_log(path: Path) -> EventLog:
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("<"):
        return read_xes(text)
    return read_log(text)


def _sniff(path: Path) -> tuple[str, Nfa | EventLog]:
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return "automaton", read_automaton(text)
    if stripped.startswith("<"):
        return "log", read_xes(text)
    return "log", read_log(text)


def _max_iter(args: argparse.Namespace) -> int:
    if args.max_iter is not None:
        return args.max_iter
    env = os.environ.get(MAX_ITER_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"warning: ignoring non-integer {MAX_ITER_ENV}={env!r}", file=sys.stderr)
    return DEFAULT_MAX_ITERATIONS


def _print_report(name: str, report: MeasureReport, args: argparse.Namespace) -> None:
    if not report.converged:
        print(
            f"warning: eigenvalue computation did not converge within "
            f"{report.iterations} iterations; using the estimate",
            file=sys.stderr,
        )
    if report.undefined:
        print("warning: quotient is undefined (0/0); reporting 0", file=sys.stderr)
    if args.format == "text":
        _emit(f"{name} = {report.value:.3f}\n", args.out)
    else:
        _emit(write_report(report, args.format), args.out)


def _run_quotient_command(args: argparse.Namespace) -> int:
    kind = MeasureKind.from_name(args.measure)
    max_iter = _max_iter(args)
    if args.command in ("precision", "recall"):
        spec = _load_automaton(args.spec)
        log = _load_log(args.log)
        compute = precision if args.command == "precision" else recall
        report = compute(spec, log, kind, args.tol, max_iter)
    else:
        x = _load_automaton(args.x)
        y = _load_automaton(args.y)
        if kind is not MeasureKind.SHORT_CIRCUIT_EIGENVALUE:
            print("error: coverage is defined over the eigenvalue measure", file=sys.stderr)
            return EXIT_INAPPLICABLE
        report = coverage(x, y, args.tol, max_iter)
    _print_report(args.command, report, args)
    return EXIT_OK


def _run_scalar_command(args: argparse.Namespace) -> int:
    a = _load_automaton(args.automaton)
    d = as_dfa(a) if is_deterministic(a) else determinize(a)
    if args.command == "cardinality":
        value = count_words(d)
        _emit(f"cardinality = {value}\n", args.out)
        return EXIT_OK
    sc = short_circuit(minimize(d))
    result = perron_frobenius(adjacency_matrix(sc), args.tol, _max_iter(args))
    if not result.converged:
        print("warning: eigenvalue computation did not converge; using the estimate", file=sys.stderr)
    if args.command == "eigenvalue":
        _emit(f"eigenvalue = {result.value:.3f}\n", args.out)
        return EXIT_OK
    if result.value <= 0.0:
        print("error: entropy undefined for the empty language", file=sys.stderr)
        return EXIT_INAPPLICABLE
    _emit(f"entropy = {math.log2(result.value):.3f}\n", args.out)
    return EXIT_OK


def _run_convert(args: argparse.Namespace) -> int:
    kind, value = _sniff(args.input)
    if args.to == "dot":
        automaton = value if kind == "automaton" else prefix_tree_acceptor(value)
        _emit(export_dot(automaton), args.out)
    elif args.to == "log":
        if kind != "log":
            print("error: cannot convert an automaton to a log", file=sys.stderr)
            return EXIT_PARSE
        _emit(write_log(value), args.out)
    else:
        if kind == "automaton":
            _emit(write_automaton(value), args.out)
        else:
            _emit(write_automaton(prefix_tree_acceptor(value)), args.out)
    return EXIT_OK


def _run_inspect(args: argparse.Namespace) -> int:
    kind, value = _sniff(args.input)
    lines = []
    if kind == "automaton":
        name = document_name(args.input.read_text(encoding="utf-8"))
        if name:
            lines.append(f"name: {name}")
        deterministic = is_deterministic(value)
        d = as_dfa(value) if deterministic else determinize(value)
        lines += [
            "type: automaton",
            f"states: {value.state_count}",
            f"transitions: {len(value.transitions)}",
            f"alphabet: {len(value.alphabet)}",
            f"deterministic: {str(deterministic).lower()}",
            f"trim: {str(is_trim(value)).lower()}",
            f"ergodic: {str(is_ergodic(value)).lower()}",
            f"finite_language: {str(has_finite_language(d)).lower()}",
        ]
    else:
        lines += [
            "type: log",
            f"distinct_traces: {len(distinct_language(value))}",
            f"total_traces: {value.total_count}",
        ]
    _emit("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def _permutation_words(count: int) -> list[str]:
    seeds = ["abcde", "abced", "abdec", "abdce", "abecd"]
    rest = sorted(
        "".join(p) for p in itertools.permutations("abcde") if "".join(p) not in seeds
    )
    return (seeds + rest)[:count]


def _word_log(words: list[str]) -> EventLog:
    return EventLog([Trace.of(*word) for word in words])


def _bounded_repeat_automaton(x: int) -> Dfa:
    a, b = label("a"), label("b")
    final = x + 1
    transitions = {(i, b, final) for i in range(x + 1)}
    transitions |= {(i, a, i + 1) for i in range(x)}
    return Dfa(x + 2, frozenset({a, b}), frozenset(transitions), 0, frozenset({final}))


def _kleene_automaton() -> Dfa:
    a, b = label("a"), label("b")
    return Dfa(
        2, frozenset({a, b}), frozenset({(0, a, 0), (0, b, 1)}), 0, frozenset({1})
    )


def _parallel_block_automaton() -> Dfa:
    symbols = [label(c) for c in "abcde"]
    subsets = {frozenset(): 0}
    transitions = set()
    queue = [frozenset()]
    while queue:
        done = queue.pop()
        here = subsets[done]
        for sym in symbols:
            if sym in done:
                continue
            target = done | {sym}
            if target not in subsets:
                subsets[target] = len(subsets)
                queue.append(target)
            transitions.add((here, sym, subsets[target]))
    return Dfa(
        len(subsets),
        frozenset(symbols),
        frozenset(transitions),
        0,
        frozenset({subsets[frozenset(symbols)]}),
    )


def _run_family(args: argparse.Namespace) -> int:
    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def save(name: str, text: str) -> None:
        path = out_dir / name
        path.write_text(text, encoding="utf-8")
        written.append(path)

    if args.name == "bounded-repeat":
        x = 2 if args.x is None else args.x
        if not 2 <= x <= 20:
            print("error: --x must be in [2..20]", file=sys.stderr)
            return EXIT_PARSE
        save(f"bounded_repeat_{x:02d}.json", write_automaton(_bounded_repeat_automaton(x)))
        save("bounded_repeat_log.log", write_log(_word_log(["b", "ab", "aab"])))
    elif args.name == "kleene":
        save("kleene.json", write_automaton(_kleene_automaton()))
    elif args.name == "permutations":
        count = 120 if args.count is None else args.count
        if not 5 <= count <= 120:
            print("error: --count must be in [5..120]", file=sys.stderr)
            return EXIT_PARSE
        words = _permutation_words(count)
        save(
            f"permutations_{count:03d}.json",
            write_automaton(minimize(prefix_tree_acceptor(_word_log(words)))),
        )
        save("permutations_log.log", write_log(_word_log(_permutation_words(5))))
    else:
        save("parallel_block.json", write_automaton(_parallel_block_automaton()))
    for path in written:
        print(path)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command in ("precision", "recall", "coverage"):
            return _run_quotient_command(args)
        if args.command in ("eigenvalue", "entropy", "cardinality"):
            return _run_scalar_command(args)
        if args.command == "convert":
            return _run_convert(args)
        if args.command == "inspect":
            return _run_inspect(args)
        return _run_family(args)
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfiniteLanguageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE


if __name__ == "__main__":
    sys.exit(main())
