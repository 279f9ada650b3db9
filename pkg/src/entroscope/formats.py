"""External representations: automaton and log documents, XES, DOT, reports.

The automaton document is JSON; the log document is plain text with one
trace per line.  The silent marker is encoded as a null (or absent) label
field, never as a string, and the short-circuit marker is never serialised
at all (DOT excepted, for inspection).
"""

from __future__ import annotations

import csv
import io
import json
import math
import xml.etree.ElementTree as ElementTree
from typing import Any

from .automata import Nfa
from .labels import CHI, SILENT, Label, label, sort_key
from .logs import EventLog, Trace
from .measures import MeasureKind, MeasureReport

#: Reserved label string, rejected everywhere in user input.
RESERVED_LABEL = "__chi__"

_KIND_TOKENS = {
    MeasureKind.CARDINALITY: "card",
    MeasureKind.SHORT_CIRCUIT_EIGENVALUE: "eig",
}


class FormatError(ValueError):
    """Malformed document; the message carries the offending position."""


def _fail(where: str, problem: str) -> None:
    raise FormatError(f"{where}: {problem}")


def _label_string(raw: Any, where: str) -> str:
    if not isinstance(raw, str) or not raw:
        _fail(where, "label must be a nonempty string")
    if raw == RESERVED_LABEL:
        _fail(where, f"{RESERVED_LABEL!r} is reserved")
    return raw


def read_automaton(text: str) -> Nfa:
    """Parse an automaton document; malformed input raises FormatError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        _fail("document", "expected a JSON object")
    unknown = set(doc) - {"name", "alphabet", "states", "start", "accepts", "transitions"}
    if unknown:
        _fail("document", f"unknown fields: {sorted(unknown)}")
    if "name" in doc and not isinstance(doc["name"], str):
        _fail("name", "must be a string")

    raw_alphabet = doc.get("alphabet")
    if not isinstance(raw_alphabet, list):
        _fail("alphabet", "must be a list of label strings")
    alphabet: list[Label] = []
    for i, raw in enumerate(raw_alphabet):
        lab = label(_label_string(raw, f"alphabet[{i}]"))
        if lab in alphabet:
            _fail(f"alphabet[{i}]", f"duplicate label {raw!r}")
        alphabet.append(lab)

    raw_states = doc.get("states")
    names: dict[str, int] = {}
    if isinstance(raw_states, bool):
        _fail("states", "must be a state count or a list of state names")
    if isinstance(raw_states, int):
        state_count = raw_states
    elif isinstance(raw_states, list):
        for i, name in enumerate(raw_states):
            if not isinstance(name, str):
                _fail(f"states[{i}]", "state name must be a string")
            if name in names:
                _fail(f"states[{i}]", f"duplicate state name {name!r}")
            names[name] = i
        state_count = len(raw_states)
    else:
        _fail("states", "must be a state count or a list of state names")
    if state_count < 1:
        _fail("states", "automaton needs at least one state")

    def state_ref(raw: Any, where: str) -> int:
        if isinstance(raw, bool):
            _fail(where, "state reference must be an index or a name")
        if isinstance(raw, int):
            if not 0 <= raw < state_count:
                _fail(where, f"state index {raw} out of range 0..{state_count - 1}")
            return raw
        if isinstance(raw, str):
            if raw not in names:
                _fail(where, f"unknown state name {raw!r}")
            return names[raw]
        _fail(where, "state reference must be an index or a name")
        raise AssertionError

    start = state_ref(doc.get("start"), "start")
    raw_accepts = doc.get("accepts")
    if not isinstance(raw_accepts, list):
        _fail("accepts", "must be a list of states")
    accepts = frozenset(
        state_ref(raw, f"accepts[{i}]") for i, raw in enumerate(raw_accepts)
    )

    raw_transitions = doc.get("transitions")
    if not isinstance(raw_transitions, list):
        _fail("transitions", "must be a list of objects")
    transitions = set()
    alphabet_set = frozenset(alphabet)
    for i, raw in enumerate(raw_transitions):
        where = f"transitions[{i}]"
        if not isinstance(raw, dict):
            _fail(where, "must be an object with from/label/to")
        extra = set(raw) - {"from", "label", "to"}
        if extra:
            _fail(where, f"unknown fields: {sorted(extra)}")
        source = state_ref(raw.get("from"), f"{where}.from")
        target = state_ref(raw.get("to"), f"{where}.to")
        raw_label = raw.get("label")
        if raw_label is None:
            lab = SILENT
        else:
            lab = label(_label_string(raw_label, f"{where}.label"))
            if lab not in alphabet_set:
                _fail(f"{where}.label", f"{raw_label!r} is not in the alphabet")
        transitions.add((source, lab, target))
    return Nfa(state_count, alphabet_set, frozenset(transitions), start, accepts)


def write_automaton(a: Nfa, name: str | None = None) -> str:
    """Serialise an automaton document (reads back identically)."""
    if a.short_circuited or CHI in a.alphabet:
        raise FormatError("document: short-circuited automata cannot be serialised")
    doc: dict[str, Any] = {}
    if name:
        doc["name"] = name
    doc["alphabet"] = [lab.display for lab in sorted(a.alphabet, key=sort_key)]
    doc["states"] = a.state_count
    doc["start"] = a.start
    doc["accepts"] = sorted(a.accepts)
    doc["transitions"] = [
        {"from": p, "label": None if lab == SILENT else lab.display, "to": q}
        for p, lab, q in sorted(
            a.transitions, key=lambda t: (t[0], t[1] != SILENT, sort_key(t[1]), t[2])
        )
    ]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def document_name(text: str) -> str | None:
    """The optional name field of an automaton document, if parseable."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return None
    if isinstance(doc, dict) and isinstance(doc.get("name"), str):
        return doc["name"]
    return None


def read_log(text: str) -> EventLog:
    """Parse the line-based log format.

    One trace per line, events separated by single spaces; a fully empty
    line is the empty trace and ``#`` starts a comment line.
    """
    traces: list[Trace] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            continue
        if line == "":
            traces.append(Trace(()))
            continue
        events = []
        for pos, token in enumerate(line.split(" "), start=1):
            if token == "":
                _fail(f"line {lineno}, event {pos}", "empty event name (double space?)")
            if token == RESERVED_LABEL:
                _fail(f"line {lineno}, event {pos}", f"{RESERVED_LABEL!r} is reserved")
            events.append(label(token))
        traces.append(Trace(tuple(events)))
    return EventLog(traces)


def write_log(log: EventLog) -> str:
    """Serialise a log; repeated lines encode multiplicities."""
    lines = []
    for trace in sorted(
        log.entries, key=lambda t: tuple(sort_key(lab) for lab in t)
    ):
        line = " ".join(lab.display for lab in trace)
        lines.extend([line] * log.entries[trace])
    return "".join(line + "\n" for line in lines)


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def read_xes(text: str) -> EventLog:
    """Minimal XES reader: traces, events, and their concept:name strings."""
    try:
        root = ElementTree.fromstring(text)
    except ElementTree.ParseError as exc:
        raise FormatError(f"XML parse error: {exc}") from None
    traces: list[Trace] = []
    trace_elements = [el for el in root.iter() if _local_name(el.tag) == "trace"]
    for t_index, trace_el in enumerate(trace_elements):
        events: list[Label] = []
        for event_el in trace_el:
            if _local_name(event_el.tag) != "event":
                continue
            name = None
            for attr in event_el:
                if (
                    _local_name(attr.tag) == "string"
                    and attr.get("key") == "concept:name"
                ):
                    name = attr.get("value")
                    break
            if name is None:
                _fail(f"trace {t_index}", "event missing a concept:name attribute")
            if name == RESERVED_LABEL:
                _fail(f"trace {t_index}", f"{RESERVED_LABEL!r} is reserved")
            events.append(label(name))
        traces.append(Trace(tuple(events)))
    return EventLog(traces)


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(a: Nfa) -> str:
    """GraphViz rendering: entry arrow on start, accepts double-circled."""
    lines = ["digraph automaton {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(a.state_count):
        shape = "doublecircle" if q in a.accepts else "circle"
        lines.append(f'  {q} [shape={shape}, label="{q}"];')
    lines.append(f"  __start -> {a.start};")
    for p, lab, q in sorted(
        a.transitions, key=lambda t: (t[0], sort_key(t[1]), t[2])
    ):
        lines.append(f'  {p} -> {q} [label="{_dot_escape(lab.display)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_fields(r: MeasureReport) -> dict[str, Any]:
    """Stable flat field mapping shared by the JSON and CSV writers."""
    return {
        "kind": _KIND_TOKENS[r.kind],
        "numerator": r.numerator_value,
        "denominator": r.denominator_value,
        "value": None if math.isinf(r.value) else r.value,
        "undefined": r.undefined,
        "division_by_zero": r.division_by_zero,
        "converged": r.converged,
        "iterations": r.iterations,
        "states_numerator": r.numerator.states if r.numerator else None,
        "transitions_numerator": r.numerator.transitions if r.numerator else None,
        "states_denominator": r.denominator.states if r.denominator else None,
        "transitions_denominator": r.denominator.transitions if r.denominator else None,
        "runtime_ms": r.runtime_ms,
    }


def write_report(r: MeasureReport, format: str = "json") -> str:
    """Serialise a measure report as JSON or a one-row CSV."""
    fields = report_fields(r)
    if format == "json":
        return json.dumps(fields, indent=2) + "\n"
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(fields.keys())
        writer.writerow("" if v is None else v for v in fields.values())
        return buffer.getvalue()
    raise ValueError(f"unknown report format: {format!r}")
