import json
import random

import pytest

from entroscope import (
    CHI,
    EventLog,
    MeasureKind,
    Trace,
    determinize,
    is_deterministic,
    label,
    minimize,
    multiplicity,
    precision,
    recall,
    short_circuit,
)
from entroscope.formats import (
    FormatError,
    export_dot,
    read_automaton,
    read_log,
    read_xes,
    write_automaton,
    write_log,
    write_report,
)
from helpers import random_log, random_nfa, word_log
from login_fixtures import retry_spec, small_log

RETRY_SPEC_DOC = """
{
  "name": "retry-login",
  "alphabet": ["a", "b", "c", "d", "e"],
  "states": ["A", "B", "C", "D", "E"],
  "start": "A",
  "accepts": ["A"],
  "transitions": [
    {"from": "A", "label": "a", "to": "B"},
    {"from": "B", "label": "b", "to": "C"},
    {"from": "B", "label": "b", "to": "D"},
    {"from": "C", "label": "c", "to": "B"},
    {"from": "D", "label": "d", "to": "E"},
    {"from": "E", "label": "e", "to": "A"}
  ]
}
"""


class TestAutomatonDocuments:
    def test_named_state_document_parses(self):
        parsed = read_automaton(RETRY_SPEC_DOC)
        assert parsed == retry_spec()
        assert not is_deterministic(parsed)

    def test_accept_out_of_range_is_positioned(self):
        doc = json.dumps(
            {"alphabet": ["a"], "states": 2, "start": 0, "accepts": [5], "transitions": []}
        )
        with pytest.raises(FormatError, match=r"accepts\[0\].*out of range"):
            read_automaton(doc)

    def test_unknown_label_is_positioned(self):
        doc = json.dumps(
            {
                "alphabet": ["a"],
                "states": 2,
                "start": 0,
                "accepts": [],
                "transitions": [{"from": 0, "label": "zz", "to": 1}],
            }
        )
        with pytest.raises(FormatError, match=r"transitions\[0\].label"):
            read_automaton(doc)

    def test_reserved_label_rejected(self):
        doc = json.dumps(
            {"alphabet": ["__chi__"], "states": 1, "start": 0, "accepts": [], "transitions": []}
        )
        with pytest.raises(FormatError, match="reserved"):
            read_automaton(doc)

    def test_malformed_json_reports_position(self):
        with pytest.raises(FormatError, match="line"):
            read_automaton("{ not json")

    def test_null_label_is_silent(self):
        doc = json.dumps(
            {
                "alphabet": ["a"],
                "states": 2,
                "start": 0,
                "accepts": [1],
                "transitions": [{"from": 0, "label": None, "to": 1}],
            }
        )
        parsed = read_automaton(doc)
        assert not is_deterministic(parsed)

    def test_round_trip_on_random_automata(self):
        rng = random.Random(31)
        for _ in range(50):
            aut = random_nfa(rng)
            assert read_automaton(write_automaton(aut)) == aut

    def test_short_circuited_automata_are_not_serialisable(self):
        from entroscope import Dfa

        sc = short_circuit(Dfa(1, frozenset(), frozenset(), 0, frozenset({0})))
        with pytest.raises(FormatError, match="short-circuited"):
            write_automaton(sc)


class TestLogDocuments:
    def test_two_line_log(self):
        parsed = read_log("a b d e\na b c b c d e\n")
        assert parsed == small_log()

    def test_repeated_lines_accumulate(self):
        parsed = read_log("a f e\na f e\n")
        assert multiplicity(parsed, Trace.of(*"afe")) == 2

    def test_empty_file_is_empty_log(self):
        assert read_log("") == EventLog()

    def test_blank_line_is_empty_trace(self):
        parsed = read_log("\n")
        assert multiplicity(parsed, Trace(())) == 1

    def test_comments_are_ignored(self):
        parsed = read_log("# a comment\na b\n")
        assert parsed == word_log(["ab"])

    def test_double_space_is_positioned_error(self):
        with pytest.raises(FormatError, match="line 1, event 2"):
            read_log("a  b\n")

    def test_reserved_label_rejected(self):
        with pytest.raises(FormatError, match="reserved"):
            read_log("a __chi__\n")

    def test_round_trip_on_random_logs(self):
        rng = random.Random(17)
        for _ in range(50):
            log = random_log(rng)
            assert read_log(write_log(log)) == log


MINIMAL_XES = """<?xml version="1.0" encoding="UTF-8"?>
<log xmlns="http://www.xes-standard.org/">
  <trace>
    <string key="concept:name" value="case-1"/>
    <event><string key="concept:name" value="A"/><int key="other" value="3"/></event>
    <event><string key="concept:name" value="B"/></event>
  </trace>
  <trace/>
</log>
"""


class TestXes:
    def test_minimal_sample(self):
        parsed = read_xes(MINIMAL_XES)
        assert multiplicity(parsed, Trace.of("A", "B")) == 1
        assert multiplicity(parsed, Trace(())) == 1

    def test_missing_concept_name_names_the_trace(self):
        bad = "<log><trace><event/></trace></log>"
        with pytest.raises(FormatError, match="trace 0"):
            read_xes(bad)

    def test_malformed_xml(self):
        with pytest.raises(FormatError, match="XML"):
            read_xes("<log><trace>")


class TestDot:
    def test_retry_spec_renders_all_states(self):
        dot = export_dot(retry_spec())
        assert dot.count("shape=circle") == 4
        assert dot.count("shape=doublecircle") == 1
        assert "__start -> 0" in dot

    def test_empty_automaton_renders_one_node(self):
        from entroscope import empty_language_automaton

        dot = export_dot(empty_language_automaton())
        assert dot.count("shape=circle") == 1

    def test_short_circuited_edges_render_chi(self):
        sc = short_circuit(minimize(determinize(retry_spec())))
        assert f'label="{CHI.display}"' in export_dot(sc)


class TestReports:
    def test_json_round_trips(self):
        report = precision(retry_spec(), small_log())
        fields = json.loads(write_report(report, "json"))
        assert fields["kind"] == "eig"
        assert fields["value"] == pytest.approx(0.661, abs=1e-3)
        assert fields["converged"] is True
        assert fields["states_numerator"] > 0
        assert "runtime_ms" in fields

    def test_undefined_case(self):
        from entroscope import empty_language_automaton

        report = precision(empty_language_automaton(), small_log())
        fields = json.loads(write_report(report, "json"))
        assert fields["undefined"] is True
        assert fields["value"] == 0.0

    def test_csv_has_one_row(self):
        report = recall(retry_spec(), small_log(), MeasureKind.CARDINALITY)
        text = write_report(report, "csv")
        header, row = text.strip().split("\n")
        assert header.startswith("kind,numerator,denominator,value")
        assert row.startswith("card,")
