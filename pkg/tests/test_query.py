import pytest

from plexflow.query import (
    Comparison, Minus, OptionalGroup, QueryError, QueryParseError, ResultTable,
    TriplePattern, Values, Var, evaluate, parse_query, run_query,
)
from plexflow.rdf import Graph, Literal, Triple, iri, lit

BPMN = "http://dkm.fbk.eu/ontologies/bpmn#"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


def g_of(*spo) -> Graph:
    g = Graph()
    for s, p, o in spo:
        obj = o if isinstance(o, Literal) else iri(o)
        g.add(Triple(iri(s), iri(p), obj))
    return g.freeze()


# -- parsing -----------------------------------------------------------------

def test_parse_single_pattern_with_a_keyword():
    ast = parse_query(
        f"PREFIX bpmn: <{BPMN}>\nSELECT ?s WHERE {{ ?s a bpmn:ManualTask }}")
    patterns = [e for e in ast.where.elements if isinstance(e, TriplePattern)]
    assert len(patterns) == 1
    assert patterns[0].p == iri(RDF_TYPE)
    assert ast.variables == [Var("s")]


def test_parse_values_clause():
    ast = parse_query(
        f"PREFIX bpmn: <{BPMN}>\n"
        "SELECT ?step WHERE {\n"
        "  ?step a ?stepType .\n"
        "  values ?stepType { bpmn:ManualTask }\n"
        "}")
    values = [e for e in ast.where.elements if isinstance(e, Values)]
    assert len(values) == 1
    assert values[0].var == Var("stepType")
    assert values[0].terms == [iri(BPMN + "ManualTask")]


def test_parse_closure_modifier():
    ast = parse_query(
        "PREFIX dul: <urn:dul#>\n"
        "SELECT ?a ?b WHERE { ?a dul:precedes+ ?b }")
    (pattern,) = [e for e in ast.where.elements if isinstance(e, TriplePattern)]
    assert pattern.plus is True


def test_parse_minus_optional_filter():
    ast = parse_query(
        "SELECT ?s WHERE {\n"
        "  ?s <urn:p> ?v .\n"
        "  OPTIONAL { ?s <urn:q> ?w }\n"
        "  MINUS { ?s <urn:r> ?v }\n"
        "  FILTER (?v != ?w)\n"
        "  FILTER (!BOUND(?w))\n"
        "  FILTER (REGEX(?v, \"x+\"))\n"
        "}")
    kinds = [type(e).__name__ for e in ast.where.elements]
    assert kinds.count("OptionalGroup") == 1
    assert kinds.count("Minus") == 1
    assert kinds.count("Filter") == 3


def test_unsupported_constructs_rejected_by_name():
    for text, name in (
            ("SELECT ?s WHERE { { ?s ?p ?o } UNION { ?s ?q ?o } }", "UNION"),
            ("SELECT ?s WHERE { BIND(1 AS ?s) }", "BIND"),
            ("ASK { ?s ?p ?o }", "ASK"),
            ("SELECT ?s WHERE { ?s ?p ?o } GROUP BY ?s", "GROUP"),
            ("SELECT ?s WHERE { ?s ?p ?o } LIMIT 5", "LIMIT")):
        with pytest.raises(QueryParseError) as err:
            parse_query(text)
        assert name in str(err.value)


def test_parse_errors_have_position_and_prefix_check():
    with pytest.raises(QueryParseError) as err:
        parse_query("SELECT ?s WHERE { ?s nope:p ?o }")
    assert "unknown prefix" in str(err.value)
    with pytest.raises(QueryParseError):
        parse_query("SELECT ?s WHERE { ?s <urn:p> }")


def test_projection_must_be_in_scope():
    with pytest.raises(QueryError):
        parse_query("SELECT ?missing WHERE { ?s <urn:p> ?o }")


# -- evaluation --------------------------------------------------------------

def test_single_pattern_match():
    g = g_of(("urn:s1", RDF_TYPE, BPMN + "ManualTask"),
             ("urn:s2", RDF_TYPE, BPMN + "ManualTask"),
             ("urn:s3", RDF_TYPE, BPMN + "ScriptTask"))
    table = run_query(
        f"PREFIX bpmn: <{BPMN}>\nSELECT ?s WHERE {{ ?s a bpmn:ManualTask }}", g)
    assert [row[0].value for row in table.rows] == ["urn:s1", "urn:s2"]


def test_join_on_shared_variable():
    g = g_of(("urn:a", "urn:p", "urn:b"), ("urn:b", "urn:q", "urn:c"),
             ("urn:a", "urn:p", "urn:x"))
    table = run_query(
        "SELECT ?x ?z WHERE { ?x <urn:p> ?y . ?y <urn:q> ?z }", g)
    assert table.rows == [(iri("urn:a"), iri("urn:c"))]


def test_closure_on_chain():
    g = g_of(("urn:s1", "urn:pre", "urn:s2"), ("urn:s2", "urn:pre", "urn:s3"))
    table = run_query("SELECT ?a ?b WHERE { ?a <urn:pre>+ ?b }", g)
    pairs = {(a.value, b.value) for a, b in table.rows}
    assert pairs == {("urn:s1", "urn:s2"), ("urn:s1", "urn:s3"),
                     ("urn:s2", "urn:s3")}


def test_closure_with_bound_subject_and_cycles():
    g = g_of(("urn:a", "urn:p", "urn:b"), ("urn:b", "urn:p", "urn:a"))
    table = run_query("SELECT ?x WHERE { <urn:a> <urn:p>+ ?x }", g)
    assert {row[0].value for row in table.rows} == {"urn:a", "urn:b"}
    # Self-join through the closure only keeps cyclic nodes.
    table = run_query("SELECT ?x WHERE { ?x <urn:p>+ ?x }", g)
    assert {row[0].value for row in table.rows} == {"urn:a", "urn:b"}


def test_minus_removes_compatible_rows():
    g = g_of(("urn:a", "urn:p", "urn:x"), ("urn:b", "urn:p", "urn:x"),
             ("urn:a", "urn:q", "urn:x"))
    table = run_query(
        "SELECT ?s WHERE { ?s <urn:p> ?o . MINUS { ?s <urn:q> ?o } }", g)
    assert [row[0].value for row in table.rows] == ["urn:b"]


def test_minus_removing_everything_gives_empty_table():
    g = g_of(("urn:a", "urn:p", "urn:x"))
    table = run_query(
        "SELECT ?s WHERE { ?s <urn:p> ?o . MINUS { ?s <urn:p> ?o } }", g)
    assert len(table) == 0


def test_minus_without_shared_variables_keeps_rows():
    g = g_of(("urn:a", "urn:p", "urn:x"), ("urn:c", "urn:q", "urn:d"))
    table = run_query(
        "SELECT ?s WHERE { ?s <urn:p> ?o . MINUS { ?y <urn:q> ?z } }", g)
    assert len(table) == 1


def test_optional_left_join_and_bound_filter():
    g = g_of(("urn:a", "urn:p", "urn:x"), ("urn:b", "urn:p", "urn:y"),
             ("urn:a", "urn:extra", "urn:e"))
    table = run_query(
        "SELECT ?s ?e WHERE { ?s <urn:p> ?o . "
        "OPTIONAL { ?s <urn:extra> ?e } }", g)
    by_s = {row[0].value: row[1] for row in table.rows}
    assert by_s["urn:a"] == iri("urn:e")
    assert by_s["urn:b"] is None
    table = run_query(
        "SELECT ?s WHERE { ?s <urn:p> ?o . "
        "OPTIONAL { ?s <urn:extra> ?e } FILTER (!BOUND(?e)) }", g)
    assert [row[0].value for row in table.rows] == ["urn:b"]


def test_filter_comparisons():
    g = Graph()
    g.add(Triple(iri("urn:a"), iri("urn:v"), lit("alpha")))
    g.add(Triple(iri("urn:b"), iri("urn:v"), lit("beta")))
    g.add(Triple(iri("urn:c"), iri("urn:v"),
                 lit("5", "http://www.w3.org/2001/XMLSchema#integer")))
    g.freeze()
    table = run_query(
        'SELECT ?s WHERE { ?s <urn:v> ?o . FILTER (?o = "alpha") }', g)
    assert [row[0].value for row in table.rows] == ["urn:a"]
    table = run_query(
        "SELECT ?s WHERE { ?s <urn:v> ?o . FILTER (?o > 3) }", g)
    assert [row[0].value for row in table.rows] == ["urn:c"]
    # Type-mismatched comparisons are false, not errors.
    table = run_query(
        "SELECT ?s WHERE { ?s <urn:v> ?o . FILTER (?o < 3) }", g)
    assert len(table) == 0
    table = run_query(
        'SELECT ?s WHERE { ?s <urn:v> ?o . FILTER (REGEX(?o, "^a")) }', g)
    assert [row[0].value for row in table.rows] == ["urn:a"]


def test_values_restricts_bindings():
    g = g_of(("urn:s1", RDF_TYPE, BPMN + "ManualTask"),
             ("urn:s2", RDF_TYPE, BPMN + "ScriptTask"))
    table = run_query(
        f"PREFIX bpmn: <{BPMN}>\n"
        "SELECT ?s ?t WHERE { ?s a ?t . VALUES ?t { bpmn:ManualTask } }", g)
    assert [row[0].value for row in table.rows] == ["urn:s1"]


def test_distinct_collapses_duplicates():
    g = g_of(("urn:a", "urn:p", "urn:x"), ("urn:a", "urn:q", "urn:y"))
    plain = run_query("SELECT ?s WHERE { ?s ?p ?o }", g)
    distinct = run_query("SELECT DISTINCT ?s WHERE { ?s ?p ?o }", g)
    assert len(plain) == 2 and len(distinct) == 1
    assert set(plain.rows) == set(distinct.rows)


def test_order_by_and_default_canonical_order():
    g = g_of(("urn:b", "urn:p", "urn:1"), ("urn:a", "urn:p", "urn:2"))
    by_s = run_query("SELECT ?s ?o WHERE { ?s <urn:p> ?o } ORDER BY ?s", g)
    assert [row[0].value for row in by_s.rows] == ["urn:a", "urn:b"]
    by_o = run_query("SELECT ?s ?o WHERE { ?s <urn:p> ?o } ORDER BY ?o", g)
    assert [row[1].value for row in by_o.rows] == ["urn:1", "urn:2"]


def test_star_projection_uses_first_appearance_order():
    g = g_of(("urn:a", "urn:p", "urn:b"))
    table = run_query("SELECT * WHERE { ?x <urn:p> ?y }", g)
    assert table.variables == ["x", "y"]


def test_evaluate_requires_frozen_graph():
    g = Graph()
    g.add(Triple(iri("urn:a"), iri("urn:p"), iri("urn:b")))
    with pytest.raises(QueryError):
        run_query("SELECT ?s WHERE { ?s ?p ?o }", g)


def test_repeated_variable_in_pattern():
    g = g_of(("urn:a", "urn:p", "urn:a"), ("urn:b", "urn:p", "urn:c"))
    table = run_query("SELECT ?x WHERE { ?x <urn:p> ?x }", g)
    assert [row[0].value for row in table.rows] == ["urn:a"]


def test_unsubstituted_parameter_is_an_error():
    with pytest.raises(QueryParseError) as err:
        parse_query("SELECT ?s WHERE { ?s <urn:p> $workflow }")
    assert "parameter" in str(err.value)


def test_tsv_and_json_output():
    g = g_of(("urn:a", "urn:p", "urn:b"))
    table = run_query(
        "SELECT ?s ?missing WHERE { ?s <urn:p> ?o . "
        "OPTIONAL { ?s <urn:q> ?missing } }", g)
    tsv = table.to_tsv()
    assert tsv.splitlines()[0] == "?s\t?missing"
    assert tsv.splitlines()[1] == "<urn:a>\t"
    assert '"rows"' in table.to_json()
