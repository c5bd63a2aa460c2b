from collections import Counter

import pytest

from plexflow.cq import CATALOGUE, CqError, delta_counts, query_text, run_cq
from plexflow.fixture import REFERENCE_ACCURACY, V01, V02
from plexflow.query import parse_query
from plexflow.vocab import BPMN, OPREDICT as OP


def _kind_counts(table):
    return Counter(term.value for term in table.column("stepType"))


def test_catalogue_lists_twelve_questions():
    assert len(CATALOGUE) == 12
    assert sorted(CATALOGUE) == [
        "CQ1.1", "CQ1.2", "CQ1.3", "CQ1.4", "CQ2.1", "CQ2.2", "CQ2.3",
        "CQ3.1", "CQ3.2", "CQ3.3", "CQ3.4", "CQ3.5"]


def test_every_template_parses_with_dummy_parameters():
    for entry in CATALOGUE.values():
        for filename in entry.files:
            text = query_text(filename)
            for name in entry.params:
                text = text.replace(f"${name}", "<urn:x>")
            parse_query(text)


def test_unknown_id_and_missing_parameter():
    import plexflow.fixture as fx
    g = fx.generate_fixture()
    with pytest.raises(CqError):
        run_cq("CQ9.9", g)
    with pytest.raises(CqError):
        run_cq("CQ1.1", g, {})
    with pytest.raises(CqError):
        run_cq("CQ3.2", g, {"from": V01})
    with pytest.raises(CqError):
        run_cq("CQ1.1", g, {"workflow": "not an iri"})


def test_cq1_1_step_inventory(fixture_graph):
    v01 = run_cq("CQ1.1", fixture_graph, {"workflow": V01})
    assert len(v01) == 42
    counts = _kind_counts(v01)
    assert counts[BPMN.ManualTask] == 28
    assert counts[BPMN.ScriptTask] == 14
    v02 = run_cq("CQ1.1", fixture_graph, {"workflow": V02})
    assert len(v02) == 18
    counts = _kind_counts(v02)
    assert counts[BPMN.ManualTask] == 9
    assert counts[BPMN.ScriptTask] == 9


def test_cq1_2_reports_agents_per_manual_step(fixture_graph):
    table = run_cq("CQ1.2", fixture_graph, {"workflow": V01})
    steps = table.distinct_values("step")
    assert len(steps) == 28
    agents = {a.value for a in table.distinct_values("agent")}
    assert OP.Agent_Remzi in agents


def test_cq1_3_distributions(fixture_graph):
    v02 = run_cq("CQ1.3", fixture_graph, {"workflow": V02})
    assert len(v02) == 7
    urls = sorted(term.lexical for term in v02.column("downloadURL"))
    assert urls == [
        "http://compbio.charite.de/jenkins/job/hpo.annotations/1266/artifact/"
        "misc/phenotype_annotation_hpoteam.tab",
        "http://download.bio2rdf.org/files/release/4/kegg/kegg-drug.nq.gz",
        "http://download.bio2rdf.org/files/release/4/sider/sider-se.nq.gz",
        "http://www.paccanarolab.org/static_content/disease_similarity/"
        "mim2mesh.tsv",
        "https://media.nature.com/full/nature-assets/srep/2016/161017/"
        "srep35241/extref/srep35241-s3.txt",
        "https://raw.githubusercontent.com/dhimmel/drugbank/"
        "3e87872db5fca5ac427ce27464ab945c0ceb4ec6/data/mapping/pubchem.tsv",
        "https://www.ncbi.nlm.nih.gov/pmc/articles/PMC3159979/bin/"
        "msb201126-s4.xls",
    ]
    v01 = run_cq("CQ1.3", fixture_graph, {"workflow": V01})
    assert len(v01) == 5


def test_cq1_4_manual_steps_have_io(fixture_graph):
    table = run_cq("CQ1.4", fixture_graph, {"workflow": V01})
    assert len(table) > 0
    steps = {s.value for s in table.distinct_values("step")}
    assert OP.Step_Save_files_in_triplestore in steps
    by_step = {}
    for row in table.rows:
        by_step.setdefault(row[0].value, []).append(row)
    endpoint_rows = by_step[OP.Step_Save_files_in_triplestore]
    outputs = {r[3].value for r in endpoint_rows if r[3] is not None}
    assert OP.Variable_Triplestore_endpoint_for_input_data in outputs


def test_cq2_1_main_chain_order(fixture_graph):
    table = run_cq("CQ2.1", fixture_graph, {"workflow": V01})
    assert [term.value for (term,) in table.rows] == [
        OP.Step_Prepare_Input_Data_Files,
        OP.Step_Feature_generation_Pipeline_OpenPREDICT_ipynb,
        OP["Step_Model_preparation_train_and_evaluation_Workflow_"
           "OpenPREDCIT_-_ML_ipynb"],
        OP.Step_Format_results_for_presentation,
    ]


def test_cq2_2_step_totals(fixture_graph):
    v01 = run_cq("CQ2.2", fixture_graph, {"workflow": V01})
    v02 = run_cq("CQ2.2", fixture_graph, {"workflow": V02})
    assert len(v01) == 60
    assert len(v02) == 18
    assert len(v01) + len(v02) == 78
    assert len(v01.distinct_values("step")) == 60


def test_cq2_3_abstraction_links(fixture_graph):
    table = run_cq("CQ2.3", fixture_graph)
    assert len(table) == 10
    specs = table.distinct_values("specification")
    assert len(specs) == 3


def test_cq3_1_versions_and_revision(fixture_graph):
    table = run_cq("CQ3.1", fixture_graph)
    assert len(table) == 2
    versions = [term.lexical for term in table.column("version")]
    assert versions == ["0.1", "0.2"]
    priors = table.column("priorVersion")
    assert priors[0] is None
    assert priors[1].value == V01


def test_cq3_2_delta(fixture_graph):
    table = run_cq("CQ3.2", fixture_graph, {"from": V01, "to": V02})
    assert delta_counts(table) == {"removed": 47, "changed": 3, "added": 7}
    assert len(table) == 57


def test_cq3_3_automatized(fixture_graph):
    table = run_cq("CQ3.3", fixture_graph, {"from": V01, "to": V02})
    assert len(table) == 3
    old_steps = {t.value for t in table.distinct_values("oldStep")}
    assert OP.Step_Prepare_Input_Data_Files in old_steps


def test_cq3_4_delta(fixture_graph):
    table = run_cq("CQ3.4", fixture_graph, {"from": V01, "to": V02})
    assert delta_counts(table) == {"removed": 0, "changed": 0, "added": 2}


def test_cq3_5_executions(fixture_graph):
    table = run_cq("CQ3.5", fixture_graph)
    activities = table.distinct_values("activity")
    assert len(activities) == 14
    v01_values = {row[3].lexical for row in table.rows
                  if row[1].value == V01 and row[3] is not None}
    assert REFERENCE_ACCURACY in v01_values


def test_cq_delta_agrees_with_diff_module(fixture_graph):
    # Two independent routes to the same partition: SPARQL queries here,
    # typed graph traversal in versiondiff.
    from plexflow.versiondiff import diff_instructions
    table = run_cq("CQ3.2", fixture_graph, {"from": V01, "to": V02})
    report = diff_instructions(fixture_graph, V01, V02)
    removed = {row[1].value for row in table.rows
               if row[0].lexical == "removed"}
    added = {row[2].value for row in table.rows if row[0].lexical == "added"}
    changed = {(row[1].value, row[2].value) for row in table.rows
               if row[0].lexical == "changed"}
    assert removed == report.removed_instructions
    assert added == report.added_instructions
    assert changed == report.changed_instructions
