"""Instruction / dataset diff between two workflow versions.

An instruction counts as *used* by a workflow when some step of the
workflow (or of one of its sub-plans, one level down) points at it with
``dul:isDescribedBy``. Identity across versions is the IRI; a change is
representable only through an explicit ``prov:wasRevisionOf`` link from the
new instruction to the old one. The removed / changed / added partition is
then:

- changed: revision-linked pairs whose old side is used in A and new side
  is used in B;
- removed: used in A, not in B, and not the old side of a changed pair;
- added: used in B, not in A, and not the new side of a changed pair.

A step was *automatized* when a changed pair goes from a manual step in A
to a computational step in B. Dataset diffs apply the same partition to the
distributions reachable through instruction usage bindings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import vocab
from .rdf import Graph, IRI
from .vocab import BPMN, DCAT, DUL, PPLAN, PROV, RDF
from .workflow import MANUAL, SCRIPT, WorkflowError, is_workflow

_RDF_TYPE = IRI(RDF.type)


@dataclass(frozen=True)
class DiffReport:
    from_workflow: str
    to_workflow: str
    removed_instructions: frozenset[str] = frozenset()
    changed_instructions: frozenset[tuple[str, str]] = frozenset()
    added_instructions: frozenset[str] = frozenset()
    automatized_steps: frozenset[tuple[str, str]] = frozenset()
    removed_datasets: frozenset[str] = frozenset()
    changed_datasets: frozenset[tuple[str, str]] = frozenset()
    added_datasets: frozenset[str] = frozenset()

    def to_json(self) -> str:
        payload = {
            "from": self.from_workflow,
            "to": self.to_workflow,
            "removed_instructions": sorted(self.removed_instructions),
            "changed_instructions": [list(p) for p in sorted(self.changed_instructions)],
            "added_instructions": sorted(self.added_instructions),
            "automatized_steps": [list(p) for p in sorted(self.automatized_steps)],
            "removed_datasets": sorted(self.removed_datasets),
            "changed_datasets": [list(p) for p in sorted(self.changed_datasets)],
            "added_datasets": sorted(self.added_datasets),
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _require_workflow(g: Graph, wf: str):
    if not is_workflow(g, wf):
        raise WorkflowError(f"workflow not found: {wf}")


def _iri_objects(g: Graph, s: str, p: str) -> list[str]:
    return [t.value for t in g.objects(IRI(s), IRI(p)) if isinstance(t, IRI)]


def _step_kind(g: Graph, step: str) -> str:
    types = {t.value for t in g.objects(IRI(step), _RDF_TYPE) if isinstance(t, IRI)}
    return MANUAL if BPMN.ManualTask in types else SCRIPT


def used_instructions(g: Graph, wf: str) -> dict[str, set[tuple[str, str]]]:
    """Instructions used by a workflow, with their (step, kind) contexts.

    Covers the workflow's own steps and one level of sub-plan steps.
    """
    _require_workflow(g, wf)
    usage: dict[str, set[tuple[str, str]]] = {}
    step_of = IRI(PPLAN.isStepOfPlan)

    def visit(plan: str, depth: int):
        for subject in g.subjects(step_of, IRI(plan)):
            if not isinstance(subject, IRI):
                continue
            step = subject.value
            kind = _step_kind(g, step)
            for instr in _iri_objects(g, step, DUL.isDescribedBy):
                usage.setdefault(instr, set()).add((step, kind))
                if depth == 0:
                    visit(instr, depth + 1)

    visit(wf, 0)
    return usage


def _revision_pairs(g: Graph) -> set[tuple[str, str]]:
    pairs = set()
    for t in g.match(None, IRI(PROV.wasRevisionOf), None):
        if isinstance(t.s, IRI) and isinstance(t.o, IRI):
            pairs.add((t.o.value, t.s.value))  # (old, new)
    return pairs


def diff_instructions(g: Graph, wf_a: str, wf_b: str) -> DiffReport:
    """Removed / changed / added instruction sets between two versions."""
    used_a = used_instructions(g, wf_a)
    used_b = used_instructions(g, wf_b)
    changed = {(old, new) for old, new in _revision_pairs(g)
               if old in used_a and new in used_b}
    olds = {old for old, _ in changed}
    news = {new for _, new in changed}
    removed = (set(used_a) - set(used_b)) - olds
    added = (set(used_b) - set(used_a)) - news
    return DiffReport(
        from_workflow=wf_a,
        to_workflow=wf_b,
        removed_instructions=frozenset(removed),
        changed_instructions=frozenset(changed),
        added_instructions=frozenset(added),
    )


def automatized_steps(g: Graph, wf_a: str, wf_b: str) -> frozenset[tuple[str, str]]:
    """(old step, new step) pairs that went manual -> computational."""
    used_a = used_instructions(g, wf_a)
    used_b = used_instructions(g, wf_b)
    pairs = set()
    for old, new in _revision_pairs(g):
        if old not in used_a or new not in used_b:
            continue
        for step_a, kind_a in used_a[old]:
            if kind_a != MANUAL:
                continue
            for step_b, kind_b in used_b[new]:
                if kind_b == SCRIPT:
                    pairs.add((step_a, step_b))
    return frozenset(pairs)


def reachable_distributions(g: Graph, wf: str) -> set[str]:
    """Distributions reachable through the usage bindings of used instructions."""
    dists: set[str] = set()
    for instr in used_instructions(g, wf):
        for usage in _iri_objects(g, instr, PROV.qualifiedUsage):
            for entity in _iri_objects(g, usage, PROV.entity):
                types = {t.value for t in g.objects(IRI(entity), _RDF_TYPE)
                         if isinstance(t, IRI)}
                if DCAT.Distribution in types:
                    dists.add(entity)
    return dists


def diff_datasets(g: Graph, wf_a: str, wf_b: str) -> DiffReport:
    """Removed / changed / added dataset distributions between two versions."""
    reach_a = reachable_distributions(g, wf_a)
    reach_b = reachable_distributions(g, wf_b)
    changed = {(old, new) for old, new in _revision_pairs(g)
               if old in reach_a and new in reach_b}
    olds = {old for old, _ in changed}
    news = {new for _, new in changed}
    removed = (reach_a - reach_b) - olds
    added = (reach_b - reach_a) - news
    return DiffReport(
        from_workflow=wf_a,
        to_workflow=wf_b,
        removed_datasets=frozenset(removed),
        changed_datasets=frozenset(changed),
        added_datasets=frozenset(added),
    )


def diff(g: Graph, wf_a: str, wf_b: str) -> DiffReport:
    """Full diff report: instructions, automatized steps and datasets."""
    instructions = diff_instructions(g, wf_a, wf_b)
    datasets = diff_datasets(g, wf_a, wf_b)
    return DiffReport(
        from_workflow=wf_a,
        to_workflow=wf_b,
        removed_instructions=instructions.removed_instructions,
        changed_instructions=instructions.changed_instructions,
        added_instructions=instructions.added_instructions,
        automatized_steps=automatized_steps(g, wf_a, wf_b),
        removed_datasets=datasets.removed_datasets,
        changed_datasets=datasets.changed_datasets,
        added_datasets=datasets.added_datasets,
    )
