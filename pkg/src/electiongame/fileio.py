"""Canonical file formats: election documents (JSON), graphs (DIMACS-like
text), reduction layouts and witness files.

Canonical emission is byte-stable: fixed key order, candidates and districts
in declared order, zero counts omitted from vote maps.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np

from electiongame.documents import ElectionDocument, ProblemSpec
from electiongame.graphs import ColoredGraph, GraphError
from electiongame.manipulate import OPTIMISTIC, PESSIMISTIC
from electiongame.model import (
    ElectionInstance,
    ManipulationStrategy,
    ModelError,
    Rule,
    TieOrder,
    VoteProfile,
)
from electiongame.reductions import ReductionLayout


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Election documents
# ---------------------------------------------------------------------------

_TOP_FIELDS = ("candidates", "tie_order", "districts", "votes_original",
               "votes_manipulated", "problem")
_DISTRICT_FIELDS = ("name", "weight", "gamma")
_PROBLEM_FIELDS = ("kind", "rule", "preferred", "budget_attacker",
                   "budget_defender", "defender_tie")


def _require_fields(obj: dict, allowed, path: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: expected an object")
    for key in obj:
        if key not in allowed:
            raise FormatError(f"{path}.{key}: unknown field")


def _get_int(obj, key, path, minimum=0):
    val = obj.get(key)
    if not isinstance(val, int) or isinstance(val, bool) or val < minimum:
        raise FormatError(f"{path}.{key}: expected an integer >= {minimum}")
    return val


def _parse_votes(block, field, candidates, district_names, sizes, path):
    counts = np.zeros((len(district_names), len(candidates)), dtype=np.int64)
    _require_fields(block, set(district_names), path)
    cand_index = {c: j for j, c in enumerate(candidates)}
    for dname, row in block.items():
        i = district_names.index(dname)
        if not isinstance(row, dict):
            raise FormatError(f"{path}.{dname}: expected a candidate->count map")
        for cname, count in row.items():
            if cname not in cand_index:
                raise FormatError(f"{path}.{dname}.{cname}: unknown candidate")
            if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                raise FormatError(f"{path}.{dname}.{cname}: counts must be non-negative integers")
            counts[i, cand_index[cname]] = count
    if sizes is not None and not np.array_equal(counts.sum(axis=1), sizes):
        raise FormatError(
            f"{path}: per-district voter totals differ from votes_original "
            "(row sums must be preserved)"
        )
    return counts


def parse_election(text: str) -> ElectionDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    _require_fields(data, _TOP_FIELDS, "$")
    for field in ("candidates", "tie_order", "districts", "votes_original", "problem"):
        if field not in data:
            raise FormatError(f"$.{field}: missing required field")

    candidates = data["candidates"]
    if (not isinstance(candidates, list) or not candidates
            or not all(isinstance(c, str) for c in candidates)):
        raise FormatError("$.candidates: expected a non-empty list of names")
    if len(set(candidates)) != len(candidates):
        raise FormatError("$.candidates: names must be unique")

    tie_names = data["tie_order"]
    if not isinstance(tie_names, list) or sorted(tie_names) != sorted(candidates):
        raise FormatError("$.tie_order: must list every candidate exactly once")
    cand_index = {c: j for j, c in enumerate(candidates)}
    tie = TieOrder(tuple(cand_index[c] for c in tie_names))

    districts = data["districts"]
    if not isinstance(districts, list) or not districts:
        raise FormatError("$.districts: expected a non-empty list")
    names, weights, gammas = [], [], []
    for idx, d in enumerate(districts):
        path = f"$.districts[{idx}]"
        _require_fields(d, _DISTRICT_FIELDS, path)
        if not isinstance(d.get("name"), str):
            raise FormatError(f"{path}.name: expected a string")
        names.append(d["name"])
        weights.append(_get_int(d, "weight", path, minimum=1))
        gammas.append(_get_int(d, "gamma", path, minimum=0))
    if len(set(names)) != len(names):
        raise FormatError("$.districts: names must be unique")

    original = _parse_votes(data["votes_original"], "votes_original",
                            candidates, names, None, "$.votes_original")
    manipulated = None
    if "votes_manipulated" in data:
        manipulated = _parse_votes(data["votes_manipulated"], "votes_manipulated",
                                   candidates, names, original.sum(axis=1),
                                   "$.votes_manipulated")

    pb = data["problem"]
    _require_fields(pb, _PROBLEM_FIELDS, "$.problem")
    kind = pb.get("kind")
    if kind not in ("rec", "man"):
        raise FormatError("$.problem.kind: expected 'rec' or 'man'")
    rule_name = pb.get("rule")
    if rule_name not in ("pv", "pd"):
        raise FormatError("$.problem.rule: expected 'pv' or 'pd'")
    preferred = pb.get("preferred")
    if preferred not in cand_index:
        raise FormatError("$.problem.preferred: unknown candidate")
    budget_defender = _get_int(pb, "budget_defender", "$.problem")
    budget_attacker = None
    if kind == "man":
        budget_attacker = _get_int(pb, "budget_attacker", "$.problem")
    elif "budget_attacker" in pb:
        raise FormatError("$.problem.budget_attacker: not allowed for rec problems")
    defender_tie = pb.get("defender_tie", PESSIMISTIC)
    if defender_tie not in (PESSIMISTIC, OPTIMISTIC):
        raise FormatError("$.problem.defender_tie: expected 'pessimistic' or 'optimistic'")
    if kind == "rec" and manipulated is None:
        raise FormatError("$.votes_manipulated: required for rec problems")
    if kind == "man" and manipulated is not None:
        raise FormatError("$.votes_manipulated: not allowed for man problems")

    try:
        instance = ElectionInstance(
            num_candidates=len(candidates),
            weights=tuple(weights),
            gammas=tuple(gammas),
            tie=tie,
            original=VoteProfile(original),
            manipulated=VoteProfile(manipulated) if manipulated is not None else None,
        )
        problem = ProblemSpec(
            kind=kind, rule=Rule(rule_name), preferred=cand_index[preferred],
            budget_defender=budget_defender, budget_attacker=budget_attacker,
            defender_tie=defender_tie,
        )
        return ElectionDocument(tuple(candidates), tuple(names), instance, problem)
    except ModelError as exc:
        raise FormatError(str(exc)) from None


def _votes_dict(doc: ElectionDocument, counts) -> dict:
    out = {}
    for i, dname in enumerate(doc.district_names):
        row = {}
        for j, cname in enumerate(doc.candidate_names):
            if counts[i, j]:
                row[cname] = int(counts[i, j])
        out[dname] = row
    return out


def emit_election(doc: ElectionDocument) -> str:
    inst = doc.instance
    data = {
        "candidates": list(doc.candidate_names),
        "tie_order": [doc.candidate_names[c] for c in inst.tie.ranking],
        "districts": [
            {"name": doc.district_names[i], "weight": inst.weights[i], "gamma": inst.gammas[i]}
            for i in range(inst.k)
        ],
        "votes_original": _votes_dict(doc, inst.original.counts),
    }
    if inst.manipulated is not None:
        data["votes_manipulated"] = _votes_dict(doc, inst.manipulated.counts)
    pb = {
        "kind": doc.problem.kind,
        "rule": doc.problem.rule.value,
        "preferred": doc.candidate_names[doc.problem.preferred],
    }
    if doc.problem.budget_attacker is not None:
        pb["budget_attacker"] = doc.problem.budget_attacker
    pb["budget_defender"] = doc.problem.budget_defender
    pb["defender_tie"] = doc.problem.defender_tie
    data["problem"] = pb
    return json.dumps(data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Graph files
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> ColoredGraph:
    """DIMACS-like format: 'p graph N M [K]' header, 'e U V' edge lines and
    optional 'n V C' coloring lines, all 1-based."""
    n = None
    m_expect = None
    k = None
    edges = []
    coloring: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate header")
            if len(parts) not in (4, 5) or parts[1] != "graph":
                raise FormatError(f"line {lineno}: expected 'p graph N M [K]'")
            try:
                n, m_expect = int(parts[2]), int(parts[3])
                k = int(parts[4]) if len(parts) == 5 else None
            except ValueError:
                raise FormatError(f"line {lineno}: header fields must be integers") from None
        elif parts[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before header")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'e U V'")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v))
        elif parts[0] == "n":
            if n is None:
                raise FormatError(f"line {lineno}: coloring before header")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'n V C'")
            v, c = int(parts[1]) - 1, int(parts[2]) - 1
            if v in coloring:
                raise FormatError(f"line {lineno}: vertex {v + 1} colored twice")
            coloring[v] = c
        else:
            raise FormatError(f"line {lineno}: unknown directive {parts[0]!r}")
    if n is None:
        raise FormatError("missing 'p graph' header")
    if len(edges) != m_expect:
        raise FormatError(f"header announces {m_expect} edges but {len(edges)} given")
    color_tuple = None
    if coloring:
        if k is None:
            raise FormatError("coloring lines present but header carries no class count")
        if set(coloring) != set(range(n)):
            raise FormatError("coloring must cover every vertex exactly once")
        color_tuple = tuple(coloring[v] for v in range(n))
    try:
        return ColoredGraph(n=n, edges=tuple(edges), coloring=color_tuple, k=k if color_tuple else None)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def emit_graph(graph: ColoredGraph) -> str:
    header = f"p graph {graph.n} {graph.num_edges}"
    if graph.coloring is not None:
        header += f" {graph.k}"
    lines = [header]
    lines += [f"e {u + 1} {v + 1}" for u, v in graph.edges]
    if graph.coloring is not None:
        lines += [f"n {v + 1} {c + 1}" for v, c in enumerate(graph.coloring)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Layouts and witnesses
# ---------------------------------------------------------------------------


def emit_layout(layout: ReductionLayout) -> str:
    return json.dumps(layout.to_json_dict(), indent=2) + "\n"


def parse_layout(text: str) -> ReductionLayout:
    try:
        data = json.loads(text)
        return ReductionLayout.from_json_dict(data)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise FormatError(f"malformed layout file: {exc}") from None


def emit_rec_witness(doc: ElectionDocument, restored) -> str:
    names = sorted((doc.district_names[i] for i in restored),
                   key=doc.district_names.index)
    return json.dumps({"kind": "rec", "recount": names}, indent=2) + "\n"


def emit_man_witness(doc: ElectionDocument, strategy: ManipulationStrategy) -> str:
    touched = sorted(strategy.touched)
    replacement = {}
    for i in touched:
        row = strategy.replacement[i]
        replacement[doc.district_names[i]] = {
            doc.candidate_names[j]: int(count)
            for j, count in enumerate(row) if count
        }
    return json.dumps(
        {
            "kind": "man",
            "touched": [doc.district_names[i] for i in touched],
            "replacement": replacement,
        },
        indent=2,
    ) + "\n"


def parse_witness(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    _require_fields(data, ("kind", "recount", "touched", "replacement"), "$")
    kind = data.get("kind")
    if kind == "rec":
        if "recount" not in data or not isinstance(data["recount"], list):
            raise FormatError("$.recount: expected a list of district names")
        return data
    if kind == "man":
        if not isinstance(data.get("touched"), list) or not isinstance(data.get("replacement"), dict):
            raise FormatError("$: man witness needs 'touched' and 'replacement'")
        return data
    raise FormatError("$.kind: expected 'rec' or 'man'")
