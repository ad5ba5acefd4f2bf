"""Instance generators turning graph problems into election games.

Three families are provided, each with a role-tagged layout so witnesses can
be translated between the graph world and the election world:

  * dominating set       -> PV recount instance
  * multicolored clique  -> PV manipulation instance
  * multicolored clique  -> PD recount instance
"""

from __future__ import annotations

import dataclasses
from typing import Iterable

import numpy as np

from electiongame.documents import ElectionDocument, ProblemSpec
from electiongame.graphs import ColoredGraph
from electiongame.model import ElectionInstance, Rule, TieOrder, VoteProfile


class ReductionError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class ReductionLayout:
    """Role map from generated districts/candidates back to graph elements."""

    family: str  # "ds-pv-rec" | "mcc-pv-man" | "mcc-pd-rec"
    scalars: dict
    district_roles: dict
    candidate_roles: dict

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "scalars": dict(self.scalars),
            "district_roles": {k: dict(v) for k, v in self.district_roles.items()},
            "candidate_roles": {k: dict(v) for k, v in self.candidate_roles.items()},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ReductionLayout":
        return cls(
            family=data["family"],
            scalars=data["scalars"],
            district_roles=data["district_roles"],
            candidate_roles=data["candidate_roles"],
        )


def _require_colored(graph: ColoredGraph):
    if graph.coloring is None or graph.k is None:
        raise ReductionError("this construction needs a vertex coloring")
    if not graph.is_properly_colored():
        raise ReductionError("coloring must be proper (no edge inside a class)")
    if any(not cls for cls in graph.classes()):
        raise ReductionError("every color class must contain at least one vertex")


# ---------------------------------------------------------------------------
# Dominating set -> PV recount
# ---------------------------------------------------------------------------


def reduce_ds_to_pv_rec(graph: ColoredGraph, k: int):
    """Recount instance that is a yes iff the graph has a dominating set of
    size at most k.

    One baseline district plus one primary district per vertex; candidates
    are one main and one dummy per vertex plus the special candidate w.  In
    the manipulated profile every non-dummy candidate totals exactly N votes;
    restoring the primary district of v strips one vote from every main
    candidate in v's closed neighborhood.
    """
    if k < 0:
        raise ReductionError("k must be non-negative")
    n_vertices = graph.n
    main = {v: v for v in range(n_vertices)}           # candidate index of c_v
    w = n_vertices                                     # special candidate
    dummy = {v: n_vertices + 1 + v for v in range(n_vertices)}
    m = 2 * n_vertices + 1

    candidate_names = (
        [f"c{v}" for v in range(n_vertices)] + ["w"] + [f"d{v}" for v in range(n_vertices)]
    )
    district_names = ["D0"] + [f"Dv{v}" for v in range(n_vertices)]
    k_districts = n_vertices + 1

    original = np.zeros((k_districts, m), dtype=np.int64)
    manipulated = np.zeros((k_districts, m), dtype=np.int64)
    for v in range(n_vertices):
        deg = graph.degree(v)
        original[0, main[v]] = manipulated[0, main[v]] = n_vertices - (deg + 1)
        original[1 + v, dummy[v]] = deg + 1
        for u in graph.closed_neighborhood(v):
            manipulated[1 + v, main[u]] = 1
    original[0, w] = manipulated[0, w] = n_vertices

    sizes = original.sum(axis=1)
    instance = ElectionInstance(
        num_candidates=m,
        weights=(1,) * k_districts,
        gammas=tuple(int(s) for s in sizes),
        tie=TieOrder(tuple(range(m))),  # mains, then w, then dummies
        original=VoteProfile(original),
        manipulated=VoteProfile(manipulated),
    )
    problem = ProblemSpec(kind="rec", rule=Rule.PV, preferred=w, budget_defender=k)
    doc = ElectionDocument(tuple(candidate_names), tuple(district_names), instance, problem)

    district_roles = {"D0": {"role": "baseline"}}
    district_roles.update({f"Dv{v}": {"role": "primary", "vertex": v} for v in range(n_vertices)})
    candidate_roles = {"w": {"role": "special"}}
    candidate_roles.update({f"c{v}": {"role": "main", "vertex": v} for v in range(n_vertices)})
    candidate_roles.update({f"d{v}": {"role": "dummy", "vertex": v} for v in range(n_vertices)})
    layout = ReductionLayout(
        family="ds-pv-rec",
        scalars={"k": k, "n_vertices": n_vertices, "n_edges": graph.num_edges},
        district_roles=district_roles,
        candidate_roles=candidate_roles,
    )
    return doc, layout


# ---------------------------------------------------------------------------
# Multicolored clique -> PV manipulation
# ---------------------------------------------------------------------------


def _directed_districts(graph: ColoredGraph):
    """Directed district list: for every edge (u,v) with u < v, first the
    (u,v) district, then the (v,u) district."""
    out = []
    for u, v in graph.edges:
        out.append((u, v))
        out.append((v, u))
    return out


def reduce_mcc_to_pv_man(graph: ColoredGraph):
    """Manipulation instance that is a yes iff the graph has a clique with
    one vertex per color class.

    The attacker must funnel the full content of k^2 districts to the special
    candidate w; the challenger scores force these to be k primary districts
    (one per class) and the k(k-1) directed districts of the clique edges.
    """
    _require_colored(graph)
    k = graph.k
    if k < 2:
        raise ReductionError("the manipulation construction needs at least two color classes")
    n_vertices = graph.n
    coloring = graph.coloring
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    pair_pos = {p: idx for idx, p in enumerate(pairs)}

    # Candidate indices in tie order: R_i, R_ij, c_v, w, dummies.
    chall = {i: i for i in range(k)}
    pair_chall = {p: k + pair_pos[p] for p in pairs}
    main = {v: k + len(pairs) + v for v in range(n_vertices)}
    w = k + len(pairs) + n_vertices

    directed = _directed_districts(graph)
    # District indices: baseline first, then primaries, then directed pairs.
    district_names = ["D0"] + [f"Dv{v}" for v in range(n_vertices)] + [
        f"E{a}-{b}" for a, b in directed
    ]
    prim = {v: 1 + v for v in range(n_vertices)}
    sec = {ab: 1 + n_vertices + idx for idx, ab in enumerate(directed)}
    k_districts = len(district_names)

    # Votes of the non-dummy candidates in the mutable districts.
    votes = [dict() for _ in range(k_districts)]
    for v in range(n_vertices):
        if k >= 2:
            votes[prim[v]][main[v]] = k - 1
        votes[prim[v]][chall[coloring[v]]] = votes[prim[v]].get(chall[coloring[v]], 0) + 1
    for a, b in directed:
        d = sec[(a, b)]
        votes[d][pair_chall[(coloring[a], coloring[b])]] = 1
        for x in range(n_vertices):
            if x != a and coloring[x] == coloring[a]:
                votes[d][main[x]] = votes[d].get(main[x], 0) + 1

    mutable = list(prim.values()) + list(sec.values())
    ell = max(sum(votes[d].values()) for d in mutable)
    big_f = ell * k * k

    # Pad every mutable district to ell voters with fresh dummy candidates.
    dummy_names = []
    dummy_roles = {}
    padding = []  # (district, dummy candidate index)
    next_candidate = w + 1
    for d in mutable:
        for slot in range(ell - sum(votes[d].values())):
            name = f"z{district_names[d]}-{slot}"
            dummy_names.append(name)
            dummy_roles[name] = {"role": "dummy", "district": district_names[d], "slot": slot}
            padding.append((d, next_candidate))
            next_candidate += 1
    m = next_candidate

    original = np.zeros((k_districts, m), dtype=np.int64)
    for d, row in enumerate(votes):
        for c, count in row.items():
            original[d, c] = count
    for d, c in padding:
        original[d, c] = 1
    # Baseline rows pin the totals: mains at F + k - 2, challengers at F.
    for v in range(n_vertices):
        topup = big_f + k - 2 - int(original[:, main[v]].sum())
        if topup < 0:
            raise ReductionError(
                f"main candidate of vertex {v} already exceeds its target total; "
                "the construction does not apply to this graph"
            )
        original[0, main[v]] = topup
    for c in list(chall.values()) + list(pair_chall.values()):
        topup = big_f - int(original[:, c].sum())
        if topup < 0:
            raise ReductionError(
                "a challenger candidate already exceeds its target total; "
                "the construction does not apply to this graph"
            )
        original[0, c] = topup

    candidate_names = (
        [f"R{i}" for i in range(k)]
        + [f"R{i}-{j}" for i, j in pairs]
        + [f"c{v}" for v in range(n_vertices)]
        + ["w"]
        + dummy_names
    )
    gammas = [0] * k_districts
    for d in mutable:
        gammas[d] = ell
    instance = ElectionInstance(
        num_candidates=m,
        weights=(1,) * k_districts,
        gammas=tuple(gammas),
        tie=TieOrder(tuple(range(m))),
        original=VoteProfile(original),
        manipulated=None,
    )
    problem = ProblemSpec(
        kind="man", rule=Rule.PV, preferred=w,
        budget_attacker=k * k, budget_defender=0,
    )
    doc = ElectionDocument(tuple(candidate_names), tuple(district_names), instance, problem)

    district_roles = {"D0": {"role": "baseline"}}
    district_roles.update({f"Dv{v}": {"role": "primary", "vertex": v} for v in range(n_vertices)})
    district_roles.update(
        {f"E{a}-{b}": {"role": "secondary", "edge": [min(a, b), max(a, b)], "first": a}
         for a, b in directed}
    )
    candidate_roles = {"w": {"role": "special"}}
    candidate_roles.update({f"R{i}": {"role": "class_challenger", "class": i} for i in range(k)})
    candidate_roles.update(
        {f"R{i}-{j}": {"role": "pair_challenger", "classes": [i, j]} for i, j in pairs}
    )
    candidate_roles.update({f"c{v}": {"role": "main", "vertex": v} for v in range(n_vertices)})
    candidate_roles.update(dummy_roles)
    layout = ReductionLayout(
        family="mcc-pv-man",
        scalars={"k": k, "ell": ell, "F": big_f,
                 "n_vertices": n_vertices, "n_edges": graph.num_edges},
        district_roles=district_roles,
        candidate_roles=candidate_roles,
    )
    return doc, layout


# ---------------------------------------------------------------------------
# Multicolored clique -> PD recount
# ---------------------------------------------------------------------------


def reduce_mcc_to_pd_rec(graph: ColoredGraph):
    """Weighted PD recount instance that is a yes iff the graph has a clique
    with one vertex per color class.

    Only district winners matter under PD, so every non-baseline district is
    realized with a single voter voting for its designated winner in each
    profile.  Baseline districts (one per non-dummy candidate, immutable) pad
    every non-dummy candidate's manipulated score to the same value.
    """
    _require_colored(graph)
    k = graph.k
    n_vertices = graph.n
    n_edges = graph.num_edges
    coloring = graph.coloring
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    pair_pos = {p: idx for idx, p in enumerate(pairs)}

    # Candidate indices in tie order: R_i, R_ij, w, c_v, a_e, h_e, d_v.
    chall = {i: i for i in range(k)}
    pair_chall = {p: k + pair_pos[p] for p in pairs}
    w = k + len(pairs)
    main = {v: w + 1 + v for v in range(n_vertices)}
    aux = {e: w + 1 + n_vertices + idx for idx, e in enumerate(graph.edges)}
    helper = {e: w + 1 + n_vertices + n_edges + idx for idx, e in enumerate(graph.edges)}
    dummy = {v: w + 1 + n_vertices + 2 * n_edges + v for v in range(n_vertices)}
    m = w + 1 + 2 * n_vertices + 2 * n_edges

    candidate_names = (
        [f"R{i}" for i in range(k)]
        + [f"R{i}-{j}" for i, j in pairs]
        + ["w"]
        + [f"c{v}" for v in range(n_vertices)]
        + [f"a{u}-{v}" for u, v in graph.edges]
        + [f"h{u}-{v}" for u, v in graph.edges]
        + [f"d{v}" for v in range(n_vertices)]
    )

    # Mutable districts, then one immutable baseline per non-dummy candidate.
    district_names: list[str] = []
    weights: list[int] = []
    rows: list[tuple[int, int]] = []  # (original winner, manipulated winner)
    district_roles: dict = {}

    def add(name, weight, orig_winner, manip_winner, role):
        district_names.append(name)
        weights.append(weight)
        rows.append((orig_winner, manip_winner))
        district_roles[name] = role

    for v in range(n_vertices):
        add(f"Dv{v}", 1, main[v], chall[coloring[v]],
            {"role": "primary", "vertex": v})
        add(f"Dc{v}", k, dummy[v], main[v],
            {"role": "critical", "vertex": v})
    for e in graph.edges:
        u, v = e
        add(f"E{u}-{v}", 1, helper[e], pair_chall[(coloring[u], coloring[v])],
            {"role": "edge", "edge": [u, v], "first": u})
        add(f"E{v}-{u}", 1, helper[e], pair_chall[(coloring[v], coloring[u])],
            {"role": "edge", "edge": [u, v], "first": v})
        add(f"S{u}-{v}", 2, aux[e], helper[e],
            {"role": "support", "edge": [u, v]})
        add(f"T{u}-{v}@{u}", 1, main[u], aux[e],
            {"role": "transfer", "edge": [u, v], "endpoint": u})
        add(f"T{u}-{v}@{v}", 1, main[v], aux[e],
            {"role": "transfer", "edge": [u, v], "endpoint": v})

    lambda_w = (n_vertices + 1) * k + 6 * n_edges
    manip_score = [0] * m
    for weight, (_, mw) in zip(weights, rows):
        manip_score[mw] += weight
    non_dummy = list(range(w + 1 + n_vertices + 2 * n_edges))
    for c in non_dummy:
        lam = lambda_w - manip_score[c]
        if lam < 1:
            raise ReductionError("baseline weight would be non-positive")
        add(f"B_{candidate_names[c]}", lam, c, c, {"role": "baseline", "candidate": candidate_names[c]})

    k_districts = len(district_names)
    original = np.zeros((k_districts, m), dtype=np.int64)
    manipulated = np.zeros((k_districts, m), dtype=np.int64)
    for d, (ow, mw) in enumerate(rows):
        original[d, ow] = 1
        manipulated[d, mw] = 1

    instance = ElectionInstance(
        num_candidates=m,
        weights=tuple(weights),
        gammas=(1,) * k_districts,
        tie=TieOrder(tuple(range(m))),
        original=VoteProfile(original),
        manipulated=VoteProfile(manipulated),
    )
    budget = 2 * k + 5 * (k * (k - 1) // 2)
    problem = ProblemSpec(kind="rec", rule=Rule.PD, preferred=w, budget_defender=budget)
    doc = ElectionDocument(tuple(candidate_names), tuple(district_names), instance, problem)

    candidate_roles = {"w": {"role": "special"}}
    candidate_roles.update({f"R{i}": {"role": "class_challenger", "class": i} for i in range(k)})
    candidate_roles.update(
        {f"R{i}-{j}": {"role": "pair_challenger", "classes": [i, j]} for i, j in pairs}
    )
    candidate_roles.update({f"c{v}": {"role": "main", "vertex": v} for v in range(n_vertices)})
    candidate_roles.update(
        {f"a{u}-{v}": {"role": "auxiliary", "edge": [u, v]} for u, v in graph.edges}
    )
    candidate_roles.update(
        {f"h{u}-{v}": {"role": "helper", "edge": [u, v]} for u, v in graph.edges}
    )
    candidate_roles.update({f"d{v}": {"role": "dummy", "vertex": v} for v in range(n_vertices)})
    layout = ReductionLayout(
        family="mcc-pd-rec",
        scalars={"k": k, "lambda_w": lambda_w, "budget_defender": budget,
                 "n_vertices": n_vertices, "n_edges": n_edges},
        district_roles=district_roles,
        candidate_roles=candidate_roles,
    )
    return doc, layout


# ---------------------------------------------------------------------------
# Witness decoding
# ---------------------------------------------------------------------------


def decode_witness(layout: ReductionLayout, district_names: Iterable[str]) -> dict:
    """Translate an election-side witness (district names) back to graph
    elements.  Returns {"vertices": [...], "edges": [...]}."""
    vertices = set()
    edges = set()
    for name in district_names:
        role = layout.district_roles.get(name)
        if role is None:
            raise ReductionError(f"district {name!r} is not part of this layout")
        kind = role["role"]
        if layout.family == "ds-pv-rec":
            if kind == "primary":
                vertices.add(role["vertex"])
        elif layout.family == "mcc-pv-man":
            if kind == "primary":
                vertices.add(role["vertex"])
            elif kind == "secondary":
                edges.add(tuple(role["edge"]))
        elif layout.family == "mcc-pd-rec":
            if kind == "critical":
                vertices.add(role["vertex"])
            elif kind == "support":
                edges.add(tuple(role["edge"]))
        else:
            raise ReductionError(f"unknown layout family {layout.family!r}")
    return {"vertices": sorted(vertices), "edges": sorted(edges)}
