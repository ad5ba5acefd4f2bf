"""Exact manipulation solver: decision + witness for PV-Man and PD-Man.

The attacker picks at most B_A districts and rewrites their rows within the
per-district swap caps; the defender then restores at most B_D of them so as
to maximize the realized winner's social welfare.  The attacker wins when the
preferred candidate survives optimal recounting (under every optimal response
by default, or under some optimal response with the optimistic convention).
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from typing import Optional

import numpy as np

from electiongame import kernels
from electiongame.model import (
    ElectionInstance,
    ManipulationStrategy,
    ModelError,
    Rule,
    TieOrder,
    VoteProfile,
    apply_recount,
    pv_scores,
    scores,
    validate_manipulation,
    winner_from_scores,
)
from electiongame.recount import default_threads, _search_size

PESSIMISTIC = "pessimistic"
OPTIMISTIC = "optimistic"


class SearchSpaceExceeded(RuntimeError):
    """The exact search would exceed the configured node limit."""


@dataclasses.dataclass(frozen=True)
class ManProblem:
    instance: ElectionInstance
    preferred: int
    budget_attacker: int
    budget_defender: int
    rule: Rule
    defender_tie: str = PESSIMISTIC

    def __post_init__(self):
        if self.instance.manipulated is not None:
            raise ModelError("manipulation problems start from the original profile only")
        if self.budget_attacker < 0 or self.budget_defender < 0:
            raise ModelError("budgets must be non-negative")
        if not 0 <= self.preferred < self.instance.m:
            raise ModelError("preferred candidate out of range")
        if self.defender_tie not in (PESSIMISTIC, OPTIMISTIC):
            raise ModelError("defender_tie must be 'pessimistic' or 'optimistic'")


@dataclasses.dataclass(frozen=True)
class ManAnswer:
    decision: bool
    witness: Optional[ManipulationStrategy]
    nodes: int


# ---------------------------------------------------------------------------
# Defender's best response
# ---------------------------------------------------------------------------


def _response_outcomes(instance, manipulated, touched, budget_defender, rule):
    """All admissible recount sets with the winner and welfare each realizes."""
    touched = sorted(touched)
    outcomes = []
    for r in range(min(budget_defender, len(touched)) + 1):
        for restored in itertools.combinations(touched, r):
            u = apply_recount(instance.original, manipulated, touched, restored)
            sc = scores(rule, u, instance.weights, instance.tie)
            w = winner_from_scores(sc, instance.tie)
            outcomes.append((frozenset(restored), w, int(sc[w])))
    return outcomes


def defender_best_responses(
    instance: ElectionInstance,
    strategy: ManipulationStrategy,
    budget_defender: int,
    rule: Rule,
) -> set:
    """The recount sets maximizing the realized winner's social welfare."""
    manipulated = strategy.build_profile(instance)
    outcomes = _response_outcomes(
        instance, manipulated, strategy.touched, budget_defender, rule
    )
    best = max(welfare for _, _, welfare in outcomes)
    return {restored for restored, _, welfare in outcomes if welfare == best}


def attacker_wins(
    instance: ElectionInstance,
    preferred: int,
    strategy: ManipulationStrategy,
    budget_attacker: int,
    budget_defender: int,
    rule: Rule,
    defender_tie: str = PESSIMISTIC,
) -> bool:
    """Does this manipulation survive optimal recounting?"""
    violations = validate_manipulation(instance, strategy, budget_attacker)
    if violations:
        raise ModelError(f"invalid manipulation strategy: {violations[0].detail}")
    manipulated = strategy.build_profile(instance)
    outcomes = _response_outcomes(
        instance, manipulated, strategy.touched, budget_defender, rule
    )
    best = max(welfare for _, _, welfare in outcomes)
    optimal_winners = [w for _, w, welfare in outcomes if welfare == best]
    if defender_tie == OPTIMISTIC:
        return any(w == preferred for w in optimal_winners)
    return all(w == preferred for w in optimal_winners)


# ---------------------------------------------------------------------------
# Per-district subproblems
# ---------------------------------------------------------------------------


def _district_beats(count_a, a, count_b, b, tie: TieOrder) -> bool:
    return count_a > count_b or (count_a == count_b and tie.prefers(a, b))


def greedy_swap_row(row, target: int, tie: TieOrder):
    """Minimum single-vote transfers into `target` until it wins the row,
    together with the resulting row.

    Donors are taken greedily: always from a currently-beating candidate with
    the highest count, ties among donors broken toward the candidate
    strongest in the tie order.  Returns (math.inf, None) only for empty rows
    whose tie-break favorite is not the target.
    """
    counts = [int(x) for x in row]
    m = len(counts)
    if sum(counts) == 0:
        if target == tie.favorite:
            return 0, tuple(counts)
        return math.inf, None
    swaps = 0
    while True:
        beaters = [
            c for c in range(m)
            if c != target and _district_beats(counts[c], c, counts[target], target, tie)
        ]
        if not beaters:
            return swaps, tuple(counts)
        top = max(counts[c] for c in beaters)
        donor = min((c for c in beaters if counts[c] == top), key=lambda c: tie.rank[c])
        counts[donor] -= 1
        counts[target] += 1
        swaps += 1


def min_swaps_to_win_district(row, target: int, tie: TieOrder):
    """Swap count of `greedy_swap_row` (0 if the target already wins)."""
    swaps, _ = greedy_swap_row(row, target, tie)
    return swaps


def pd_achievable_winners(row, gamma: int, tie: TieOrder) -> set:
    """Candidates that can be made district winner within `gamma` swaps."""
    m = len(row)
    return {c for c in range(m) if min_swaps_to_win_district(row, c, tie) <= gamma}


# ---------------------------------------------------------------------------
# PD-Man
# ---------------------------------------------------------------------------


def solve_pd_man(problem: ManProblem, node_limit: int = 1_000_000) -> ManAnswer:
    """PD manipulation via per-district achievable winners.

    Under PD only a district's winner matters, and recounting restores the
    whole original row, so ranging over achievable winners realized by the
    canonical greedy rows loses no attacker power.
    """
    if problem.rule is not Rule.PD:
        raise ModelError("solve_pd_man requires rule PD")
    inst = problem.instance
    tie = inst.tie

    # Per-district manipulation options: (target, canonical row), skipping
    # the current winner (equivalent to a smaller touched set, tried earlier).
    options = []
    for i in range(inst.k):
        row = inst.original.row(i)
        cur_winner = winner_from_scores(row, tie)  # plurality + tie-break on the row
        opts = []
        for c in range(inst.m):
            if c == cur_winner:
                continue
            swaps, new_row = greedy_swap_row(row, c, tie)
            if swaps <= inst.gammas[i]:
                opts.append((c, new_row))
        options.append(opts)

    nodes = 0
    max_size = min(problem.budget_attacker, inst.k)
    for size in range(max_size + 1):
        for touched in itertools.combinations(range(inst.k), size):
            if any(not options[i] for i in touched):
                continue
            for picks in itertools.product(*(options[i] for i in touched)):
                nodes += 1
                if nodes > node_limit:
                    raise SearchSpaceExceeded(
                        f"search space exceeded: more than {node_limit} strategies"
                    )
                strategy = ManipulationStrategy(
                    frozenset(touched),
                    {i: row for i, (_, row) in zip(touched, picks)},
                )
                if attacker_wins(
                    inst, problem.preferred, strategy,
                    problem.budget_attacker, problem.budget_defender,
                    problem.rule, problem.defender_tie,
                ):
                    return ManAnswer(True, strategy, nodes)
    return ManAnswer(False, None, nodes)


# ---------------------------------------------------------------------------
# PV-Man
# ---------------------------------------------------------------------------


def _take_vectors(row, p: int, gamma: int):
    """All ways to remove a maximal number of votes (min(gamma, available))
    from non-p candidates, lex order over the per-candidate take counts.

    With no defender budget, crediting every removed vote to p and removing
    as many votes as the cap allows weakly dominates any other rewrite of the
    row, so restricting to these vectors preserves the decision.
    """
    row = [int(x) for x in row]
    m = len(row)
    donors = [c for c in range(m) if c != p and row[c] > 0]
    total = min(gamma, sum(row[c] for c in donors))
    suffix_cap = [0] * (len(donors) + 1)
    for j in range(len(donors) - 1, -1, -1):
        suffix_cap[j] = suffix_cap[j + 1] + row[donors[j]]

    vectors = []

    def rec(j, remaining, acc):
        if j == len(donors):
            vec = [0] * m
            for c, t in acc:
                vec[c] = t
            vectors.append(tuple(vec))
            return
        c = donors[j]
        low = max(0, remaining - suffix_cap[j + 1])
        high = min(row[c], remaining)
        for t in range(low, high + 1):
            rec(j + 1, remaining - t, acc + [(c, t)])

    rec(0, total, [])
    return total, vectors


def _apply_take(row, p, vec):
    new_row = [int(x) - t for x, t in zip(row, vec)]
    new_row[p] += sum(vec)
    return tuple(new_row)


def _pv_beats_all(score_vector, p, tie: TieOrder) -> bool:
    rank = tie.rank
    sp = score_vector[p]
    for c in range(len(score_vector)):
        if c == p:
            continue
        sc = score_vector[c]
        if sc > sp or (sc == sp and rank[c] < rank[p]):
            return False
    return True


def solve_pv_man(
    problem: ManProblem,
    node_limit: int = 1_000_000,
    kernel_name: Optional[str] = None,
    threads: Optional[int] = None,
) -> ManAnswer:
    """PV manipulation.

    With no defender budget the search ranges over canonical "take vectors"
    (votes removed from non-preferred candidates, all credited to the
    preferred candidate, maximal total): any winning strategy can be rewritten
    into this family without hurting the preferred candidate.  With a positive
    defender budget recount interactions can make non-canonical rows matter,
    so the solver falls back to full per-district row enumeration and fails
    loudly when that space exceeds `node_limit`.
    """
    if problem.rule is not Rule.PV:
        raise ModelError("solve_pv_man requires rule PV")
    if problem.budget_defender > 0:
        return _solve_pv_man_exhaustive(problem, node_limit)
    inst = problem.instance
    p = problem.preferred
    per_district = [
        _take_vectors(inst.original.row(i), p, inst.gammas[i]) for i in range(inst.k)
    ]

    if all(len(vecs) == 1 for _, vecs in per_district):
        return _solve_pv_man_kernel(problem, per_district, kernel_name, threads)

    base = pv_scores(inst.original)
    nodes = 0
    max_size = min(problem.budget_attacker, inst.k)
    for size in range(max_size + 1):
        for touched in itertools.combinations(range(inst.k), size):
            for vecs in itertools.product(*(per_district[i][1] for i in touched)):
                nodes += 1
                if nodes > node_limit:
                    raise SearchSpaceExceeded(
                        f"search space exceeded: more than {node_limit} strategies"
                    )
                sc = base.copy()
                for i, vec in zip(touched, vecs):
                    sc -= np.asarray(vec, dtype=np.int64)
                    sc[p] += sum(vec)
                if _pv_beats_all(sc, p, inst.tie):
                    strategy = ManipulationStrategy(
                        frozenset(touched),
                        {i: _apply_take(inst.original.row(i), p, vec)
                         for i, vec in zip(touched, vecs)},
                    )
                    return ManAnswer(True, strategy, nodes)
    return ManAnswer(False, None, nodes)


def _solve_pv_man_kernel(problem, per_district, kernel_name, threads):
    """Fast path: one canonical rewrite per district makes the search linear
    in touch indicators, which is exactly the subset-search kernel's shape."""
    inst = problem.instance
    p = problem.preferred
    kernel = kernels.get_kernel(kernel_name)
    threads = default_threads() if threads is None else max(1, threads)
    base = np.asarray(pv_scores(inst.original), dtype=np.int64)
    deltas = np.zeros((inst.k, inst.m), dtype=np.int64)
    new_rows = []
    for i, (_, vecs) in enumerate(per_district):
        new_row = _apply_take(inst.original.row(i), p, vecs[0])
        new_rows.append(new_row)
        deltas[i] = np.asarray(new_row, dtype=np.int64) - inst.original.row(i)
    rank = inst.tie.rank
    total_nodes = 0
    for size in range(min(problem.budget_attacker, inst.k) + 1):
        subset, nodes = _search_size(kernel, base, deltas, p, rank, size, threads, True)
        total_nodes += nodes
        if subset is not None:
            strategy = ManipulationStrategy(
                frozenset(subset), {i: new_rows[i] for i in subset}
            )
            return ManAnswer(True, strategy, total_nodes)
    return ManAnswer(False, None, total_nodes)


def _rows_within_swaps(row, gamma: int, node_limit: int):
    """All rows with the same total within `gamma` swaps of `row`, lex order,
    excluding `row` itself."""
    row = tuple(int(x) for x in row)
    m = len(row)
    n = sum(row)
    if math.comb(n + m - 1, m - 1) > node_limit:
        raise SearchSpaceExceeded(
            f"search space exceeded: district with {n} voters and {m} candidates"
        )
    out = []

    def rec(j, remaining, acc):
        if j == m - 1:
            cand = acc + (remaining,)
            if cand != row:
                dist = sum(abs(a - b) for a, b in zip(cand, row)) // 2
                if dist <= gamma:
                    out.append(cand)
            return
        for t in range(remaining + 1):
            rec(j + 1, remaining - t, acc + (t,))

    rec(0, n, ())
    return out


def _solve_pv_man_exhaustive(problem: ManProblem, node_limit: int) -> ManAnswer:
    inst = problem.instance
    per_district = [
        _rows_within_swaps(inst.original.row(i), inst.gammas[i], node_limit)
        for i in range(inst.k)
    ]
    nodes = 0
    max_size = min(problem.budget_attacker, inst.k)
    for size in range(max_size + 1):
        for touched in itertools.combinations(range(inst.k), size):
            if any(not per_district[i] for i in touched):
                continue
            for rows in itertools.product(*(per_district[i] for i in touched)):
                nodes += 1
                if nodes > node_limit:
                    raise SearchSpaceExceeded(
                        f"search space exceeded: more than {node_limit} strategies"
                    )
                strategy = ManipulationStrategy(
                    frozenset(touched), dict(zip(touched, rows))
                )
                if attacker_wins(
                    inst, problem.preferred, strategy,
                    problem.budget_attacker, problem.budget_defender,
                    problem.rule, problem.defender_tie,
                ):
                    return ManAnswer(True, strategy, nodes)
    return ManAnswer(False, None, nodes)


# ---------------------------------------------------------------------------
# Candidate pruning
# ---------------------------------------------------------------------------


def prune_candidates(instance: ElectionInstance, p: int):
    """Drop candidates with zero votes everywhere in both profiles (except p).

    A zero-score candidate cannot beat the winner once anyone has a vote, so
    decisions are unchanged; with zero voters overall the tie-break could
    elect a zero-score candidate, so pruning is refused.
    """
    if instance.n == 0:
        raise ModelError("cannot prune candidates of an election with no voters")
    active = np.any(instance.original.counts > 0, axis=0)
    if instance.manipulated is not None:
        active |= np.any(instance.manipulated.counts > 0, axis=0)
    active[p] = True
    keep = tuple(int(c) for c in np.nonzero(active)[0])
    if len(keep) == instance.m:
        return instance, keep
    pos = {c: j for j, c in enumerate(keep)}
    tie = TieOrder(tuple(pos[c] for c in instance.tie.ranking if c in pos))
    original = instance.original.counts[:, list(keep)]
    manipulated = instance.manipulated.counts[:, list(keep)] if instance.manipulated else None
    reduced = ElectionInstance(
        num_candidates=len(keep),
        weights=instance.weights,
        gammas=instance.gammas,
        tie=tie,
        original=VoteProfile(original),
        manipulated=VoteProfile(manipulated) if manipulated is not None else None,
    )
    return reduced, keep
