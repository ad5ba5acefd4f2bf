"""Random instance generators and brute-force oracles shared by the tests.

The brute-force helpers here intentionally share no code with the solvers:
they enumerate complete strategy spaces directly from the game definitions.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from electiongame.graphs import ColoredGraph
from electiongame.model import (
    ElectionInstance,
    ManipulationStrategy,
    Rule,
    TieOrder,
    VoteProfile,
    apply_recount,
    swap_distance,
    scores,
    winner_from_scores,
)


def random_tie(rng: random.Random, m: int) -> TieOrder:
    ranking = list(range(m))
    rng.shuffle(ranking)
    return TieOrder(tuple(ranking))


def random_profile(rng: random.Random, k: int, m: int, max_count: int = 4) -> np.ndarray:
    return np.array(
        [[rng.randint(0, max_count) for _ in range(m)] for _ in range(k)],
        dtype=np.int64,
    )


def random_rec_instance(
    rng: random.Random, k: int, m: int, max_count: int = 4, max_weight: int = 3
) -> ElectionInstance:
    """Random instance carrying both profiles with matching row sums."""
    original = random_profile(rng, k, m, max_count)
    manipulated = original.copy()
    for i in range(k):
        n_i = int(original[i].sum())
        if n_i and rng.random() < 0.8:
            row = [0] * m
            for _ in range(n_i):
                row[rng.randrange(m)] += 1
            manipulated[i] = row
    sizes = original.sum(axis=1)
    return ElectionInstance(
        num_candidates=m,
        weights=tuple(rng.randint(1, max_weight) for _ in range(k)),
        gammas=tuple(int(s) for s in sizes),
        tie=random_tie(rng, m),
        original=VoteProfile(original),
        manipulated=VoteProfile(manipulated),
    )


def random_man_instance(
    rng: random.Random, k: int, m: int, max_count: int = 3, max_weight: int = 3
) -> ElectionInstance:
    original = random_profile(rng, k, m, max_count)
    sizes = original.sum(axis=1)
    return ElectionInstance(
        num_candidates=m,
        weights=tuple(rng.randint(1, max_weight) for _ in range(k)),
        gammas=tuple(rng.randint(0, int(s)) for s in sizes),
        tie=random_tie(rng, m),
        original=VoteProfile(original),
        manipulated=None,
    )


def random_colored_graph(
    rng: random.Random, n: int, k: int, edge_prob: float = 0.5
) -> ColoredGraph:
    """Random properly colored graph with every class non-empty (needs n >= k)."""
    coloring = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(coloring)
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n), 2)
        if coloring[u] != coloring[v] and rng.random() < edge_prob
    ]
    return ColoredGraph(n=n, edges=tuple(edges), coloring=tuple(coloring), k=k)


def brute_force_rec(instance: ElectionInstance, preferred: int, budget: int, rule: Rule):
    """Plain 2^|diff| enumeration; returns the min-size lex-least witness or None."""
    diff = [
        i for i in range(instance.k)
        if not np.array_equal(instance.original.counts[i], instance.manipulated.counts[i])
    ]
    for size in range(min(budget, len(diff)) + 1):
        for restored in itertools.combinations(diff, size):
            u = apply_recount(instance.original, instance.manipulated, diff, restored)
            sc = scores(rule, u, instance.weights, instance.tie)
            if winner_from_scores(sc, instance.tie) == preferred:
                return frozenset(restored)
    return None


def all_rows(total: int, m: int):
    """Every non-negative integer row of length m summing to `total`."""
    if m == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in all_rows(total - first, m - 1):
            yield (first,) + rest


def brute_force_min_swaps(row, target: int, tie: TieOrder):
    """Minimum swaps making `target` win `row`, moving votes only into the
    target (moves between two non-target candidates never help)."""
    import math

    row = tuple(int(x) for x in row)
    m = len(row)
    others = [c for c in range(m) if c != target]
    best = math.inf
    take_ranges = [range(row[c] + 1) for c in others]
    for takes in itertools.product(*take_ranges):
        new_row = list(row)
        for c, t in zip(others, takes):
            new_row[c] -= t
        new_row[target] += sum(takes)
        if winner_from_scores(np.asarray(new_row), tie) == target:
            best = min(best, sum(takes))
    return best


def brute_force_man(instance, preferred, budget_attacker, budget_defender, rule,
                    defender_tie="pessimistic"):
    """Decide the manipulation game by enumerating every admissible strategy
    and every defender response, using only core model operations."""
    per_district = []
    for i in range(instance.k):
        row = tuple(int(x) for x in instance.original.row(i))
        options = [
            cand for cand in all_rows(sum(row), instance.m)
            if swap_distance(row, cand) <= instance.gammas[i]
        ]
        per_district.append(options)
    for size in range(min(budget_attacker, instance.k) + 1):
        for touched in itertools.combinations(range(instance.k), size):
            for rows in itertools.product(*(per_district[i] for i in touched)):
                strategy = ManipulationStrategy(frozenset(touched), dict(zip(touched, rows)))
                manipulated = strategy.build_profile(instance)
                outcomes = []
                for r in range(min(budget_defender, size) + 1):
                    for restored in itertools.combinations(touched, r):
                        u = apply_recount(instance.original, manipulated, touched, restored)
                        sc = scores(rule, u, instance.weights, instance.tie)
                        w = winner_from_scores(sc, instance.tie)
                        outcomes.append((w, int(sc[w])))
                best = max(welfare for _, welfare in outcomes)
                winners = {w for w, welfare in outcomes if welfare == best}
                if defender_tie == "optimistic":
                    if preferred in winners:
                        return True
                elif winners == {preferred}:
                    return True
    return False
