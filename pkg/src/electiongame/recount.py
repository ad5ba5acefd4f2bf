"""Exact recount solver: decision + witness for PV-Rec and PD-Rec.

The search enumerates recount subsets of the districts where the two profiles
differ, by increasing cardinality and then lexicographically, so the returned
witness is the minimum-cardinality, lexicographically least one.
"""

from __future__ import annotations

import dataclasses
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from electiongame import kernels
from electiongame.model import (
    ElectionInstance,
    ModelError,
    Rule,
    pd_district_winners,
    pv_scores,
    pd_scores,
)


@dataclasses.dataclass(frozen=True)
class RecProblem:
    instance: ElectionInstance
    preferred: int
    budget: int
    rule: Rule

    def __post_init__(self):
        if self.instance.manipulated is None:
            raise ModelError("recount problems require a manipulated profile")
        if self.budget < 0:
            raise ModelError("defender budget must be non-negative")
        if not 0 <= self.preferred < self.instance.m:
            raise ModelError("preferred candidate out of range")


@dataclasses.dataclass(frozen=True)
class RecAnswer:
    decision: bool
    witness: Optional[frozenset]
    nodes: int


def diff_districts(instance: ElectionInstance) -> tuple[int, ...]:
    """Districts whose original and manipulated rows differ.

    Recounting any other district is a no-op, so the search is restricted to
    this set without loss of generality.
    """
    if instance.manipulated is None:
        raise ModelError("no manipulated profile present")
    diff = np.any(instance.original.counts != instance.manipulated.counts, axis=1)
    return tuple(int(i) for i in np.nonzero(diff)[0])


def _search_inputs(problem: RecProblem):
    """Base scores of the fully-manipulated profile plus per-district score
    deltas of restoring each differing district.  Both rules are linear in
    the restore indicators, so one kernel serves both."""
    inst = problem.instance
    diff = diff_districts(inst)
    if problem.rule is Rule.PV:
        base = pv_scores(inst.manipulated)
        deltas = inst.original.counts[list(diff)] - inst.manipulated.counts[list(diff)]
    else:
        base = pd_scores(inst.manipulated, inst.weights, inst.tie)
        orig_w = pd_district_winners(inst.original, inst.tie)
        manip_w = pd_district_winners(inst.manipulated, inst.tie)
        deltas = np.zeros((len(diff), inst.m), dtype=np.int64)
        for j, i in enumerate(diff):
            deltas[j, orig_w[i]] += inst.weights[i]
            deltas[j, manip_w[i]] -= inst.weights[i]
    return np.asarray(base, dtype=np.int64), np.asarray(deltas, dtype=np.int64), diff


def default_threads() -> int:
    env = os.environ.get("ELECTIONGAME_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _search_size(kernel, base, deltas, target, rank, size, threads, prune):
    d = len(deltas)
    if threads <= 1 or size == 0 or d < 2 * threads:
        return kernel.search_subsets(base, deltas, target, rank, size, prune=prune)
    # Partition the first chosen index across workers; within a partition the
    # kernel returns its lex-least hit, and any hit from an earlier partition
    # is lex-smaller than one from a later partition, so picking the earliest
    # hit keeps the result schedule-independent.
    limit = d - size + 1
    bounds = np.linspace(0, limit, threads + 1, dtype=int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(kernel.search_subsets, base, deltas, target, rank, size,
                        int(lo), int(hi), prune)
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if lo < hi
        ]
        results = [f.result() for f in futures]
    nodes = sum(n for _, n in results)
    for subset, _ in results:
        if subset is not None:
            return subset, nodes
    return None, nodes


def solve_rec(
    problem: RecProblem,
    kernel_name: Optional[str] = None,
    threads: Optional[int] = None,
    prune: bool = True,
) -> RecAnswer:
    """Decide a Rec problem and return a canonical witness when the answer
    is yes."""
    kernel = kernels.get_kernel(kernel_name)
    threads = default_threads() if threads is None else max(1, threads)
    base, deltas, diff = _search_inputs(problem)
    budget = min(problem.budget, len(diff))
    rank = problem.instance.tie.rank
    total_nodes = 0
    for size in range(budget + 1):
        subset, nodes = _search_size(
            kernel, base, deltas, problem.preferred, rank, size, threads, prune
        )
        total_nodes += nodes
        if subset is not None:
            witness = frozenset(diff[j] for j in subset)
            return RecAnswer(True, witness, total_nodes)
    return RecAnswer(False, None, total_nodes)


def min_recount(
    instance: ElectionInstance,
    preferred: int,
    rule: Rule,
    kernel_name: Optional[str] = None,
    threads: Optional[int] = None,
):
    """Smallest recount-set size making `preferred` win, or math.inf."""
    diff = diff_districts(instance)
    problem = RecProblem(instance, preferred, len(diff), rule)
    answer = solve_rec(problem, kernel_name=kernel_name, threads=threads)
    if not answer.decision:
        return math.inf
    return len(answer.witness)
