"""Recount solver tests: hand-built cases, a naive enumeration oracle, and
structural properties of the answers."""

import math

import numpy as np
import pytest

from helpers import brute_force_rec, random_rec_instance
from electiongame.model import (
    ElectionInstance,
    ModelError,
    Rule,
    TieOrder,
    VoteProfile,
    apply_recount,
    scores,
    winner_from_scores,
)
from electiongame.recount import RecProblem, diff_districts, min_recount, solve_rec


def make(original, manipulated, weights=None, tie=None):
    original = np.asarray(original, dtype=np.int64)
    k, m = original.shape
    return ElectionInstance(
        num_candidates=m,
        weights=weights or (1,) * k,
        gammas=tuple(int(s) for s in original.sum(axis=1)),
        tie=tie or TieOrder(tuple(range(m))),
        original=VoteProfile(original),
        manipulated=VoteProfile(np.asarray(manipulated, dtype=np.int64)),
    )


class TestHandCases:
    def test_pv_single_district_restores_winner(self):
        # [TRIVIAL] restoring district 1 gives candidate 0 the PV lead back
        inst = make([[2, 1], [3, 0]], [[2, 1], [0, 3]])
        answer = solve_rec(RecProblem(inst, preferred=0, budget=1, rule=Rule.PV))
        assert answer.decision and answer.witness == frozenset({1})

    def test_pv_budget_zero_fails(self):
        inst = make([[2, 1], [3, 0]], [[2, 1], [0, 3]])
        answer = solve_rec(RecProblem(inst, preferred=0, budget=0, rule=Rule.PV))
        assert not answer.decision and answer.witness is None

    def test_already_winning_needs_empty_recount(self):
        inst = make([[3, 0]], [[2, 1]])
        answer = solve_rec(RecProblem(inst, preferred=0, budget=3, rule=Rule.PV))
        assert answer.decision and answer.witness == frozenset()

    def test_pd_weighted_district(self):
        # candidate 1 stole the weight-5 district; restoring it flips PD back
        inst = make(
            [[2, 0], [0, 2]], [[0, 2], [0, 2]],
            weights=(5, 1),
        )
        answer = solve_rec(RecProblem(inst, preferred=0, budget=1, rule=Rule.PD))
        assert answer.decision and answer.witness == frozenset({0})

    def test_witness_is_min_cardinality_then_lex(self):
        # both {1} and {2} work; {1} is returned
        inst = make(
            [[4, 0], [4, 0], [4, 0]],
            [[4, 0], [0, 4], [0, 4]],
        )
        answer = solve_rec(RecProblem(inst, preferred=0, budget=3, rule=Rule.PV))
        assert answer.witness == frozenset({1})

    def test_requires_manipulated_profile(self):
        inst = ElectionInstance(
            num_candidates=2, weights=(1,), gammas=(0,),
            tie=TieOrder((0, 1)), original=VoteProfile([[1, 1]]),
        )
        with pytest.raises(ModelError):
            RecProblem(inst, preferred=0, budget=1, rule=Rule.PV)


class TestDiffDistricts:
    def test_only_changed_rows_listed(self):
        inst = make([[2, 1], [1, 2], [3, 0]], [[2, 1], [2, 1], [0, 3]])
        assert diff_districts(inst) == (1, 2)

    def test_witness_subset_of_diff(self, rng):
        for _ in range(100):
            inst = random_rec_instance(rng, rng.randint(1, 5), rng.randint(2, 4))
            answer = solve_rec(RecProblem(inst, 0, inst.k, Rule.PV))
            if answer.decision:
                assert answer.witness <= frozenset(diff_districts(inst))


class TestAgainstBruteForce:
    @pytest.mark.parametrize("rule", list(Rule))
    def test_random_instances(self, rng, rule):
        for _ in range(250):
            k = rng.randint(1, 6)
            m = rng.randint(2, 4)
            inst = random_rec_instance(rng, k, m)
            preferred = rng.randrange(m)
            budget = rng.randint(0, k)
            expect = brute_force_rec(inst, preferred, budget, rule)
            answer = solve_rec(RecProblem(inst, preferred, budget, rule))
            assert answer.decision == (expect is not None)
            if answer.decision:
                # same size; recheck the solver's witness independently
                assert len(answer.witness) == len(expect)
                diff = diff_districts(inst)
                u = apply_recount(inst.original, inst.manipulated, diff, answer.witness)
                sc = scores(rule, u, inst.weights, inst.tie)
                assert winner_from_scores(sc, inst.tie) == preferred

    def test_pruning_and_threads_do_not_change_answers(self, rng):
        for _ in range(60):
            inst = random_rec_instance(rng, rng.randint(2, 6), 3)
            problem = RecProblem(inst, rng.randrange(3), rng.randint(0, 4), Rule.PV)
            baseline = solve_rec(problem)
            assert solve_rec(problem, prune=False).witness == baseline.witness
            assert solve_rec(problem, threads=3).witness == baseline.witness
            assert solve_rec(problem, kernel_name="python").witness == baseline.witness


class TestProperties:
    def test_budget_monotone(self, rng):
        """A yes at budget b stays a yes at any larger budget."""
        for _ in range(150):
            inst = random_rec_instance(rng, rng.randint(1, 5), 3)
            preferred = rng.randrange(3)
            decisions = [
                solve_rec(RecProblem(inst, preferred, b, Rule.PV)).decision
                for b in range(inst.k + 1)
            ]
            assert decisions == sorted(decisions)

    def test_min_recount_matches_solver(self, rng):
        for _ in range(80):
            inst = random_rec_instance(rng, rng.randint(1, 5), 3)
            mr = min_recount(inst, 0, Rule.PV)
            if mr is math.inf:
                assert not solve_rec(RecProblem(inst, 0, inst.k, Rule.PV)).decision
            else:
                assert solve_rec(RecProblem(inst, 0, int(mr), Rule.PV)).decision
                if mr > 0:
                    assert not solve_rec(RecProblem(inst, 0, int(mr) - 1, Rule.PV)).decision
