"""Witness verification using only core model operations.

Deliberately independent of the solvers' search code: a claimed witness is
re-checked from the problem definition alone.
"""

from __future__ import annotations

import numpy as np

from electiongame.documents import ElectionDocument
from electiongame.manipulate import ManipulationStrategy, attacker_wins
from electiongame.model import (
    ModelError,
    apply_recount,
    scores,
    validate_manipulation,
    winner_from_scores,
)
from electiongame.recount import diff_districts


def verify_rec_witness(doc: ElectionDocument, recount_names) -> tuple[bool, str]:
    if doc.problem.kind != "rec":
        return False, "witness kind does not match the problem"
    inst = doc.instance
    try:
        restored = frozenset(doc.district_index(name) for name in recount_names)
    except ModelError as exc:
        return False, str(exc)
    if len(restored) != len(list(recount_names)):
        return False, "recount set contains duplicates"
    diff = frozenset(diff_districts(inst))
    if not restored <= diff:
        extra = sorted(restored - diff)
        return False, (
            f"district {doc.district_names[extra[0]]} is identical in both profiles; "
            "recounting it is not part of an admissible witness"
        )
    if len(restored) > doc.problem.budget_defender:
        return False, (
            f"recount set of size {len(restored)} exceeds the defender budget "
            f"{doc.problem.budget_defender}"
        )
    u = apply_recount(inst.original, inst.manipulated, diff, restored)
    sc = scores(doc.problem.rule, u, inst.weights, inst.tie)
    realized = winner_from_scores(sc, inst.tie)
    if realized != doc.problem.preferred:
        return False, (
            f"after recounting, {doc.candidate_names[realized]} wins, "
            f"not {doc.candidate_names[doc.problem.preferred]}"
        )
    return True, "witness verified"


def verify_man_witness(doc: ElectionDocument, touched_names, replacement) -> tuple[bool, str]:
    if doc.problem.kind != "man":
        return False, "witness kind does not match the problem"
    inst = doc.instance
    try:
        touched = frozenset(doc.district_index(name) for name in touched_names)
        rows = {}
        for name, row_map in replacement.items():
            i = doc.district_index(name)
            row = np.zeros(inst.m, dtype=np.int64)
            for cname, count in row_map.items():
                row[doc.candidate_index(cname)] = count
            rows[i] = tuple(int(x) for x in row)
        strategy = ManipulationStrategy(touched, rows)
    except ModelError as exc:
        return False, str(exc)
    violations = validate_manipulation(inst, strategy, doc.problem.budget_attacker)
    if violations:
        return False, violations[0].detail
    if not attacker_wins(
        inst, doc.problem.preferred, strategy,
        doc.problem.budget_attacker, doc.problem.budget_defender,
        doc.problem.rule, doc.problem.defender_tie,
    ):
        return False, "the manipulation does not survive optimal recounting"
    return True, "witness verified"


def verify_witness(doc: ElectionDocument, witness: dict) -> tuple[bool, str]:
    if witness.get("kind") == "rec":
        return verify_rec_witness(doc, witness["recount"])
    return verify_man_witness(doc, witness["touched"], witness["replacement"])
