"""Named election documents: the bridge between the index-based model and
the file / CLI layer, which speaks candidate and district names."""

from __future__ import annotations

import dataclasses
from typing import Optional

from electiongame.manipulate import ManProblem, PESSIMISTIC
from electiongame.model import ElectionInstance, ModelError, Rule
from electiongame.recount import RecProblem


@dataclasses.dataclass(frozen=True)
class ProblemSpec:
    kind: str  # "rec" | "man"
    rule: Rule
    preferred: int
    budget_defender: int
    budget_attacker: Optional[int] = None
    defender_tie: str = PESSIMISTIC

    def __post_init__(self):
        if self.kind not in ("rec", "man"):
            raise ModelError("problem kind must be 'rec' or 'man'")
        if self.kind == "man" and self.budget_attacker is None:
            raise ModelError("man problems need an attacker budget")
        if self.kind == "rec" and self.budget_attacker is not None:
            raise ModelError("rec problems take no attacker budget")


@dataclasses.dataclass(frozen=True)
class ElectionDocument:
    candidate_names: tuple[str, ...]
    district_names: tuple[str, ...]
    instance: ElectionInstance
    problem: ProblemSpec

    def __post_init__(self):
        if len(self.candidate_names) != self.instance.m:
            raise ModelError("candidate name count does not match instance")
        if len(self.district_names) != self.instance.k:
            raise ModelError("district name count does not match instance")
        if len(set(self.candidate_names)) != len(self.candidate_names):
            raise ModelError("candidate names must be unique")
        if len(set(self.district_names)) != len(self.district_names):
            raise ModelError("district names must be unique")

    def candidate_index(self, name: str) -> int:
        try:
            return self.candidate_names.index(name)
        except ValueError:
            raise ModelError(f"unknown candidate {name!r}") from None

    def district_index(self, name: str) -> int:
        try:
            return self.district_names.index(name)
        except ValueError:
            raise ModelError(f"unknown district {name!r}") from None

    def rec_problem(self) -> RecProblem:
        if self.problem.kind != "rec":
            raise ModelError("document does not describe a rec problem")
        return RecProblem(
            instance=self.instance,
            preferred=self.problem.preferred,
            budget=self.problem.budget_defender,
            rule=self.problem.rule,
        )

    def man_problem(self) -> ManProblem:
        if self.problem.kind != "man":
            raise ModelError("document does not describe a man problem")
        return ManProblem(
            instance=self.instance,
            preferred=self.problem.preferred,
            budget_attacker=self.problem.budget_attacker,
            budget_defender=self.problem.budget_defender,
            rule=self.problem.rule,
            defender_tie=self.problem.defender_tie,
        )
