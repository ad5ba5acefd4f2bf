"""Election data model: vote profiles, districted plurality winners, and the
manipulation / recount algebra.

Candidates and districts are dense integer indices (0..m-1 and 0..k-1); names
only exist in the file I/O layer.  All operations here are pure functions over
immutable values.
"""

from __future__ import annotations

import dataclasses
import enum
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional

import numpy as np

# Totals above this are rejected so that score arithmetic (including the
# search kernels' margin bookkeeping) stays comfortably inside int64.
MAX_TOTAL = 2**40


class Rule(enum.Enum):
    """Vote aggregation rule: plurality over voters or over districts."""

    PV = "pv"
    PD = "pd"


class ModelError(ValueError):
    """Raised for structurally invalid model inputs."""


@dataclasses.dataclass(frozen=True)
class TieOrder:
    """Linear order over candidates; earlier in `ranking` means favored."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(int(c) for c in self.ranking))
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ModelError("tie order must be a permutation of 0..m-1")

    @property
    def m(self) -> int:
        return len(self.ranking)

    @cached_property
    def rank(self) -> np.ndarray:
        """rank[c] = position of candidate c (0 = most favored)."""
        r = np.empty(len(self.ranking), dtype=np.int64)
        for pos, c in enumerate(self.ranking):
            r[c] = pos
        r.setflags(write=False)
        return r

    def prefers(self, a: int, b: int) -> bool:
        return self.rank[a] < self.rank[b]

    @property
    def favorite(self) -> int:
        return self.ranking[0]


def _as_counts(counts, ndim: int) -> np.ndarray:
    arr = np.array(counts, dtype=np.int64, copy=True)
    if arr.ndim != ndim:
        raise ModelError(f"expected {ndim}-dimensional counts, got shape {arr.shape}")
    if (arr < 0).any():
        raise ModelError("vote counts must be non-negative")
    arr.setflags(write=False)
    return arr


@dataclasses.dataclass(frozen=True)
class VoteProfile:
    """Districts x candidates matrix of non-negative vote counts."""

    counts: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "counts", _as_counts(self.counts, 2))
        if int(self.counts.sum()) > MAX_TOTAL:
            raise ModelError("total vote count too large for safe integer arithmetic")

    @property
    def num_districts(self) -> int:
        return self.counts.shape[0]

    @property
    def num_candidates(self) -> int:
        return self.counts.shape[1]

    @cached_property
    def district_sizes(self) -> np.ndarray:
        sizes = self.counts.sum(axis=1)
        sizes.setflags(write=False)
        return sizes

    def row(self, district: int) -> np.ndarray:
        return self.counts[district]

    def __eq__(self, other) -> bool:
        return isinstance(other, VoteProfile) and np.array_equal(self.counts, other.counts)

    def __hash__(self):
        return hash(self.counts.tobytes())


@dataclasses.dataclass(frozen=True)
class District:
    """A voter block: size is derived from the profile rows."""

    weight: int
    gamma: int

    def __post_init__(self):
        if self.weight < 1:
            raise ModelError("district weight must be a positive integer")
        if self.gamma < 0:
            raise ModelError("district gamma must be non-negative")


@dataclasses.dataclass(frozen=True)
class ElectionInstance:
    """A districted election, optionally carrying a manipulated profile.

    Rec problems require `manipulated`; Man problems start from `original`
    only (the solver produces the manipulated profile).
    """

    num_candidates: int
    weights: tuple[int, ...]
    gammas: tuple[int, ...]
    tie: TieOrder
    original: VoteProfile
    manipulated: Optional[VoteProfile] = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "gammas", tuple(int(g) for g in self.gammas))
        m, k = self.num_candidates, len(self.weights)
        if m < 1 or k < 1:
            raise ModelError("need at least one candidate and one district")
        if self.tie.m != m:
            raise ModelError("tie order size does not match candidate count")
        if self.original.counts.shape != (k, m):
            raise ModelError("original profile shape does not match instance")
        if len(self.gammas) != k:
            raise ModelError("gamma count does not match district count")
        if any(w < 1 for w in self.weights):
            raise ModelError("district weights must be positive")
        sizes = self.original.district_sizes
        for i, g in enumerate(self.gammas):
            if not 0 <= g <= sizes[i]:
                raise ModelError(f"gamma of district {i} must lie in [0, n_i]")
        if sum(self.weights) > MAX_TOTAL:
            raise ModelError("total district weight too large for safe arithmetic")
        if self.manipulated is not None:
            if self.manipulated.counts.shape != (k, m):
                raise ModelError("manipulated profile shape does not match instance")
            if not np.array_equal(sizes, self.manipulated.district_sizes):
                raise ModelError("profiles must preserve per-district voter totals")

    @property
    def m(self) -> int:
        return self.num_candidates

    @property
    def k(self) -> int:
        return len(self.weights)

    @property
    def n(self) -> int:
        return int(self.original.district_sizes.sum())

    def with_manipulated(self, manipulated: VoteProfile) -> "ElectionInstance":
        return dataclasses.replace(self, manipulated=manipulated)


# A recounting strategy is just a set of district indices.
RecountSet = frozenset


@dataclasses.dataclass(frozen=True)
class ManipulationStrategy:
    """Set M of touched districts plus their replacement vote rows."""

    touched: frozenset
    replacement: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(self, "touched", frozenset(int(i) for i in self.touched))
        rep = {int(i): tuple(int(x) for x in row) for i, row in self.replacement.items()}
        object.__setattr__(self, "replacement", rep)
        if set(rep) != set(self.touched):
            raise ModelError("replacement rows must cover exactly the touched districts")

    def build_profile(self, instance: ElectionInstance) -> VoteProfile:
        """Materialize the full manipulated profile against `instance`."""
        counts = instance.original.counts.copy()
        for i, row in self.replacement.items():
            counts[i] = row
        return VoteProfile(counts)


class Violation(NamedTuple):
    kind: str  # "budget" | "sum" | "cap"
    district: Optional[int]
    detail: str


# ---------------------------------------------------------------------------
# Scores, winners and the beats relation
# ---------------------------------------------------------------------------


def pv_scores(profile: VoteProfile) -> np.ndarray:
    """Per-candidate vote totals; district weights are irrelevant under PV."""
    return profile.counts.sum(axis=0)


def pd_district_winner(profile: VoteProfile, district: int, tie: TieOrder) -> int:
    """Plurality winner of one district, ties broken by the tie order.

    An empty district (all-zero row) elects the tie order's favorite.
    """
    return _row_winner(profile.row(district), tie)


def _row_winner(row: np.ndarray, tie: TieOrder) -> int:
    # argmax over the row re-ordered by tie rank: the first maximum is the
    # tie-break winner.
    order = np.asarray(tie.ranking)
    return int(order[np.argmax(row[order])])


def pd_district_winners(profile: VoteProfile, tie: TieOrder) -> np.ndarray:
    order = np.asarray(tie.ranking)
    return order[np.argmax(profile.counts[:, order], axis=1)]


def pd_scores(profile: VoteProfile, weights, tie: TieOrder) -> np.ndarray:
    """Per-candidate total weight of districts the candidate wins."""
    winners = pd_district_winners(profile, tie)
    out = np.zeros(profile.num_candidates, dtype=np.int64)
    np.add.at(out, winners, np.asarray(weights, dtype=np.int64))
    return out


def scores(rule: Rule, profile: VoteProfile, weights, tie: TieOrder) -> np.ndarray:
    if rule is Rule.PV:
        return pv_scores(profile)
    return pd_scores(profile, weights, tie)


def beats(a: int, b: int, score_vector, tie: TieOrder) -> bool:
    """True iff a outscores b, or ties with b and is favored by the tie order."""
    if a == b:
        raise ModelError("beats is only defined for distinct candidates")
    sa, sb = int(score_vector[a]), int(score_vector[b])
    return sa > sb or (sa == sb and tie.prefers(a, b))


def winner_from_scores(score_vector, tie: TieOrder) -> int:
    return _row_winner(np.asarray(score_vector), tie)


def winner(rule: Rule, profile: VoteProfile, weights, tie: TieOrder) -> int:
    """The unique candidate beating all others under the given rule."""
    return winner_from_scores(scores(rule, profile, weights, tie), tie)


def rivals(profile: VoteProfile, p: int, rule: Rule, weights, tie: TieOrder) -> set:
    """Candidates that beat p under the current scores and tie order."""
    sc = scores(rule, profile, weights, tie)
    return {c for c in range(profile.num_candidates) if c != p and beats(c, p, sc, tie)}


# ---------------------------------------------------------------------------
# Manipulation / recount algebra
# ---------------------------------------------------------------------------


def swap_distance(row_a, row_b) -> int:
    """Number of single-vote swaps between two rows of equal total."""
    a = np.asarray(row_a, dtype=np.int64)
    b = np.asarray(row_b, dtype=np.int64)
    if a.shape != b.shape:
        raise ModelError("rows must have the same number of candidates")
    if int(a.sum()) != int(b.sum()):
        raise ModelError("swap distance is undefined for rows of unequal totals")
    return int(np.abs(a - b).sum()) // 2


def apply_recount(
    original: VoteProfile,
    manipulated: VoteProfile,
    touched: Iterable[int],
    restored: Iterable[int],
) -> VoteProfile:
    """Resulting profile after the defender restores `restored` (subset of
    `touched`): manipulated rows survive only on touched-but-not-restored
    districts."""
    touched = frozenset(int(i) for i in touched)
    restored = frozenset(int(i) for i in restored)
    if not restored <= touched:
        raise ModelError("restored districts must be a subset of the touched set")
    counts = original.counts.copy()
    for i in touched - restored:
        counts[i] = manipulated.counts[i]
    return VoteProfile(counts)


def validate_manipulation(
    instance: ElectionInstance,
    strategy: ManipulationStrategy,
    budget_attacker: int,
) -> list[Violation]:
    """Check a manipulation strategy; empty list means it is admissible."""
    violations: list[Violation] = []
    if len(strategy.touched) > budget_attacker:
        violations.append(
            Violation("budget", None, f"|M|={len(strategy.touched)} exceeds budget {budget_attacker}")
        )
    sizes = instance.original.district_sizes
    for i in sorted(strategy.touched):
        if not 0 <= i < instance.k:
            violations.append(Violation("sum", i, f"district {i} does not exist"))
            continue
        row = np.asarray(strategy.replacement[i], dtype=np.int64)
        if row.shape != (instance.m,) or (row < 0).any():
            violations.append(Violation("sum", i, f"replacement row of district {i} is malformed"))
            continue
        if int(row.sum()) != int(sizes[i]):
            violations.append(
                Violation("sum", i, f"replacement row of district {i} does not sum to n_i={int(sizes[i])}")
            )
            continue
        dist = swap_distance(instance.original.row(i), row)
        if dist > instance.gammas[i]:
            violations.append(
                Violation("cap", i, f"swap distance {dist} exceeds gamma={instance.gammas[i]} in district {i}")
            )
    return violations
