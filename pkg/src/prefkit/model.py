"""Core data model: items, judgments, and the preference relation they induce.

Pair keys are always the *unordered* pair in sorted order, with the direction
folded into the :class:`Relation` value. Storing ``(i2, i1, LEFT)`` and
``(i1, i2, RIGHT)`` therefore produces the same entry, which removes a whole
class of orientation bugs before they can happen.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Mapping

from .errors import ConflictingJudgment, MissingTimestamp, TieInStrictMode

#: Items, annotators and criteria are opaque non-empty string tokens.
ItemId = str
AnnotatorId = str
Criterion = str

Pair = tuple[ItemId, ItemId]


class Relation(enum.Enum):
    """Outcome of one pairwise comparison, relative to a (left, right) pair."""

    LEFT = "left"    #: left item preferred
    RIGHT = "right"  #: right item preferred
    TIE = "tie"      #: equally preferred (legal in weak mode only)

    def flip(self) -> "Relation":
        """The same judgment seen from the swapped pair orientation."""
        if self is Relation.LEFT:
            return Relation.RIGHT
        if self is Relation.RIGHT:
            return Relation.LEFT
        return self

    def __repr__(self) -> str:  # keeps test diffs readable
        return self.name


class Mode(enum.Enum):
    """Whether ties are allowed (weak) or forbidden (strict)."""

    WEAK = "weak"
    STRICT = "strict"


class ConflictPolicy(enum.Enum):
    """What to do when one pair carries two distinct relations."""

    ERROR = "error"
    KEEP_LATEST = "keep-latest"


def canonical_pair(a: ItemId, b: ItemId, relation: Relation) -> tuple[Pair, Relation]:
    """Normalize ``(a, b, relation)`` onto the sorted pair key."""
    if a == b:
        raise ValueError(f"pair must contain two distinct items, got {a!r} twice")
    if a <= b:
        return (a, b), relation
    return (b, a), relation.flip()


@dataclass(frozen=True)
class Judgment:
    """One preference act by one annotator under one criterion."""

    annotator: AnnotatorId
    criterion: Criterion
    left: ItemId
    right: ItemId
    relation: Relation
    timestamp: datetime | None = None
    #: set to "asked"/"inferred" on session transcript rows, None otherwise
    source: str | None = None

    def __post_init__(self) -> None:
        for name in ("annotator", "criterion", "left", "right"):
            if not getattr(self, name):
                raise ValueError(f"judgment field {name!r} must be a non-empty string")
        if self.left == self.right:
            raise ValueError(f"judgment compares item {self.left!r} with itself")


@dataclass(frozen=True)
class PreferenceRelation:
    """The binary relation one annotator's judgments induce over a set of items.

    ``pairs`` maps each judged unordered pair (sorted tuple) to the relation
    oriented along that sorted order. Instances are immutable values: build
    them with :func:`build_relation` and share them freely across threads.
    """

    items: frozenset[ItemId]
    pairs: Mapping[Pair, Relation]
    annotator: AnnotatorId | None = None
    criterion: Criterion | None = None

    def __post_init__(self) -> None:
        for (a, b) in self.pairs:
            if not (a < b):
                raise ValueError(f"pair key {(a, b)!r} is not in canonical sorted order")
            if a not in self.items or b not in self.items:
                raise ValueError(f"pair {(a, b)!r} references items outside the relation")

    def get(self, a: ItemId, b: ItemId) -> Relation | None:
        """Relation oriented as (a, b), or None when the pair is unjudged."""
        key, _ = canonical_pair(a, b, Relation.LEFT)
        rel = self.pairs.get(key)
        if rel is None:
            return None
        return rel if key == (a, b) else rel.flip()

    def weakly_prefers(self, a: ItemId, b: ItemId) -> bool:
        """True iff the judged pair says a is at least as preferred as b."""
        return self.get(a, b) in (Relation.LEFT, Relation.TIE)

    def strictly_prefers(self, a: ItemId, b: ItemId) -> bool:
        return self.get(a, b) is Relation.LEFT

    def has_ties(self) -> bool:
        return any(rel is Relation.TIE for rel in self.pairs.values())

    def to_judgments(self) -> list[Judgment]:
        """Re-emit one judgment per pair (canonical orientation, no timestamps)."""
        return [
            Judgment(
                annotator=self.annotator or "unknown",
                criterion=self.criterion or "unknown",
                left=a,
                right=b,
                relation=rel,
            )
            for (a, b), rel in sorted(self.pairs.items())
        ]


def build_relation(
    judgments: Iterable[Judgment],
    annotator: AnnotatorId,
    criterion: Criterion,
    conflict_policy: ConflictPolicy = ConflictPolicy.ERROR,
    items: Iterable[ItemId] | None = None,
) -> PreferenceRelation:
    """Materialize the preference relation for one annotator and criterion.

    Judgments for other annotators/criteria are ignored, so the full dataset
    can be passed as-is. Exact duplicates are deduplicated silently; distinct
    relations on the same pair either raise :class:`ConflictingJudgment` or,
    under keep-latest, resolve to the newest timestamp (ties on timestamp fall
    back to input order).

    ``items`` optionally supplies an explicit roster; by default the item set
    is the union of items mentioned by the selected judgments.
    """
    relevant = [j for j in judgments if j.annotator == annotator and j.criterion == criterion]

    chosen: dict[Pair, Relation] = {}
    latest: dict[Pair, tuple[datetime, int]] = {}
    for index, judgment in enumerate(relevant):
        key, rel = canonical_pair(judgment.left, judgment.right, judgment.relation)
        if conflict_policy is ConflictPolicy.KEEP_LATEST:
            if judgment.timestamp is None:
                raise MissingTimestamp(key)
            stamp = (judgment.timestamp, index)
            if key not in chosen or stamp >= latest[key]:
                chosen[key] = rel
                latest[key] = stamp
        else:
            if key in chosen and chosen[key] is not rel:
                raise ConflictingJudgment(key)
            chosen[key] = rel

    mentioned = {item for key in chosen for item in key}
    roster = frozenset(items) if items is not None else frozenset(mentioned)
    if not mentioned <= roster:
        raise ValueError(f"judged items {sorted(mentioned - roster)!r} missing from the explicit roster")
    return PreferenceRelation(items=roster, pairs=chosen, annotator=annotator, criterion=criterion)


def assert_mode(relation: PreferenceRelation, mode: Mode) -> None:
    """Raise :class:`TieInStrictMode` if a tie is present under strict mode."""
    if mode is Mode.WEAK:
        return
    for pair, rel in sorted(relation.pairs.items()):
        if rel is Relation.TIE:
            raise TieInStrictMode(pair)


def all_pairs(items: Iterable[ItemId]) -> list[Pair]:
    """All unordered pairs over ``items``, each in canonical sorted order."""
    ordered = sorted(set(items))
    return [(a, b) for i, a in enumerate(ordered) for b in ordered[i + 1 :]]
