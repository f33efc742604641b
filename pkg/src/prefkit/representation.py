"""From relative to absolute: score functions for consistent preference relations.

A relation that is strongly complete and transitive (a total preorder) can be
mirrored by a numeric function: score(x) counts the items x is at least as
preferred as. The construction is verified against the source relation before
anything is returned, so a returned table always satisfies

    x at-least-as-preferred-as y  <=>  score(x) >= score(y)

for every judged pair. Only linear transforms of the scores are meaningful;
:func:`scale_scores` exposes integer scaling and nothing fancier.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NotComplete, NotTransitive
from .model import ItemId, Pair, PreferenceRelation, all_pairs


@dataclass(frozen=True)
class CompletenessReport:
    complete: bool
    missing_pairs: list[Pair]

    def __post_init__(self) -> None:
        if self.complete != (not self.missing_pairs):
            raise ValueError("complete flag contradicts missing_pairs")


@dataclass(frozen=True)
class TransitivityReport:
    transitive: bool
    violations: list[tuple[ItemId, ItemId, ItemId]]

    def __post_init__(self) -> None:
        if self.transitive != (not self.violations):
            raise ValueError("transitive flag contradicts violations")


@dataclass(frozen=True)
class ScoreTable:
    """Integer scores mirroring a relation, with the relation kept for re-checks."""

    scores: Mapping[ItemId, int]
    relation: PreferenceRelation
    scale: int = 1

    def __post_init__(self) -> None:
        if self.scale < 1:
            raise ValueError("scale must be a positive integer")
        limit = (len(self.scores) - 1) * self.scale
        if self.scores and max(self.scores.values()) > limit:
            raise ValueError(f"scores exceed the attainable maximum {limit}")
        _verify_representation(self.relation, self.scores)


def check_strongly_complete(
    relation: PreferenceRelation, items: Iterable[ItemId]
) -> CompletenessReport:
    """Every unordered pair over ``items`` must be judged (any relation counts)."""
    roster = set(items)
    if not set(relation.items) <= roster:
        raise ValueError(f"relation mentions items outside the roster: {sorted(set(relation.items) - roster)!r}")
    missing = [pair for pair in all_pairs(roster) if pair not in relation.pairs]
    return CompletenessReport(complete=not missing, missing_pairs=missing)


def check_transitive(relation: PreferenceRelation) -> TransitivityReport:
    """Transitivity of the induced at-least-as-preferred relation.

    Checked over every item triple whose three pairs are all judged; triples
    with unjudged pairs assert nothing and are skipped.
    """
    violations = []
    for triple in itertools.combinations(sorted(relation.items), 3):
        rels = [relation.get(a, b) for a, b in itertools.combinations(triple, 2)]
        if any(rel is None for rel in rels):
            continue
        if not _triple_transitive(relation, triple):
            violations.append(triple)
    return TransitivityReport(transitive=not violations, violations=violations)


def _triple_transitive(relation: PreferenceRelation, triple: tuple[ItemId, ...]) -> bool:
    for a, b, c in itertools.permutations(triple, 3):
        if relation.weakly_prefers(a, b) and relation.weakly_prefers(b, c):
            if not relation.weakly_prefers(a, c):
                return False
    return True


def _verify_representation(relation: PreferenceRelation, scores: Mapping[ItemId, int]) -> None:
    # Defense against construction bugs: the iff must hold in both directions
    # of every judged pair, O(n^2) and worth it.
    for a, b in relation.pairs:
        for x, y in ((a, b), (b, a)):
            if relation.weakly_prefers(x, y) != (scores[x] >= scores[y]):
                raise AssertionError(
                    f"representation property violated on pair {(x, y)!r}: "
                    f"scores {scores[x]}, {scores[y]}"
                )


def derive_scores(relation: PreferenceRelation, items: Iterable[ItemId] | None = None) -> ScoreTable:
    """Construct the counting score function for a complete, transitive relation.

    score(x) = number of items y != x with x at least as preferred as y; tied
    items therefore get equal scores and the bottom element gets 0. Raises
    :class:`NotComplete` / :class:`NotTransitive` when the preconditions fail.
    """
    roster = set(items) if items is not None else set(relation.items)
    completeness = check_strongly_complete(relation, roster)
    if not completeness.complete:
        raise NotComplete(completeness.missing_pairs)
    transitivity = check_transitive(relation)
    if not transitivity.transitive:
        raise NotTransitive(transitivity.violations)

    scores = {
        x: sum(1 for y in roster if y != x and relation.weakly_prefers(x, y))
        for x in sorted(roster)
    }
    return ScoreTable(scores=scores, relation=relation)


def scale_scores(table: ScoreTable, n: int) -> ScoreTable:
    """Multiply every score by a positive integer; the mirror property survives."""
    if n < 1:
        raise ValueError("scale factor must be a positive integer")
    return ScoreTable(
        scores={item: value * n for item, value in table.scores.items()},
        relation=table.relation,
        scale=table.scale * n,
    )
