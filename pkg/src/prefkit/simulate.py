"""Simulated annotators for exercising and benchmarking adaptive sessions.

A ground truth is a total preorder given as an integer score per item; the
simulant answers every asked pair by comparing scores, so its answers are
consistent by construction and the finished session must reproduce the ground
truth exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .model import ItemId, Mode, Pair, Relation
from .scheduler import Session, SessionStats, Strategy, create_session


@dataclass(frozen=True)
class SimulationResult:
    stats: SessionStats
    matches_ground_truth: bool
    asked_pairs: list[Pair]


def ground_truth_relation(scores: Mapping[ItemId, int], a: ItemId, b: ItemId) -> Relation:
    if scores[a] > scores[b]:
        return Relation.LEFT
    if scores[a] < scores[b]:
        return Relation.RIGHT
    return Relation.TIE


def random_ground_truth(
    items: Sequence[ItemId], mode: Mode, rng: random.Random
) -> dict[ItemId, int]:
    """Random scores over the items; strict mode draws a tie-free permutation."""
    if mode is Mode.STRICT:
        values = list(range(len(items)))
        rng.shuffle(values)
        return dict(zip(items, values))
    return {item: rng.randrange(len(items)) for item in items}


def run_session(session: Session, scores: Mapping[ItemId, int]) -> SimulationResult:
    """Drive the session to completion with a score-table simulant."""
    asked = []
    while True:
        pair = session.next_pair()
        if pair is None:
            break
        session.record(pair[0], pair[1], ground_truth_relation(scores, *pair))
        asked.append(pair)

    final = session.final_relation()
    matches = all(
        final.get(a, b) is ground_truth_relation(scores, a, b) for a, b in final.pairs
    )
    return SimulationResult(stats=session.stats(), matches_ground_truth=matches, asked_pairs=asked)


def simulate(
    n_items: int,
    strategy: Strategy,
    seed: int,
    mode: Mode = Mode.WEAK,
    scores: Mapping[ItemId, int] | None = None,
    items: Sequence[ItemId] | None = None,
) -> SimulationResult:
    """Create a session (synthetic items s1..sN by default) and run it end to end."""
    if items is None:
        items = [f"s{i}" for i in range(1, n_items + 1)]
    if scores is None:
        scores = random_ground_truth(items, mode, random.Random(seed))
    else:
        missing = [item for item in items if item not in scores]
        if missing:
            raise ValueError(f"ground truth misses scores for {missing!r}")
        if mode is Mode.STRICT and len(set(scores.values())) != len(items):
            raise ValueError("strict mode needs a tie-free ground truth")
    session = create_session(items, mode=mode, strategy=strategy, seed=seed)
    return run_session(session, scores)
