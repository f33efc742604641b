"""Shared test helpers: independent oracles and random relation generators."""

from __future__ import annotations

import itertools
import random

import pytest

from prefkit.model import Judgment, PreferenceRelation, Relation, build_relation


def J(annotator, left, right, relation, criterion="quality", **kwargs):
    rel = {"<": Relation.RIGHT, ">": Relation.LEFT, "~": Relation.TIE}.get(relation, relation)
    return Judgment(annotator=annotator, criterion=criterion, left=left, right=right, relation=rel, **kwargs)


def relation_of(annotator, criterion, *triples) -> PreferenceRelation:
    """Build a relation from (left, right, '>'|'<'|'~') triples."""
    return build_relation(
        [J(annotator, l, r, rel, criterion=criterion) for l, r, rel in triples],
        annotator,
        criterion,
    )


def oracle_triple_transitive(rels) -> bool:
    """Value-assignment oracle: a triple is consistent iff some v in {0,1,2}^3
    maps strict pairs to strict inequality and ties to equality.

    ``rels`` are the relations for the index pairs (0,1), (0,2), (1,2).
    Deliberately independent of the library's closure-based check.
    """
    slots = {(0, 1): rels[0], (0, 2): rels[1], (1, 2): rels[2]}
    for values in itertools.product(range(3), repeat=3):
        ok = True
        for (i, j), rel in slots.items():
            if rel is Relation.LEFT:
                ok = values[i] > values[j]
            elif rel is Relation.RIGHT:
                ok = values[i] < values[j]
            else:
                ok = values[i] == values[j]
            if not ok:
                break
        if ok:
            return True
    return False


def relation_from_scores(scores, annotator="sim", criterion="quality") -> PreferenceRelation:
    """The total preorder induced by an item -> score table, as a judged relation."""
    items = sorted(scores)
    pairs = {}
    for a, b in itertools.combinations(items, 2):
        if scores[a] > scores[b]:
            pairs[(a, b)] = Relation.LEFT
        elif scores[a] < scores[b]:
            pairs[(a, b)] = Relation.RIGHT
        else:
            pairs[(a, b)] = Relation.TIE
    return PreferenceRelation(
        items=frozenset(items), pairs=pairs, annotator=annotator, criterion=criterion
    )


def random_scores(n: int, rng: random.Random, strict: bool = False) -> dict[str, int]:
    items = [f"s{i}" for i in range(1, n + 1)]
    if strict:
        values = list(range(n))
        rng.shuffle(values)
        return dict(zip(items, values))
    return {item: rng.randrange(n) for item in items}


@pytest.fixture
def table1_csv() -> bytes:
    from prefkit.datasets import table1_path

    return table1_path().read_bytes()
