"""Transitivity-based consistency scoring for pairwise preference annotations.

An annotator's self-consistency is measured per fully judged item triple: the
triple counts as consistent iff the induced at-least-as-preferred relation is
transitive. Chance-corrected agreement then follows the familiar kappa shape

    kappa = (p_a - p_e) / (1 - p_e)

where p_a is the observed share of transitive triples and p_e the share of
triple configurations that are transitive when each pair relation is drawn
uniformly. Everything here is exact rational arithmetic; decimal rendering is
left to the reporting layer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NoCompleteTriples, TieInStrictMode
from .model import (
    AnnotatorId,
    Criterion,
    ItemId,
    Mode,
    PreferenceRelation,
    Relation,
    assert_mode,
)

#: Placeholder items used by the abstract enumeration.
ABSTRACT_ITEMS = ("x", "y", "z")

STRICT_MODE_WARNING = (
    "strict mode: 6 of 8 configurations are transitive, so chance agreement is "
    "3/4 and the kappa has little headroom; the measure is designed for weak "
    "preferences"
)


@dataclass(frozen=True)
class TripletConfig:
    """The three pairwise relations over one unordered item triple.

    ``items`` is the triple in sorted order and ``rels`` holds the relations
    for the pairs (x, y), (x, z), (y, z), each oriented along that pair.
    """

    items: tuple[ItemId, ItemId, ItemId]
    rels: tuple[Relation, Relation, Relation]

    def __post_init__(self) -> None:
        x, y, z = self.items
        if not (x < y < z):
            raise ValueError(f"triple {self.items!r} must be three distinct items in sorted order")
        if len(self.rels) != 3:
            raise ValueError("a triplet config needs exactly three relations")

    @property
    def pair_slots(self) -> tuple[tuple[ItemId, ItemId], ...]:
        x, y, z = self.items
        return ((x, y), (x, z), (y, z))

    @classmethod
    def from_relation(cls, relation: PreferenceRelation, triple: Sequence[ItemId]) -> "TripletConfig":
        """Extract the config for ``triple``; all three pairs must be judged."""
        x, y, z = sorted(triple)
        rels = (relation.get(x, y), relation.get(x, z), relation.get(y, z))
        if any(rel is None for rel in rels):
            raise ValueError(f"triple {(x, y, z)!r} is not fully judged")
        return cls(items=(x, y, z), rels=rels)  # type: ignore[arg-type]


def _weak_dominance(config: TripletConfig) -> list[list[bool]]:
    # ge[i][j] means item i is at least as preferred as item j.
    ge = [[i == j for j in range(3)] for i in range(3)]
    slots = ((0, 1), (0, 2), (1, 2))
    for (i, j), rel in zip(slots, config.rels):
        if rel is Relation.LEFT:
            ge[i][j] = True
        elif rel is Relation.RIGHT:
            ge[j][i] = True
        else:
            ge[i][j] = True
            ge[j][i] = True
    return ge


def is_transitive(config: TripletConfig, mode: Mode = Mode.WEAK) -> bool:
    """Whether the triple's induced at-least-as-preferred relation is transitive."""
    if mode is Mode.STRICT and Relation.TIE in config.rels:
        x, y, z = config.items
        slot = config.rels.index(Relation.TIE)
        raise TieInStrictMode(config.pair_slots[slot])
    ge = _weak_dominance(config)
    return all(
        ge[i][k]
        for i in range(3)
        for j in range(3)
        for k in range(3)
        if ge[i][j] and ge[j][k]
    )


def enumerate_configs(mode: Mode) -> list[tuple[TripletConfig, bool]]:
    """All abstract triple configurations with their transitivity verdict.

    Weak mode yields the 27 assignments of {left, right, tie} to the three
    pairs (13 transitive, one per total preorder on three labeled elements);
    strict mode the 8 tie-free ones (6 transitive, one per linear order).
    The order is deterministic: itertools.product over the pair slots.
    """
    alphabet = (Relation.LEFT, Relation.RIGHT) if mode is Mode.STRICT else (
        Relation.LEFT,
        Relation.RIGHT,
        Relation.TIE,
    )
    out = []
    for rels in itertools.product(alphabet, repeat=3):
        config = TripletConfig(items=ABSTRACT_ITEMS, rels=rels)
        out.append((config, is_transitive(config, mode)))
    return out


def expand_directional_patterns() -> list[TripletConfig]:
    """The 64 sign expansions of the 8 at-most-preferred directional patterns.

    A weak judgment of a triple can be written as one of 8 patterns that fix a
    direction per pair, each direction meaning "preferred or tied". Splitting
    every such pair into its strict and tied readings yields 8 x 8 = 64
    sequences; deduplicating them collapses onto the 27 distinct configs
    (37 repetitions), which is the reconciliation the chance term rests on.
    """
    sequences = []
    # Direction True keeps the slot's canonical orientation, False reverses it.
    for directions in itertools.product((True, False), repeat=3):
        for strictness in itertools.product((True, False), repeat=3):
            rels = []
            for forward, strict in zip(directions, strictness):
                if not strict:
                    rels.append(Relation.TIE)
                elif forward:
                    rels.append(Relation.LEFT)
                else:
                    rels.append(Relation.RIGHT)
            sequences.append(TripletConfig(items=ABSTRACT_ITEMS, rels=tuple(rels)))
    return sequences


def chance_expected_agreement(mode: Mode) -> Fraction:
    """Probability that a uniformly random triple configuration is transitive.

    Counted from :func:`enumerate_configs`, never hard-coded: 13/27 in weak
    mode, 6/8 in strict mode.
    """
    configs = enumerate_configs(mode)
    transitive = sum(1 for _, ok in configs if ok)
    return Fraction(transitive, len(configs))


def complete_triples(
    relation: PreferenceRelation,
    blocks: Iterable[Sequence[ItemId]] | None = None,
) -> list[TripletConfig]:
    """Configs for every item triple whose three pairs are all judged.

    ``blocks`` restricts the scan to designated triples (e.g. a block design
    where annotators only ever saw fixed triplets); blocks with unjudged pairs
    are skipped, mirroring the unrestricted behaviour.
    """
    if blocks is None:
        candidates = itertools.combinations(sorted(relation.items), 3)
    else:
        normalized = set()
        for block in blocks:
            triple = tuple(sorted(block))
            if len(triple) != 3 or len(set(triple)) != 3:
                raise ValueError(f"block {tuple(block)!r} is not a triple of distinct items")
            normalized.add(triple)
        candidates = iter(sorted(normalized))

    out = []
    for triple in candidates:
        x, y, z = triple
        if (
            relation.get(x, y) is not None
            and relation.get(x, z) is not None
            and relation.get(y, z) is not None
        ):
            out.append(TripletConfig.from_relation(relation, triple))
    return out


@dataclass(frozen=True)
class IAReport:
    """Per-annotator consistency record (one annotator, one criterion)."""

    annotator: AnnotatorId | None
    criterion: Criterion | None
    mode: Mode
    triples_total: int
    triples_transitive: int
    p_a: Fraction
    p_e: Fraction
    kappa: Fraction
    warning: str | None = None

    def __post_init__(self) -> None:
        if self.triples_total < 1:
            raise ValueError("a report needs at least one complete triple")
        if not 0 <= self.p_a <= 1:
            raise ValueError(f"p_a out of range: {self.p_a}")
        if self.kappa != (self.p_a - self.p_e) / (1 - self.p_e):
            raise ValueError("kappa does not match (p_a - p_e) / (1 - p_e)")


def ia_kappa(
    relation: PreferenceRelation,
    mode: Mode,
    blocks: Iterable[Sequence[ItemId]] | None = None,
) -> IAReport:
    """Chance-corrected transitivity agreement for one annotator's relation."""
    assert_mode(relation, mode)
    triples = complete_triples(relation, blocks)
    if not triples:
        raise NoCompleteTriples()
    transitive = sum(1 for config in triples if is_transitive(config, mode))
    p_a = Fraction(transitive, len(triples))
    p_e = chance_expected_agreement(mode)
    return IAReport(
        annotator=relation.annotator,
        criterion=relation.criterion,
        mode=mode,
        triples_total=len(triples),
        triples_transitive=transitive,
        p_a=p_a,
        p_e=p_e,
        kappa=(p_a - p_e) / (1 - p_e),
        warning=STRICT_MODE_WARNING if mode is Mode.STRICT else None,
    )
