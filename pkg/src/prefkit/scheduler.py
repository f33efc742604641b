"""Adaptive annotation sessions that never ask an already-deducible pair.

The session keeps a partition of the items into indifference classes plus an
acyclic strict-dominance relation between classes, maintained transitively
closed after every answer. A pair is *determined* when its items share a class
or one class dominates the other; answers on determined pairs are rejected, so
a contradiction with the closure is impossible by construction and the strict
relation stays a DAG.

Two question-selection strategies ship:

* random   - uniform over the currently undetermined pairs, seeded and
             replayable (the draw depends only on the answer history, not on
             how often the next pair was peeked at);
* insertion - items are placed one at a time by binary search against the
             chain of already-placed classes, which on an n-item strict linear
             order asks only about sum(ceil(log2 k), k=2..n) questions.

A session is a single-writer state machine: callers must serialize record()
calls per session. Reads are safe once no writer is active.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DuplicateItems,
    PairAlreadyDetermined,
    SessionNotDone,
    TieInStrictMode,
    TooFewItems,
    UnknownPair,
)
from .model import (
    AnnotatorId,
    Criterion,
    ItemId,
    Judgment,
    Mode,
    Pair,
    PreferenceRelation,
    Relation,
    all_pairs,
    canonical_pair,
)
from .representation import check_strongly_complete, check_transitive

_SEED_MIX = 2654435761  # Knuth multiplicative constant, keeps per-step seeds apart


class Strategy(enum.Enum):
    RANDOM = "random"
    INSERTION = "insertion"


@dataclass(frozen=True)
class SessionStats:
    n_items: int
    pairs_total: int
    pairs_asked: int
    pairs_inferred: int
    savings_ratio: float

    def __post_init__(self) -> None:
        if self.pairs_asked + self.pairs_inferred > self.pairs_total:
            raise ValueError("asked + inferred exceeds the total pair count")


class Session:
    """Live state of one adaptive annotation run. See module docstring."""

    def __init__(
        self,
        items: Sequence[ItemId],
        mode: Mode = Mode.WEAK,
        strategy: Strategy = Strategy.RANDOM,
        seed: int = 0,
        annotator: AnnotatorId | None = None,
        criterion: Criterion | None = None,
    ):
        items = list(items)
        duplicates = sorted({x for x in items if items.count(x) > 1})
        if duplicates:
            raise DuplicateItems(duplicates)
        if len(items) < 2:
            raise TooFewItems(len(items))
        if any(not item for item in items):
            raise ValueError("items must be non-empty strings")

        self.items: tuple[ItemId, ...] = tuple(items)
        self.mode = mode
        self.strategy = strategy
        self.seed = seed
        self.annotator = annotator
        self.criterion = criterion

        self.asked: list[tuple[Pair, Relation]] = []
        self.inferred: dict[Pair, Relation] = {}
        # Indifference classes: one singleton per item to start with.
        self._class_of: dict[ItemId, int] = {item: i for i, item in enumerate(self.items)}
        self._members: dict[int, set[ItemId]] = {i: {item} for i, item in enumerate(self.items)}
        self._below: dict[int, set[int]] = {i: set() for i in self._members}  # strictly dominated
        self._above: dict[int, set[int]] = {i: set() for i in self._members}  # strictly dominating
        self._log: list[tuple[Pair, Relation, str]] = []
        self._all_pairs: list[Pair] = all_pairs(self.items)

    # -- queries ------------------------------------------------------------

    @property
    def pairs_total(self) -> int:
        n = len(self.items)
        return n * (n - 1) // 2

    @property
    def done(self) -> bool:
        return len(self.asked) + len(self.inferred) == self.pairs_total

    @property
    def status(self) -> str:
        return "done" if self.done else "active"

    def determined(self, a: ItemId, b: ItemId) -> Relation | None:
        """Relation forced by the answers so far, oriented as (a, b), else None."""
        if a not in self._class_of or b not in self._class_of:
            raise UnknownPair(tuple(sorted((a, b))))  # type: ignore[arg-type]
        ca, cb = self._class_of[a], self._class_of[b]
        if ca == cb:
            return Relation.TIE
        if cb in self._below[ca]:
            return Relation.LEFT
        if ca in self._below[cb]:
            return Relation.RIGHT
        return None

    def undetermined_pairs(self) -> list[Pair]:
        return [p for p in self._all_pairs if self.determined(*p) is None]

    def next_pair(self) -> Pair | None:
        """A pair whose relation is not yet deducible, or None when done.

        Pure in the session state: peeking repeatedly returns the same pair
        until the next answer is recorded.
        """
        if self.done:
            return None
        if self.strategy is Strategy.INSERTION:
            return self._insertion_proposal()
        candidates = self.undetermined_pairs()
        rng = random.Random(self.seed * _SEED_MIX + len(self.asked) + 1)
        return rng.choice(candidates)

    def _insertion_proposal(self) -> Pair | None:
        # Chain of placed classes, most preferred first. An item is "placed"
        # once its relation to every chain class is determined; the first
        # unplaced item is compared against the midpoint of its open range.
        chain: list[int] = []
        for item in self.items:
            cid = self._class_of[item]
            if cid in chain:
                continue
            lo, hi = 0, len(chain)
            for index, other in enumerate(chain):
                if other in self._above[cid]:
                    lo = index + 1
                elif other in self._below[cid]:
                    hi = min(hi, index)
            if lo == hi:
                chain.insert(lo, cid)
                continue
            mid = (lo + hi) // 2
            partner = min(self._members[chain[mid]])
            return tuple(sorted((item, partner)))  # type: ignore[return-value]
        raise AssertionError("all items placed but session not done")

    # -- mutation -----------------------------------------------------------

    def record(self, left: ItemId, right: ItemId, relation: Relation) -> list[tuple[Pair, Relation]]:
        """Record an answer for an undetermined pair.

        Returns the newly inferred pairs (canonical orientation), sorted. The
        transitive closure is rematerialized eagerly, so after this call every
        deducible pair is accounted for in ``inferred``.
        """
        key, rel = canonical_pair(left, right, relation)
        if key[0] not in self._class_of or key[1] not in self._class_of:
            raise UnknownPair(key)
        if self.determined(*key) is not None:
            raise PairAlreadyDetermined(key)
        if rel is Relation.TIE and self.mode is Mode.STRICT:
            raise TieInStrictMode(key)

        known_before = {p for p, _ in self.asked} | set(self.inferred)
        ca, cb = self._class_of[key[0]], self._class_of[key[1]]
        if rel is Relation.TIE:
            self._merge(ca, cb)
        elif rel is Relation.LEFT:
            self._add_edge(ca, cb)
        else:
            self._add_edge(cb, ca)

        self.asked.append((key, rel))
        self._log.append((key, rel, "asked"))
        newly = []
        for pair in self._all_pairs:
            if pair == key or pair in known_before:
                continue
            forced = self.determined(*pair)
            if forced is not None:
                newly.append((pair, forced))
        for pair, forced in newly:
            self.inferred[pair] = forced
            self._log.append((pair, forced, "inferred"))

        assert all(cid not in self._below[cid] for cid in self._below), "dominance cycle"
        return newly

    def _add_edge(self, upper: int, lower: int) -> None:
        uppers = {upper} | self._above[upper]
        lowers = {lower} | self._below[lower]
        assert not uppers & lowers, "edge would close a cycle"
        for u in uppers:
            for l in lowers:
                self._below[u].add(l)
                self._above[l].add(u)

    def _merge(self, ca: int, cb: int) -> None:
        keep, gone = min(ca, cb), max(ca, cb)
        below = self._below[keep] | self._below[gone]
        above = self._above[keep] | self._above[gone]
        assert keep not in below and gone not in below, "merge would close a cycle"
        assert not below & above, "merge would close a cycle"

        for item in self._members[gone]:
            self._class_of[item] = keep
        self._members[keep] |= self._members.pop(gone)
        del self._below[gone], self._above[gone]
        for sets in (self._below, self._above):
            for cid in sets:
                if gone in sets[cid]:
                    sets[cid].discard(gone)
                    sets[cid].add(keep)
        self._below[keep] = below - {keep}
        self._above[keep] = above - {keep}
        # Paths through the merged class are new: close over them.
        for u in self._above[keep]:
            for l in self._below[keep]:
                self._below[u].add(l)
                self._above[l].add(u)

    # -- results ------------------------------------------------------------

    def final_relation(self) -> PreferenceRelation:
        """The complete relation over all pairs; only available when done."""
        if not self.done:
            raise SessionNotDone()
        pairs = dict(self.asked)
        pairs.update(self.inferred)
        relation = PreferenceRelation(
            items=frozenset(self.items),
            pairs=pairs,
            annotator=self.annotator,
            criterion=self.criterion,
        )
        assert check_strongly_complete(relation, self.items).complete, "final relation incomplete"
        assert check_transitive(relation).transitive, "final relation intransitive"
        return relation

    def stats(self) -> SessionStats:
        total = self.pairs_total
        return SessionStats(
            n_items=len(self.items),
            pairs_total=total,
            pairs_asked=len(self.asked),
            pairs_inferred=len(self.inferred),
            savings_ratio=len(self.inferred) / total,
        )

    def transcript(self) -> list[Judgment]:
        """Asked and inferred pairs in determination order, flagged by source."""
        return [
            Judgment(
                annotator=self.annotator or "annotator",
                criterion=self.criterion or "preference",
                left=pair[0],
                right=pair[1],
                relation=rel,
                source=source,
            )
            for pair, rel, source in self._log
        ]


def create_session(
    items: Sequence[ItemId],
    mode: Mode = Mode.WEAK,
    strategy: Strategy = Strategy.RANDOM,
    seed: int = 0,
    annotator: AnnotatorId | None = None,
    criterion: Criterion | None = None,
) -> Session:
    """Start an adaptive annotation session over distinct items (at least 2)."""
    return Session(items, mode=mode, strategy=strategy, seed=seed, annotator=annotator, criterion=criterion)
