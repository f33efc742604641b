import math
import random

import pytest

from prefkit.errors import (
    DuplicateItems,
    PairAlreadyDetermined,
    SessionNotDone,
    TieInStrictMode,
    TooFewItems,
    UnknownPair,
)
from prefkit.model import Mode, Relation
from prefkit.scheduler import Strategy, create_session
from prefkit.simulate import ground_truth_relation, run_session, simulate
from prefkit.transitivity import ia_kappa

from .conftest import random_scores, relation_from_scores


def test_fresh_sessions_expose_all_pairs():
    assert len(create_session(["a", "b"]).undetermined_pairs()) == 1
    assert len(create_session(["a", "b", "c"]).undetermined_pairs()) == 3


def test_roster_validation():
    with pytest.raises(DuplicateItems):
        create_session(["a", "b", "a"])
    with pytest.raises(TooFewItems):
        create_session(["a"])


def test_two_item_session_asks_the_single_pair():
    session = create_session(["a", "b"])
    assert session.next_pair() == ("a", "b")
    session.record("a", "b", Relation.LEFT)
    assert session.next_pair() is None
    stats = session.stats()
    assert (stats.pairs_asked, stats.pairs_inferred) == (1, 0)


def test_chain_answers_infer_the_closing_pair():
    session = create_session(["s1", "s2", "s3"])
    assert session.record("s1", "s2", Relation.LEFT) == []
    newly = session.record("s2", "s3", Relation.LEFT)
    assert newly == [(("s1", "s3"), Relation.LEFT)]
    assert session.done
    relation = session.final_relation()
    assert dict(relation.pairs) == {
        ("s1", "s2"): Relation.LEFT,
        ("s2", "s3"): Relation.LEFT,
        ("s1", "s3"): Relation.LEFT,
    }
    stats = session.stats()
    assert (stats.pairs_asked, stats.pairs_inferred, stats.pairs_total) == (2, 1, 3)


def test_tie_merges_classes_and_substitutes():
    session = create_session(["s1", "s2", "s3"])
    session.record("s1", "s2", Relation.TIE)
    proposal = session.next_pair()
    assert proposal in {("s1", "s3"), ("s2", "s3")}
    newly = session.record("s3", "s1", Relation.LEFT)
    assert newly == [(("s2", "s3"), Relation.RIGHT)]  # s3 dominates the tie class
    assert session.done


def test_inferred_pairs_cannot_be_answered_again():
    session = create_session(["s1", "s2", "s3"])
    session.record("s1", "s2", Relation.LEFT)
    session.record("s2", "s3", Relation.LEFT)
    with pytest.raises(PairAlreadyDetermined):
        session.record("s1", "s3", Relation.LEFT)


def test_unknown_items_are_rejected():
    session = create_session(["s1", "s2"])
    with pytest.raises(UnknownPair):
        session.record("s1", "zz", Relation.LEFT)


def test_strict_mode_rejects_tie_answers():
    session = create_session(["s1", "s2"], mode=Mode.STRICT)
    with pytest.raises(TieInStrictMode):
        session.record("s1", "s2", Relation.TIE)
    session.record("s1", "s2", Relation.LEFT)  # session unharmed by the rejection


def test_final_relation_requires_done():
    session = create_session(["s1", "s2", "s3"])
    with pytest.raises(SessionNotDone):
        session.final_relation()


def test_peeking_does_not_change_the_proposal():
    session = create_session(["a", "b", "c", "d"], seed=3)
    first = session.next_pair()
    assert all(session.next_pair() == first for _ in range(5))


def test_replay_reproduces_ask_order_and_stats():
    def drive(peeks_between):
        session = create_session(["a", "b", "c", "d", "e"], seed=42)
        scores = {"a": 3, "b": 1, "c": 1, "d": 0, "e": 2}
        while (pair := session.next_pair()) is not None:
            for _ in range(peeks_between):
                session.next_pair()
            session.record(pair[0], pair[1], ground_truth_relation(scores, *pair))
        return [p for p, _ in session.asked], session.stats()

    assert drive(0) == drive(3)


def test_replaying_answers_without_peeking_matches():
    original = create_session(["a", "b", "c", "d"], seed=9)
    scores = {"a": 2, "b": 0, "c": 2, "d": 1}
    while (pair := original.next_pair()) is not None:
        original.record(pair[0], pair[1], ground_truth_relation(scores, *pair))

    replayed = create_session(["a", "b", "c", "d"], seed=9)
    for pair, rel in original.asked:
        replayed.record(pair[0], pair[1], rel)
    assert replayed.done
    assert dict(replayed.final_relation().pairs) == dict(original.final_relation().pairs)


@pytest.mark.parametrize("strategy", [Strategy.RANDOM, Strategy.INSERTION])
def test_simulated_annotators_are_reconstructed_exactly(strategy):
    rng = random.Random(2024)
    for _ in range(40):
        n = rng.randint(2, 12)
        scores = random_scores(n, rng)
        session = create_session(sorted(scores), strategy=strategy, seed=rng.randrange(10**6))
        result = run_session(session, scores)
        assert result.matches_ground_truth
        stats = result.stats
        assert stats.pairs_asked + stats.pairs_inferred == stats.pairs_total
        assert 0 <= stats.savings_ratio < 1
        truth = relation_from_scores(scores)
        final = session.final_relation()
        assert dict(final.pairs) == dict(truth.pairs)
        if n >= 3:
            assert ia_kappa(final, Mode.WEAK).kappa == 1


def test_insertion_strategy_meets_binary_search_bound():
    bound = sum(math.ceil(math.log2(k)) for k in range(2, 17))
    assert bound == 49
    rng = random.Random(7)
    for _ in range(10):
        scores = random_scores(16, rng, strict=True)
        result = simulate(16, Strategy.INSERTION, seed=rng.randrange(10**6), mode=Mode.STRICT, scores=scores,
                          items=sorted(scores))
        assert result.stats.pairs_asked <= bound
        assert result.stats.pairs_inferred == 120 - result.stats.pairs_asked


def test_insertion_exploits_ties_heavily():
    # all items tied: n-1 questions suffice, everything else inferred
    session = create_session([f"s{i}" for i in range(1, 9)], strategy=Strategy.INSERTION)
    scores = {item: 0 for item in session.items}
    result = run_session(session, scores)
    assert result.stats.pairs_asked == 7
    assert result.stats.pairs_inferred == 28 - 7


def test_transcript_orders_events_and_flags_sources():
    session = create_session(["s1", "s2", "s3"], annotator="ann", criterion="fluency")
    session.record("s1", "s2", Relation.LEFT)
    session.record("s2", "s3", Relation.LEFT)
    transcript = session.transcript()
    assert [(j.left, j.right, j.source) for j in transcript] == [
        ("s1", "s2", "asked"),
        ("s2", "s3", "asked"),
        ("s1", "s3", "inferred"),
    ]
    assert all(j.annotator == "ann" and j.criterion == "fluency" for j in transcript)


def test_session_status_tracks_coverage():
    session = create_session(["s1", "s2"])
    assert session.status == "active"
    session.record("s1", "s2", Relation.TIE)
    assert session.status == "done"
