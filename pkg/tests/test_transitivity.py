import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefkit.errors import NoCompleteTriples, TieInStrictMode
from prefkit.model import Mode, Relation
from prefkit.transitivity import (
    STRICT_MODE_WARNING,
    TripletConfig,
    chance_expected_agreement,
    complete_triples,
    enumerate_configs,
    expand_directional_patterns,
    ia_kappa,
    is_transitive,
)

from .conftest import J, oracle_triple_transitive, relation_of

L, R, T = Relation.LEFT, Relation.RIGHT, Relation.TIE


def config(*rels) -> TripletConfig:
    return TripletConfig(items=("x", "y", "z"), rels=tuple(rels))


def test_chain_is_transitive():
    # x>y, y>z, x>z
    assert is_transitive(config(L, L, L), Mode.WEAK)


def test_cycle_is_not_transitive():
    # x>y, y>z but z>x: no consistent conclusion possible
    assert not is_transitive(config(L, R, L), Mode.WEAK)


def test_ties_force_the_third_pair():
    # x~y, y~z yet x>z
    assert not is_transitive(config(T, L, T), Mode.WEAK)


def test_strict_mode_rejects_ties():
    with pytest.raises(TieInStrictMode):
        is_transitive(config(L, T, L), Mode.STRICT)


def test_closure_check_agrees_with_value_assignment_oracle():
    for cfg, verdict in enumerate_configs(Mode.WEAK):
        assert verdict == oracle_triple_transitive(cfg.rels), cfg
    for cfg, verdict in enumerate_configs(Mode.STRICT):
        assert verdict == oracle_triple_transitive(cfg.rels), cfg


def test_weak_enumeration_counts():
    configs = enumerate_configs(Mode.WEAK)
    assert len(configs) == 27
    assert sum(1 for _, ok in configs if ok) == 13
    assert len({cfg for cfg, _ in configs}) == 27


def test_strict_enumeration_counts():
    configs = enumerate_configs(Mode.STRICT)
    assert len(configs) == 8
    assert sum(1 for _, ok in configs if ok) == 6


def test_reported_repetition_appears_exactly_once():
    # x>y, y~z, x>z is the repetition produced by two directional patterns;
    # the deduplicated enumeration must hold it once.
    target = config(L, L, T)
    weak = [cfg for cfg, _ in enumerate_configs(Mode.WEAK)]
    assert weak.count(target) == 1


def test_expansion_reconciliation_counts():
    sequences = expand_directional_patterns()
    assert len(sequences) == 64
    distinct = set(sequences)
    assert len(distinct) == 27
    assert len(sequences) - len(distinct) == 37
    assert distinct == {cfg for cfg, _ in enumerate_configs(Mode.WEAK)}


def test_chance_agreement_matches_enumeration():
    for mode in Mode:
        configs = enumerate_configs(mode)
        expected = Fraction(sum(1 for _, ok in configs if ok), len(configs))
        assert chance_expected_agreement(mode) == expected
    assert chance_expected_agreement(Mode.WEAK) == Fraction(13, 27)
    assert chance_expected_agreement(Mode.STRICT) == Fraction(3, 4)


def test_complete_triples_single_block():
    relation = relation_of("A1", "q", ("a", "b", ">"), ("a", "c", ">"), ("b", "c", ">"))
    triples = complete_triples(relation)
    assert [cfg.items for cfg in triples] == [("a", "b", "c")]


def test_incomplete_triple_is_skipped():
    relation = relation_of("A1", "q", ("a", "b", ">"), ("a", "c", ">"))
    assert complete_triples(relation) == []


def test_complete_triples_over_four_items():
    rows = [(a, b, ">") for a, b in itertools.combinations("abcd", 2)]
    relation = relation_of("A1", "q", *rows)
    triples = complete_triples(relation)
    expected = list(itertools.combinations("abcd", 3))  # C(4,3) by direct enumeration
    assert [cfg.items for cfg in triples] == expected


def test_blocks_restrict_the_triple_scan():
    rows = [(a, b, ">") for a, b in itertools.combinations("abcd", 2)]
    relation = relation_of("A1", "q", *rows)
    triples = complete_triples(relation, blocks=[("d", "c", "b"), ("x", "y", "z")])
    assert [cfg.items for cfg in triples] == [("b", "c", "d")]
    with pytest.raises(ValueError):
        complete_triples(relation, blocks=[("a", "a", "b")])


def _table1_relation(annotator, block_flags):
    """Three disjoint triplet blocks, each transitive (chain) or not (cycle)."""
    rows = []
    for index, transitive in enumerate(block_flags):
        a, b, c = (f"i{3 * index + k}" for k in (1, 2, 3))
        rows += [(a, b, ">"), (b, c, ">"), (a, c, ">" if transitive else "<")]
    return relation_of(annotator, "q", *rows)


def test_kappa_perfectly_consistent_annotator():
    report = ia_kappa(_table1_relation("A1", (True, True, True)), Mode.WEAK)
    assert report.p_a == 1
    assert report.kappa == 1
    assert (report.triples_transitive, report.triples_total) == (3, 3)


def test_kappa_two_of_three_transitive():
    report = ia_kappa(_table1_relation("A2", (True, False, True)), Mode.WEAK)
    # independent arithmetic: exact kappa formula on exact rationals
    expected = (Fraction(2, 3) - Fraction(13, 27)) / (1 - Fraction(13, 27))
    assert expected == Fraction(5, 14)
    assert report.kappa == Fraction(5, 14)


def test_kappa_one_of_three_transitive():
    report = ia_kappa(_table1_relation("A3", (False, True, False)), Mode.WEAK)
    expected = (Fraction(1, 3) - Fraction(13, 27)) / (1 - Fraction(13, 27))
    assert expected == Fraction(-2, 7)
    assert report.kappa == Fraction(-2, 7)


def test_kappa_requires_a_complete_triple():
    relation = relation_of("A1", "q", ("a", "b", ">"))
    with pytest.raises(NoCompleteTriples):
        ia_kappa(relation, Mode.WEAK)


def test_kappa_strict_mode_carries_warning():
    relation = relation_of("A1", "q", ("a", "b", ">"), ("a", "c", ">"), ("b", "c", ">"))
    report = ia_kappa(relation, Mode.STRICT)
    assert report.warning == STRICT_MODE_WARNING
    assert report.p_e == Fraction(3, 4)
    assert ia_kappa(relation, Mode.WEAK).warning is None


def test_kappa_strict_mode_rejects_tied_relation():
    relation = relation_of("A1", "q", ("a", "b", "~"), ("a", "c", ">"), ("b", "c", ">"))
    with pytest.raises(TieInStrictMode):
        ia_kappa(relation, Mode.STRICT)


def test_kappa_respects_blocks():
    relation = _table1_relation("A2", (True, False, True))
    report = ia_kappa(relation, Mode.WEAK, blocks=[("i1", "i2", "i3"), ("i4", "i5", "i6")])
    assert (report.triples_transitive, report.triples_total) == (1, 2)


_rel3 = st.sampled_from([L, R, T])


@given(st.tuples(_rel3, _rel3, _rel3), st.permutations(["a", "b", "c"]))
def test_relabeling_leaves_kappa_invariant(rels, names):
    base = {("x", "y"): rels[0], ("x", "z"): rels[1], ("y", "z"): rels[2]}
    judgments = [J("A1", l, r, rel) for (l, r), rel in base.items()]
    renamed = dict(zip(("x", "y", "z"), names))
    relabeled = [J("A1", renamed[j.left], renamed[j.right], j.relation) for j in judgments]

    from prefkit.model import build_relation

    r1 = build_relation(judgments, "A1", "quality")
    r2 = build_relation(relabeled, "A1", "quality")
    k1, k2 = ia_kappa(r1, Mode.WEAK), ia_kappa(r2, Mode.WEAK)
    assert (k1.triples_total, k1.triples_transitive, k1.kappa) == (
        k2.triples_total,
        k2.triples_transitive,
        k2.kappa,
    )
    assert 0 <= k1.p_a <= 1
    assert (k1.kappa == 1) == (k1.triples_transitive == k1.triples_total)
