import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import L, T, brute_force_scores, tree, what_tree
from treeseq import PunctuationPolicy, breakdown, score, tree_brackets
from treeseq.evaluation import (SENTENCE_BUCKETS, SPAN_BUCKETS, CorpusMismatch,
                                EvalReport, breakdown_tsv,
                                format_breakdown_table, parse_buckets)
from treeseq.synth import random_tree
from treeseq.trees import ConstituentTree, Sentence


def continuous_pred():
    # SBARQ(SQ(WHNP(What), should, I, do), ?)
    return tree("What should I do ?",
                T("SBARQ", T("SQ", T("WHNP", L(0)), L(1), L(2), L(3)), L(4)))


def test_brackets_of_question_tree(question_tree):
    got = tree_brackets(question_tree)
    assert got == {("WHNP", frozenset({0})): 1,
                   ("VP", frozenset({0, 3})): 1,
                   ("SQ", frozenset({0, 1, 2, 3})): 1}


def test_brackets_keep_everything_when_asked(question_tree):
    got = tree_brackets(question_tree, PunctuationPolicy.none(), exclude_root=False)
    assert ("SBARQ", frozenset(range(5))) in got
    assert got[("VP", frozenset({0, 3}))] == 1
    assert len(got) == 4


def test_brackets_single_leaf_tree():
    t = tree("w", T("X", L(0)))
    assert tree_brackets(t) == {}


def test_brackets_count_duplicate_unary_chains():
    t = tree("a b", T("S", T("X", T("X", L(0))), L(1)))
    got = tree_brackets(t)
    assert got[("X", frozenset({0}))] == 2


def test_brackets_drop_emptied_constituents():
    t = tree("a ?", T("S", T("PUNCT", L(1)), T("NP", L(0))))
    got = tree_brackets(t)
    assert got == {("NP", frozenset({0})): 1}


def test_reindexing_can_make_gaps_disappear():
    # VP{0,3} with punctuation filling the gap: {1,2} removed -> {0,1}
    t = tree("a , , b", T("S", T("VP", L(0), L(3)), L(1), L(2)))
    got = tree_brackets(t)
    assert got == {("VP", frozenset({0, 1})): 1}


def test_hand_counted_example(question_tree):
    report = score([question_tree], [continuous_pred()])
    assert report.precision == pytest.approx(100.0)
    assert report.recall == pytest.approx(200.0 / 3, abs=0.05)
    assert report.f1 == pytest.approx(80.0, abs=1e-9)
    assert report.disco_f1 == pytest.approx(0.0)
    assert report.disco_recall == pytest.approx(0.0)
    assert report.exact_match == 0.0


def test_perfect_prediction(question_tree):
    report = score([question_tree], [what_tree()])
    assert report.f1 == 100.0
    assert report.exact_match == 100.0
    assert report.n_sentences == 1


def test_zero_pred_brackets():
    gold = tree("a b", T("S", T("NP", L(0)), L(1)))
    pred = tree("a b", T("TOP", L(0), L(1)))
    report = score([gold], [pred])
    assert report.precision == 0.0
    assert report.recall == 0.0
    assert report.f1 == 0.0


def test_df1_absent_for_continuous_corpus():
    gold = tree("a b", T("S", T("NP", L(0)), L(1)))
    report = score([gold], [gold])
    assert report.disco_f1 is None
    assert report.disco_precision is None
    assert report.as_dict()["disco_f1"] is None
    assert "-" in report.format_text()


def test_score_validates_alignment(question_tree):
    with pytest.raises(CorpusMismatch):
        score([question_tree], [])
    other = tree("a b c d e", T("X", *[L(i) for i in range(5)]))
    with pytest.raises(CorpusMismatch):
        score([question_tree], [other])


def _mutate(t: ConstituentTree, seed: int) -> ConstituentTree:
    """A prediction over the same sentence: restructured or relabeled."""
    rng = random.Random(seed)
    choice = rng.random()
    if choice < 0.3:
        return t
    if choice < 0.7:
        other = random_tree(seed, len(t.sentence),
                            discontinuity_rate=rng.choice([0.0, 0.5]))
        return ConstituentTree(t.sentence, other.root)
    relabeled = random_tree(seed + 1, len(t.sentence),
                            discontinuity_rate=0.3)
    return ConstituentTree(t.sentence, relabeled.root)


def corpus_pair(seed: int, size: int):
    gold, pred = [], []
    rng = random.Random(seed)
    for i in range(size):
        t = random_tree(rng.randrange(2 ** 32), rng.randint(1, 14),
                        discontinuity_rate=rng.choice([0.0, 0.4]))
        gold.append(t)
        pred.append(_mutate(t, rng.randrange(2 ** 32)))
    return gold, pred


def test_scorer_matches_brute_force_reference():
    for seed in range(40):
        gold, pred = corpus_pair(seed, 12)
        got = score(gold, pred).as_dict()
        want = brute_force_scores(gold, pred)
        for key, expected in want.items():
            if expected is None:
                assert got[key] is None, key
            else:
                assert got[key] == pytest.approx(expected, abs=1e-9), key


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**20))
def test_swapping_gold_and_pred_swaps_precision_recall(seed):
    gold, pred = corpus_pair(seed, 6)
    fwd = score(gold, pred)
    rev = score(pred, gold)
    assert fwd.precision == pytest.approx(rev.recall)
    assert fwd.recall == pytest.approx(rev.precision)
    assert fwd.f1 == pytest.approx(rev.f1)


def test_adding_matching_bracket_never_hurts():
    gold = tree("a b c", T("S", T("NP", L(0), L(1)), L(2)))
    worse = tree("a b c", T("S", T("VP", L(0), L(1)), L(2)))
    better = tree("a b c", T("S", T("NP", L(0), L(1)), L(2)))
    f_worse = score([gold], [worse]).f1
    f_better = score([gold], [better]).f1
    assert f_better >= f_worse
    # a non-matching extra bracket cannot raise precision
    extra = tree("a b c", T("S", T("NP", L(0), L(1)), T("XX", L(2))))
    assert score([gold], [extra]).precision <= \
        score([gold], [better]).precision


# --- breakdowns ---------------------------------------------------------------

def test_breakdown_perfect_prediction(question_tree):
    report = breakdown([question_tree], [what_tree()])
    for row in report.span + report.sentence + report.labels:
        assert row.f1 == pytest.approx(100.0)
    # the sentence has 5 raw words: bucket 1-10
    assert [r.key for r in report.sentence] == ["1-10"]
    assert {r.key for r in report.labels} == {"WHNP", "VP", "SQ"}


def test_breakdown_half_correct_single_bracket_corpus():
    gold, pred = [], []
    for i in range(10):
        g = tree("a b", T("S", T("NP", L(0), L(1))))
        label = "NP" if i % 2 == 0 else "VP"
        p = tree("a b", T("S", T(label, L(0), L(1))))
        gold.append(g)
        pred.append(p)
    report = breakdown(gold, pred)
    np_row = next(r for r in report.labels if r.key == "NP")
    assert np_row.recall == pytest.approx(50.0)
    span_row = next(r for r in report.span if r.key == "1-2")
    want = brute_force_scores(gold, pred)
    assert span_row.f1 == pytest.approx(want["f1"], abs=1e-9)


def test_breakdown_empty_buckets_absent(question_tree):
    report = breakdown([question_tree], [what_tree()])
    assert all(r.gold or r.pred for r in report.span)
    assert "3-4" in [r.key for r in report.span]
    assert ">=20" not in [r.key for r in report.span]


def test_breakdown_mean_span(question_tree):
    report = breakdown([question_tree], [what_tree()])
    vp = next(r for r in report.labels if r.key == "VP")
    assert vp.mean_span == pytest.approx(2.0)
    sq = next(r for r in report.labels if r.key == "SQ")
    assert sq.mean_span == pytest.approx(4.0)


def test_bucket_parsing_and_formatting():
    assert parse_buckets("1-2,3-4,20+") == ((1, 2), (3, 4), (20, None))
    assert parse_buckets("5") == ((5, 5),)
    report = breakdown([what_tree()], [what_tree()],
                       span_buckets=parse_buckets("1-3,4+"))
    assert [r.key for r in report.span] == ["1-3", ">=4"]
    text = format_breakdown_table(report.span, "span")
    assert "1-3" in text
    tsv = breakdown_tsv(report.labels, with_span=True)
    assert tsv.splitlines()[0].split("\t")[-1] == "mean_gold_span"


def test_default_buckets_match_analysis_ranges():
    assert SPAN_BUCKETS == ((1, 2), (3, 4), (5, 9), (10, 19), (20, None))
    assert SENTENCE_BUCKETS == ((1, 10), (11, 20), (21, 30), (31, 40),
                                (41, 50), (51, None))
