"""Bracket scoring with punctuation and root policies, plus breakdowns.

Scores are micro-averaged over labeled brackets: a bracket is a
(label, yield) pair, matching requires both to be equal, and unary
chains with the same yield count as distinct multiset members.  The
discontinuous scores restrict both sides to brackets whose yield has a
gap; when the gold corpus has no such bracket they are reported as
absent rather than a vacuous number.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .trees import (ConstituentTree, PunctuationPolicy, is_contiguous,
                    iter_internals, node_yield)

Bracket = tuple[str, frozenset[int]]


class CorpusMismatch(ValueError):
    """Gold and predicted corpora do not line up."""


def tree_brackets(tree: ConstituentTree, policy: PunctuationPolicy | None = None,
                  exclude_root: bool = True) -> Counter:
    """The scored bracket multiset of one tree.

    Punctuation positions are removed from every yield (the survivors
    are re-indexed), constituents whose yield empties out are dropped,
    and the root bracket is dropped when ``exclude_root``.
    """
    policy = policy or PunctuationPolicy.default()
    keep = [i for i, w in enumerate(tree.words) if not policy.is_punctuation(w)]
    rank = {p: i for i, p in enumerate(keep)}
    brackets: Counter = Counter()
    for node in iter_internals(tree.root):
        if exclude_root and node is tree.root:
            continue
        positions = frozenset(rank[p] for p in node_yield(node) if p in rank)
        if positions:
            brackets[(node.label, positions)] += 1
    return brackets


def _disco(brackets: Counter) -> Counter:
    return Counter({b: c for b, c in brackets.items()
                    if not is_contiguous(b[1])})


def _prf(matched: int, n_pred: int, n_gold: int) -> tuple[float, float, float]:
    p = 100.0 * matched / n_pred if n_pred else 0.0
    r = 100.0 * matched / n_gold if n_gold else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


@dataclass(frozen=True)
class EvalReport:
    """Corpus-level bracket scores, all in percent."""

    precision: float
    recall: float
    f1: float
    disco_precision: float | None
    disco_recall: float | None
    disco_f1: float | None
    exact_match: float
    n_sentences: int

    def as_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "disco_precision": self.disco_precision,
            "disco_recall": self.disco_recall,
            "disco_f1": self.disco_f1,
            "exact_match": self.exact_match,
            "n_sentences": self.n_sentences,
        }

    def format_text(self) -> str:
        rows = []
        for name, value in self.as_dict().items():
            if value is None:
                shown = "-"
            elif name == "n_sentences":
                shown = "%d" % value
            else:
                shown = "%.2f" % value
            rows.append("%-16s %8s" % (name, shown))
        return "\n".join(rows)


def score(gold: Sequence[ConstituentTree], pred: Sequence[ConstituentTree],
          policy: PunctuationPolicy | None = None,
          exclude_root: bool = True) -> EvalReport:
    """Micro-averaged bracket F1 / discontinuous F1 / exact match."""
    if len(gold) != len(pred):
        raise CorpusMismatch("gold has %d sentences, predictions %d"
                             % (len(gold), len(pred)))
    matched = n_gold = n_pred = 0
    d_matched = d_gold = d_pred = 0
    exact = 0
    for i, (g, p) in enumerate(zip(gold, pred)):
        if g.words != p.words:
            raise CorpusMismatch(
                "sentence %d words differ between gold and prediction" % i)
        gb = tree_brackets(g, policy, exclude_root)
        pb = tree_brackets(p, policy, exclude_root)
        inter = gb & pb
        matched += sum(inter.values())
        n_gold += sum(gb.values())
        n_pred += sum(pb.values())
        exact += gb == pb
        gd, pd = _disco(gb), _disco(pb)
        d_matched += sum((gd & pd).values())
        d_gold += sum(gd.values())
        d_pred += sum(pd.values())
    p, r, f = _prf(matched, n_pred, n_gold)
    if d_gold:
        dp, dr, df = _prf(d_matched, d_pred, d_gold)
    else:
        dp = dr = df = None
    return EvalReport(
        precision=p, recall=r, f1=f,
        disco_precision=dp, disco_recall=dr, disco_f1=df,
        exact_match=100.0 * exact / len(gold) if gold else 0.0,
        n_sentences=len(gold))


# --- structural breakdowns ---------------------------------------------------

SPAN_BUCKETS = ((1, 2), (3, 4), (5, 9), (10, 19), (20, None))
SENTENCE_BUCKETS = ((1, 10), (11, 20), (21, 30), (31, 40), (41, 50), (51, None))


def bucket_label(lo: int, hi: int | None) -> str:
    if hi is None:
        return ">=%d" % lo
    if lo == hi:
        return str(lo)
    return "%d-%d" % (lo, hi)


def parse_buckets(text: str) -> tuple[tuple[int, int | None], ...]:
    """Parse bucket edges like ``1-2,3-4,5-9,10+``."""
    buckets = []
    for part in text.split(","):
        part = part.strip()
        if part.endswith("+"):
            buckets.append((int(part[:-1]), None))
        elif "-" in part:
            lo, hi = part.split("-", 1)
            buckets.append((int(lo), int(hi)))
        else:
            buckets.append((int(part), int(part)))
    return tuple(buckets)


def _bucket_of(value: int, buckets) -> int | None:
    for i, (lo, hi) in enumerate(buckets):
        if value >= lo and (hi is None or value <= hi):
            return i
    return None


@dataclass
class BreakdownRow:
    """Per-group counts and scores of one breakdown table."""

    key: str
    gold: int = 0
    pred: int = 0
    matched: int = 0
    span_sum: int = field(default=0, repr=False)

    @property
    def precision(self) -> float:
        return 100.0 * self.matched / self.pred if self.pred else 0.0

    @property
    def recall(self) -> float:
        return 100.0 * self.matched / self.gold if self.gold else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def mean_span(self) -> float:
        return self.span_sum / self.gold if self.gold else 0.0


@dataclass(frozen=True)
class BreakdownReport:
    """F1 by span-length bucket, sentence-length bucket and label."""

    span: tuple[BreakdownRow, ...]
    sentence: tuple[BreakdownRow, ...]
    labels: tuple[BreakdownRow, ...]

    def as_dict(self) -> dict:
        def rows(table, with_span=False):
            out = []
            for row in table:
                d = {"key": row.key, "gold": row.gold, "pred": row.pred,
                     "matched": row.matched, "precision": row.precision,
                     "recall": row.recall, "f1": row.f1}
                if with_span:
                    d["mean_gold_span"] = row.mean_span
                out.append(d)
            return out
        return {"span_length": rows(self.span),
                "sentence_length": rows(self.sentence),
                "labels": rows(self.labels, with_span=True)}


def breakdown(gold: Sequence[ConstituentTree], pred: Sequence[ConstituentTree],
              policy: PunctuationPolicy | None = None,
              exclude_root: bool = True,
              span_buckets=SPAN_BUCKETS,
              sentence_buckets=SENTENCE_BUCKETS) -> BreakdownReport:
    """Error-analysis tables over an aligned corpus pair.

    Span length is the number of words a bracket covers (after
    punctuation removal); sentence length is the raw word count.  Empty
    groups are omitted rather than reported as zero.
    """
    if len(gold) != len(pred):
        raise CorpusMismatch("gold has %d sentences, predictions %d"
                             % (len(gold), len(pred)))
    span_rows = [BreakdownRow(bucket_label(*b)) for b in span_buckets]
    sent_rows = [BreakdownRow(bucket_label(*b)) for b in sentence_buckets]
    label_rows: dict[str, BreakdownRow] = {}

    for i, (g, p) in enumerate(zip(gold, pred)):
        if g.words != p.words:
            raise CorpusMismatch(
                "sentence %d words differ between gold and prediction" % i)
        gb = tree_brackets(g, policy, exclude_root)
        pb = tree_brackets(p, policy, exclude_root)
        inter = gb & pb
        sent_bucket = _bucket_of(len(g.words), sentence_buckets)
        for table, counts in (("gold", gb), ("pred", pb), ("matched", inter)):
            for (label, positions), count in counts.items():
                size = len(positions)
                rows = [label_rows.setdefault(label, BreakdownRow(label))]
                sb = _bucket_of(size, span_buckets)
                if sb is not None:
                    rows.append(span_rows[sb])
                if sent_bucket is not None:
                    rows.append(sent_rows[sent_bucket])
                for row in rows:
                    setattr(row, table, getattr(row, table) + count)
                    if table == "gold":
                        row.span_sum += size * count
    labels = sorted(label_rows.values(), key=lambda r: (-r.gold, r.key))
    return BreakdownReport(
        span=tuple(r for r in span_rows if r.gold or r.pred),
        sentence=tuple(r for r in sent_rows if r.gold or r.pred),
        labels=tuple(labels))


def format_breakdown_table(rows, title: str, with_span: bool = False) -> str:
    header = "%-12s %8s %8s %8s %8s %8s %8s" % (
        title, "gold", "pred", "match", "prec", "rec", "f1")
    if with_span:
        header += " %9s" % "span"
    lines = [header]
    for row in rows:
        line = "%-12s %8d %8d %8d %8.2f %8.2f %8.2f" % (
            row.key, row.gold, row.pred, row.matched,
            row.precision, row.recall, row.f1)
        if with_span:
            line += " %9.2f" % row.mean_span
        lines.append(line)
    return "\n".join(lines)


def breakdown_tsv(rows, with_span: bool = False) -> str:
    cols = ["key", "gold", "pred", "matched", "precision", "recall", "f1"]
    if with_span:
        cols.append("mean_gold_span")
    lines = ["\t".join(cols)]
    for row in rows:
        values = [row.key, row.gold, row.pred, row.matched,
                  "%.4f" % row.precision, "%.4f" % row.recall,
                  "%.4f" % row.f1]
        if with_span:
            values.append("%.4f" % row.mean_span)
        lines.append("\t".join(str(v) for v in values))
    return "\n".join(lines) + "\n"
