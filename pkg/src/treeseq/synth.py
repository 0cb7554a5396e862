"""Seeded synthetic trees for property testing and smoke pipelines.

Trees are built top-down by partitioning position runs.  A node owns a
list of integer runs; splitting keeps each child's run count at most
``max_gap_degree + 1``, which bounds the gap degree of every
constituent by construction.  With ``discontinuity_rate`` 0 every split
is block-contiguous and the result is continuous.  Children are emitted
in canonical (min-position) order.
"""

from __future__ import annotations

import random
from typing import Sequence

from .trees import ConstituentTree, Internal, Leaf, Node, Sentence, node_min

LABELS = ("S", "NP", "VP", "PP", "SBAR", "ADJP", "ADVP", "X")

# Small shared alphabet so sentences contain repeated surface forms.
COMMON_WORDS = ("a", "b", "the", "dog", "saw", "of", "it", "run")


def random_tree(seed: int, n_words: int, max_arity: int = 4,
                discontinuity_rate: float = 0.0, max_gap_degree: int = 1,
                labels: Sequence[str] = LABELS,
                unary_rate: float = 0.1) -> ConstituentTree:
    """Deterministic random tree over ``n_words`` positions."""
    if n_words < 1:
        raise ValueError("n_words must be at least 1")
    if max_arity < 1:
        raise ValueError("max_arity must be at least 1")
    rng = random.Random(seed)
    words = tuple(
        rng.choice(COMMON_WORDS) if rng.random() < 0.35 else "w%d" % i
        for i in range(n_words))
    arity = max(2, max_arity)
    gap_runs = max_gap_degree + 1

    def wrap_unary(node: Node) -> Node:
        while rng.random() < unary_rate:
            node = Internal(rng.choice(labels), (node,))
        return node

    def build(runs: list[range]) -> Node:
        total = sum(len(r) for r in runs)
        if total == 1:
            return wrap_unary(Leaf(runs[0][0]))
        n_children = rng.randint(2, min(arity, total))
        disc = (discontinuity_rate > 0 and max_gap_degree >= 1
                and total >= 3 and rng.random() < discontinuity_rate)
        extra = rng.randint(1, max_gap_degree) if disc else 0
        pieces = _split_runs(runs, n_children + extra, rng)
        groups = _assign_pieces(len(pieces), n_children, gap_runs, disc, rng)
        children = []
        for piece_ids in groups:
            children.append(wrap_unary(build([pieces[i] for i in piece_ids])))
        children.sort(key=node_min)
        return Internal(rng.choice(labels), tuple(children))

    root = build([range(n_words)])
    if type(root) is Leaf:
        root = Internal(rng.choice(labels), (root,))
    return ConstituentTree(Sentence(words), root)


def _split_runs(runs: list[range], want: int, rng: random.Random) -> list[range]:
    """Cut the runs into ``want`` (or as many as possible) smaller runs."""
    total = sum(len(r) for r in runs)
    want = min(max(want, len(runs)), total)
    pieces = list(runs)
    while len(pieces) < want:
        candidates = [i for i, r in enumerate(pieces) if len(r) > 1]
        i = rng.choice(candidates)
        r = pieces[i]
        cut = rng.randint(1, len(r) - 1)
        pieces[i:i + 1] = [r[:cut], r[cut:]]
    return pieces


def _assign_pieces(n_pieces: int, n_children: int, max_runs: int,
                   disc: bool, rng: random.Random) -> list[list[int]]:
    """Deal piece indices to children, each child getting 1..max_runs runs.

    Without ``disc`` every child receives a consecutive block of pieces
    (no new gaps); with it, the assignment is shuffled until some child
    holds non-adjacent pieces, so the split actually creates a gap.
    """
    if disc:
        for _ in range(24):
            owners = list(range(n_children))
            owners += rng.choices(range(n_children), k=n_pieces - n_children)
            rng.shuffle(owners)
            groups: list[list[int]] = [[] for _ in range(n_children)]
            for piece, owner in enumerate(owners):
                groups[owner].append(piece)
            if any(len(g) > max_runs for g in groups):
                continue
            if any(_has_gap(g) for g in groups):
                return groups
    # Block split: consecutive pieces per child, inheriting gaps only.
    bounds = sorted(rng.sample(range(1, n_pieces), n_children - 1)) \
        if n_children > 1 else []
    edges = [0] + bounds + [n_pieces]
    return [list(range(a, b)) for a, b in zip(edges, edges[1:])]


def _has_gap(group: list[int]) -> bool:
    return any(b > a + 1 for a, b in zip(group, group[1:]))


def random_corpus(seed: int, count: int, min_words: int = 1,
                  max_words: int = 40, **params) -> list[ConstituentTree]:
    """A reproducible corpus: tree i is fully determined by (seed, i)."""
    rng = random.Random(seed)
    trees = []
    for i in range(count):
        n = rng.randint(min_words, max_words)
        trees.append(random_tree(rng.randrange(2 ** 32), n, **params))
    return trees
