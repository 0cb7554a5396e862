"""Data model for continuous and discontinuous constituent trees.

A tree is a sentence (the ordered words) plus a hierarchy of labeled
constituents over it.  Leaves carry absolute word positions, so a
constituent's yield is simply the set of positions below it; a
constituent is continuous iff that set is a contiguous integer range.
All types here are immutable values and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass(frozen=True)
class Leaf:
    """A terminal node: an absolute position into the sentence."""

    position: int


@dataclass(frozen=True)
class Internal:
    """A labeled constituent with one or more ordered children.

    ``pre`` marks nodes that the treebank reader identified as a
    part-of-speech layer (a single label directly over one word in the
    source file).  It is bookkeeping for :func:`strip_preterminals` and
    is excluded from equality so that round trips compare structurally.
    """

    label: str
    children: tuple["Node", ...]
    pre: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("constituent label must be non-empty")
        if not self.children:
            raise ValueError("constituent %r has no children" % self.label)


Node = Union[Leaf, Internal]


@dataclass(frozen=True)
class Sentence:
    """The ordered surface tokens w0..w(n-1) of one sentence."""

    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.words, tuple):
            object.__setattr__(self, "words", tuple(self.words))
        if not self.words:
            raise ValueError("a sentence must contain at least one word")
        for w in self.words:
            if not w or any(c.isspace() for c in w):
                raise ValueError("invalid word %r: words must be non-empty and "
                                 "contain no whitespace" % (w,))

    @classmethod
    def from_text(cls, text: str) -> "Sentence":
        return cls(tuple(text.split()))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[str]:
        return iter(self.words)

    def __getitem__(self, i: int) -> str:
        return self.words[i]


@dataclass(frozen=True)
class Constituent:
    """A (label, yield) pair: the unit that bracket scoring compares."""

    label: str
    positions: frozenset[int]

    def is_continuous(self) -> bool:
        return is_contiguous(self.positions)

    def gap_degree(self) -> int:
        return gap_degree(self.positions)


def is_contiguous(positions) -> bool:
    """True iff the positions form a gap-free integer range."""
    ps = positions if isinstance(positions, (set, frozenset)) else set(positions)
    return max(ps) - min(ps) + 1 == len(ps)


def gap_degree(positions) -> int:
    """Number of maximal gaps inside the positions (0 when contiguous)."""
    ps = sorted(positions)
    return sum(1 for a, b in zip(ps, ps[1:]) if b > a + 1)


def node_positions(node: Node) -> list[int]:
    """Leaf positions below ``node`` in tree (reading) order."""
    out: list[int] = []
    _collect_positions(node, out)
    return out


def _collect_positions(node: Node, out: list[int]) -> None:
    if type(node) is Leaf:
        out.append(node.position)
    else:
        for child in node.children:
            _collect_positions(child, out)


def node_yield(node: Node) -> frozenset[int]:
    return frozenset(node_positions(node))


def node_min(node: Node) -> int:
    """Smallest position below ``node`` (cheaper than a full yield)."""
    if type(node) is Leaf:
        return node.position
    return min(node_min(c) for c in node.children)


def iter_internals(node: Node) -> Iterator[Internal]:
    """All internal nodes below (and including) ``node``, preorder."""
    if type(node) is Internal:
        yield node
        for child in node.children:
            yield from iter_internals(child)


@dataclass(frozen=True)
class ConstituentTree:
    """A sentence plus the constituent hierarchy over it.

    Invariants checked at construction: every position 0..n-1 occurs
    exactly once among the leaves, and every internal node has at least
    one child (enforced by :class:`Internal` itself).  Child order is
    significant and preserved exactly as constructed.
    """

    sentence: Sentence
    root: Internal

    def __post_init__(self) -> None:
        positions = node_positions(self.root)
        n = len(self.sentence)
        seen = [False] * n
        ok = len(positions) == n
        if ok:
            for p in positions:
                if not 0 <= p < n or seen[p]:
                    ok = False
                    break
                seen[p] = True
        if not ok:
            raise ValueError(
                "tree leaves must cover positions 0..%d exactly once, got %s"
                % (n - 1, sorted(positions)))

    @property
    def n(self) -> int:
        return len(self.sentence)

    @property
    def words(self) -> tuple[str, ...]:
        return self.sentence.words

    def constituents(self) -> Iterator[Constituent]:
        """Every internal node as a (label, yield) pair, preorder."""
        for node in iter_internals(self.root):
            yield Constituent(node.label, node_yield(node))

    def is_continuous(self) -> bool:
        """True iff every constituent spans a contiguous position range."""
        return _span_check(self.root) is not None

    def canonical_order(self) -> tuple[int, ...]:
        """Word positions in projection order.

        Obtained by recursively sorting every node's children by their
        minimum position and reading the leaves left to right.  Permuting
        the sentence into this order makes the tree continuous; for a
        continuous tree this is the identity permutation.
        """
        return tuple(node_positions(sort_children(self.root)))

    def max_gap_degree(self) -> int:
        return max(gap_degree(node_yield(n)) for n in iter_internals(self.root))


def _span_check(node: Node) -> tuple[int, int, int] | None:
    """(min, max, leaf count) of the subtree, or None on any gap."""
    if type(node) is Leaf:
        return node.position, node.position, 1
    lo = hi = count = None
    for child in node.children:
        stats = _span_check(child)
        if stats is None:
            return None
        if lo is None:
            lo, hi, count = stats
        else:
            lo = min(lo, stats[0])
            hi = max(hi, stats[1])
            count += stats[2]
    if hi - lo + 1 != count:
        return None
    return lo, hi, count


def _sorted_with_min(node: Node) -> tuple[Node, int]:
    if type(node) is Leaf:
        return node, node.position
    pairs = [_sorted_with_min(c) for c in node.children]
    pairs.sort(key=lambda pair: pair[1])
    children = tuple(pair[0] for pair in pairs)
    if children == node.children:
        return node, pairs[0][1]
    return Internal(node.label, children, pre=node.pre), pairs[0][1]


def sort_children(node: Node) -> Node:
    """Recursively order every node's children by minimum position."""
    return _sorted_with_min(node)[0]


def canonicalize(tree: ConstituentTree) -> tuple[ConstituentTree, tuple[int, ...]]:
    """Project a tree onto its canonical word order.

    Returns the continuous tree obtained by reordering the sentence into
    canonical order (children sorted, positions renumbered), together
    with the permutation: position j of the new tree holds the word that
    was at ``perm[j]`` in the original.
    """
    sorted_root = sort_children(tree.root)
    perm = tuple(node_positions(sorted_root))
    rank = {old: new for new, old in enumerate(perm)}

    # Ranks follow the reading order of the sorted tree, so remapping
    # keeps every node's children ordered and every yield contiguous.
    def remap(node: Node) -> Node:
        if type(node) is Leaf:
            return Leaf(rank[node.position])
        return Internal(node.label, tuple(remap(c) for c in node.children),
                        pre=node.pre)

    words = tuple(tree.words[p] for p in perm)
    return ConstituentTree(Sentence(words), remap(sorted_root)), perm


def strip_preterminals(tree: ConstituentTree) -> ConstituentTree:
    """Remove the part-of-speech layer, attaching words to the phrase above.

    Only nodes flagged by the reader as preterminals are removed, and the
    root is always kept, so the operation is idempotent and leaves
    already-stripped trees untouched.
    """

    def strip(node: Node) -> Node:
        if type(node) is Leaf:
            return node
        children = tuple(
            c.children[0] if (type(c) is Internal and c.pre
                              and len(c.children) == 1
                              and type(c.children[0]) is Leaf)
            else strip(c)
            for c in node.children)
        if children == node.children:
            return node
        return Internal(node.label, children, pre=node.pre)

    root = strip(tree.root)
    if root is tree.root:
        return tree
    return ConstituentTree(tree.sentence, root)


DEFAULT_PUNCTUATION = frozenset(
    {".", ",", ":", "``", "''", "-LRB-", "-RRB-", "?", "!"})


@dataclass(frozen=True)
class PunctuationPolicy:
    """Which surface forms scoring treats as punctuation.

    POS tags are not available after ingestion, so matching is on the
    word form itself.  ``none()`` disables punctuation handling.
    """

    mode: str = "token-set"
    tokens: frozenset[str] = DEFAULT_PUNCTUATION

    def __post_init__(self) -> None:
        if self.mode not in ("none", "token-set"):
            raise ValueError("unknown punctuation mode %r" % self.mode)
        if self.mode == "none" and self.tokens:
            object.__setattr__(self, "tokens", frozenset())

    @classmethod
    def default(cls) -> "PunctuationPolicy":
        return cls()

    @classmethod
    def none(cls) -> "PunctuationPolicy":
        return cls(mode="none", tokens=frozenset())

    @classmethod
    def from_tokens(cls, tokens) -> "PunctuationPolicy":
        return cls(mode="token-set", tokens=frozenset(tokens))

    def is_punctuation(self, word: str) -> bool:
        return word in self.tokens
