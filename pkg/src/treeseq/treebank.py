"""Treebank file I/O.

Three formats are supported:

* ``ptb``: LISP-style bracketing, one tree per line, leaf positions
  assigned left to right.
* ``discbracket``: same shape, but every terminal is written as
  ``INDEX=WORD`` with an explicit zero-based position, which is how
  discontinuous trees stay line-oriented and diffable.
* ``export``: the NEGRA/TIGER column layout (read-only); grammatical
  functions, morphology and secondary edges are dropped at ingestion
  and the tag column is treated as metadata, not as constituents.

Entries with multiple roots are wrapped in a synthetic "ROOT" node.
"""

from __future__ import annotations

import io
from typing import Iterable, Iterator, TextIO

from .trees import (ConstituentTree, Internal, Leaf, Node, Sentence,
                    node_min, strip_preterminals)

FORMATS = ("ptb", "discbracket", "export")

# Synthetic label used when an entry has several top-level nodes.
ROOT_LABEL = "ROOT"


class TreebankFormatError(ValueError):
    """Malformed treebank input (unbalanced brackets, bad columns, ...)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_bracketed(text: str, fmt: str = "ptb") -> ConstituentTree:
    """Parse one complete bracketed tree.

    In ``ptb`` format leaf positions are assigned left to right; in
    ``discbracket`` they come from the ``INDEX=WORD`` annotations, which
    must cover 0..n-1 exactly once.
    """
    if fmt not in ("ptb", "discbracket"):
        raise ValueError("unsupported bracketed format %r" % fmt)
    tokens = _tokenize(text)
    if not tokens:
        raise TreebankFormatError("empty input, expected a bracketed tree")

    terminals: list[tuple[int, str]] = []  # (position, word)
    pos = 0

    def next_position(token: str) -> int:
        if fmt == "ptb":
            return len(terminals)
        head, sep, word = token.partition("=")
        if not sep or not head.isdigit() or not word:
            raise TreebankFormatError(
                "terminal %r lacks a POSITION=WORD annotation" % token)
        return int(head)

    def terminal_word(token: str) -> str:
        return token if fmt == "ptb" else token.partition("=")[2]

    def parse_node() -> Node:
        nonlocal pos
        pos += 1  # consume '('
        if pos >= len(tokens):
            raise TreebankFormatError("unbalanced brackets: unexpected end")
        label = None
        if tokens[pos] not in ("(", ")"):
            label = tokens[pos]
            pos += 1
        children: list[Node] = []
        while pos < len(tokens) and tokens[pos] != ")":
            token = tokens[pos]
            if token == "(":
                children.append(parse_node())
            else:
                position = next_position(token)
                terminals.append((position, terminal_word(token)))
                children.append(Leaf(position))
                pos += 1
        if pos >= len(tokens):
            raise TreebankFormatError("unbalanced brackets: missing ')'")
        pos += 1  # consume ')'
        if not children:
            raise TreebankFormatError(
                "empty constituent%s" % (" %r" % label if label else ""))
        if label is None:
            # Unlabeled wrapper, e.g. the "( (S ...))" convention.
            if len(children) == 1 and type(children[0]) is Internal:
                return children[0]
            return Internal(ROOT_LABEL, tuple(children))
        pre = len(children) == 1 and type(children[0]) is Leaf
        return Internal(label, tuple(children), pre=pre)

    if tokens[0] != "(":
        raise TreebankFormatError("expected '(' at start of tree")
    root = parse_node()
    if pos != len(tokens):
        raise TreebankFormatError("unbalanced brackets: trailing content")
    if type(root) is Leaf:
        raise TreebankFormatError("tree has no constituent")

    n = len(terminals)
    positions = [p for p, _ in terminals]
    if sorted(positions) != list(range(n)):
        raise TreebankFormatError(
            "terminal positions must cover 0..%d exactly once, got %s"
            % (n - 1, sorted(positions)))
    words = [""] * n
    for p, w in terminals:
        words[p] = w
    try:
        return ConstituentTree(Sentence(tuple(words)), root)
    except ValueError as exc:
        raise TreebankFormatError(str(exc)) from exc


def _sorted_by_min(node: Internal) -> bool:
    minima = [node_min(c) for c in node.children]
    if minima != sorted(minima):
        return False
    return all(_sorted_by_min(c) for c in node.children if type(c) is Internal)


def write_bracketed(tree: ConstituentTree, fmt: str = "ptb") -> str:
    """Render a tree as a single bracketed line.

    ``ptb`` requires a continuous tree with children ordered by minimum
    position (otherwise the word order would be scrambled); use
    ``discbracket`` for anything discontinuous.
    """
    if fmt not in ("ptb", "discbracket"):
        raise ValueError("unsupported bracketed format %r" % fmt)
    if fmt == "ptb":
        if not tree.is_continuous():
            raise ValueError("tree is discontinuous; write it as discbracket")
        if not _sorted_by_min(tree.root):
            raise ValueError("ptb output requires children sorted by minimum "
                             "position; canonicalize the tree first")
    words = tree.words

    def render(node: Node) -> str:
        if type(node) is Leaf:
            if fmt == "ptb":
                return words[node.position]
            return "%d=%s" % (node.position, words[node.position])
        return "(%s %s)" % (node.label, " ".join(render(c) for c in node.children))

    return render(tree.root)


# ---------------------------------------------------------------------------
# export format (NEGRA / TIGER), read-only

def _parse_export_sentence(lines: list[tuple[int, str]],
                           sent_id: str) -> ConstituentTree:
    words: list[str] = []
    children: dict[int, list] = {0: []}  # parent id -> [child refs]
    labels: dict[int, str] = {}

    for lineno, line in lines:
        cols = line.split()
        if len(cols) < 5:
            raise TreebankFormatError(
                "export row needs at least 5 columns, got %r" % line, lineno)
        name = cols[0]
        if name.startswith("#") and name[1:].isdigit():
            node_id = int(name[1:])
            label, parent = cols[1], cols[4]
            if not parent.isdigit():
                raise TreebankFormatError("bad parent id %r" % parent, lineno)
            labels[node_id] = label
            children.setdefault(node_id, [])
            children.setdefault(int(parent), []).append(node_id)
        else:
            parent = cols[4]
            if not parent.isdigit():
                raise TreebankFormatError("bad parent id %r" % parent, lineno)
            position = len(words)
            words.append(name)
            children.setdefault(int(parent), []).append(Leaf(position))

    if not words:
        raise TreebankFormatError("export sentence %s has no terminals" % sent_id)

    building: set[int] = set()

    def build(ref) -> Node:
        if type(ref) is Leaf:
            return ref
        if ref in building:
            raise TreebankFormatError(
                "cycle through node #%d in sentence %s" % (ref, sent_id))
        if ref not in labels:
            raise TreebankFormatError(
                "undefined node #%d in sentence %s" % (ref, sent_id))
        building.add(ref)
        kids = [build(c) for c in children.get(ref, [])]
        building.discard(ref)
        if not kids:
            raise TreebankFormatError(
                "node #%d of sentence %s has no children" % (ref, sent_id))
        kids.sort(key=node_min)
        return Internal(labels[ref], tuple(kids))

    top = [build(ref) for ref in children[0]]
    top.sort(key=node_min)
    if len(top) == 1 and type(top[0]) is Internal:
        root = top[0]
    else:
        root = Internal(ROOT_LABEL, tuple(top))
    try:
        return ConstituentTree(Sentence(tuple(words)), root)
    except ValueError as exc:
        raise TreebankFormatError(
            "sentence %s: %s" % (sent_id, exc)) from exc


def _iter_export(lines: Iterable[str]) -> Iterator[tuple[str, ConstituentTree]]:
    block: list[tuple[int, str]] | None = None
    sent_id = ""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("%%"):
            continue
        if line.startswith("#BOS"):
            if block is not None:
                raise TreebankFormatError("#BOS inside open sentence", lineno)
            parts = line.split()
            sent_id = parts[1] if len(parts) > 1 else ""
            block = []
        elif line.startswith("#EOS"):
            if block is None:
                raise TreebankFormatError("#EOS without #BOS", lineno)
            yield sent_id, _parse_export_sentence(block, sent_id)
            block = None
        elif block is not None:
            block.append((lineno, line))
        # lines outside #BOS/#EOS (e.g. #FORMAT) are ignored
    if block is not None:
        raise TreebankFormatError("unterminated sentence %s (missing #EOS)" % sent_id)


# ---------------------------------------------------------------------------
# whole-file helpers

def iter_treebank(source: Iterable[str] | TextIO, fmt: str,
                  strip: bool = False) -> Iterator[tuple[str, ConstituentTree]]:
    """Yield (id, tree) pairs from treebank text.

    For line-oriented formats the id is the 1-based line number; export
    files carry their own sentence ids.  With ``strip`` the
    part-of-speech layer is removed at ingestion.
    """
    if fmt not in FORMATS:
        raise ValueError("unknown treebank format %r" % fmt)
    if fmt == "export":
        pairs = _iter_export(source)
    else:
        def bracketed() -> Iterator[tuple[str, ConstituentTree]]:
            for lineno, line in enumerate(source, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    yield str(lineno), parse_bracketed(line, fmt)
                except TreebankFormatError as exc:
                    raise TreebankFormatError(str(exc), lineno) from exc
        pairs = bracketed()
    for sent_id, tree in pairs:
        yield sent_id, strip_preterminals(tree) if strip else tree


def read_treebank(path: str, fmt: str,
                  strip: bool = False) -> list[tuple[str, ConstituentTree]]:
    with open(path, encoding="utf-8") as fh:
        return list(iter_treebank(fh, fmt, strip=strip))


def write_treebank(trees: Iterable[ConstituentTree], out: TextIO,
                   fmt: str = "discbracket") -> None:
    for tree in trees:
        out.write(write_bracketed(tree, fmt))
        out.write("\n")


def treebank_to_text(trees: Iterable[ConstituentTree],
                     fmt: str = "discbracket") -> str:
    buf = io.StringIO()
    write_treebank(trees, buf, fmt)
    return buf.getvalue()
