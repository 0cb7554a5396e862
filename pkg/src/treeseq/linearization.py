"""Token surfaces for transition sequences.

The wire format a sequence model reads and writes: one whitespace-joined
token per transition.  Non-lexicalized surfaces are ``SH``, ``SH#k``,
``NT-X``, ``RE``, ``RE#k-X``, ``SW`` and ``SW#k``; in lexicalized mode
every shift is rendered as the surface word it transfers, and decoding
resolves a word token to its first occurrence in the buffer (the lossy
rule that caps lexicalized Shift#k reconstruction below 100%).

Parameterized tokens are atomic vocabulary items; they are never split
into digits.  Action surfaces are reserved: a sentence word spelled
exactly like one decodes as the action.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .oracles import oracle
from .transitions import (REDUCE, SHIFT, SWAP, IllegalTransition, NonTerminal,
                          NonTerminalState, Reduce, ReduceK, Shift, ShiftK,
                          SubtreeItem, Swap, SwapK, SystemSpec, Transition,
                          TransitionError, _finish_repair, _step_total,
                          _try_step, make_nt, make_reducek, make_shiftk)
from .trees import ConstituentTree, Sentence


@dataclass(frozen=True)
class LinearizationSpec:
    """A transition system plus the lexicalized-shift switch."""

    system: SystemSpec
    lexicalized: bool = False

    def __str__(self) -> str:
        return "%s%s" % (self.system, "+lex" if self.lexicalized else "")


class TokenError(ValueError):
    def __init__(self, message: str, token: str, index: int):
        super().__init__("token %d (%r): %s" % (index, token, message))
        self.token = token
        self.index = index

    def __reduce__(self):
        # keep subclasses picklable across worker processes
        return type(self), (self.token, self.index)


class UnknownToken(TokenError):
    """Strict decoding met a token that is no action surface."""

    def __init__(self, token: str, index: int):
        super().__init__("not a recognized action token", token, index)


class WordNotInBuffer(TokenError):
    """Strict lexicalized decoding met a word absent from the buffer."""

    def __init__(self, token: str, index: int):
        super().__init__("word does not occur in the remaining buffer",
                         token, index)


def transition_token(t: Transition) -> str:
    """The non-lexicalized surface form of one transition."""
    tt = type(t)
    if tt is Shift:
        return "SH"
    if tt is Reduce:
        return "RE"
    if tt is Swap:
        return "SW"
    if tt is ShiftK:
        return "SH#%d" % t.k
    if tt is SwapK:
        return "SW#%d" % t.k
    if tt is NonTerminal:
        return "NT-%s" % t.label
    if tt is ReduceK:
        return "RE#%d-%s" % (t.k, t.label)
    raise ValueError("unknown transition %r" % (t,))


def parse_action_token(token: str) -> Transition | None:
    """Decode an action surface, or None when the token is no action."""
    if token == "SH":
        return SHIFT
    if token == "RE":
        return REDUCE
    if token == "SW":
        return SWAP
    if token.startswith("SH#"):
        k = _parse_int(token[3:])
        return None if k is None else make_shiftk(k)
    if token.startswith("SW#"):
        k = _parse_int(token[3:])
        return None if k is None or k < 1 else SwapK(k)
    if token.startswith("NT-"):
        label = token[3:]
        return make_nt(label) if label else None
    if token.startswith("RE#"):
        count, sep, label = token[3:].partition("-")
        k = _parse_int(count)
        if not sep or k is None or k < 1 or not label:
            return None
        return make_reducek(k, label)
    return None


def _parse_int(text: str) -> int | None:
    return int(text) if text.isdigit() else None


def to_tokens(transitions: Sequence[Transition], spec: LinearizationSpec,
              sentence: Sentence) -> list[str]:
    """Render an executable transition sequence as surface tokens."""
    words = sentence.words
    stack: list = []
    buffer = list(range(len(sentence)))
    lex = spec.lexicalized
    tokens: list[str] = []
    for step, t in enumerate(transitions):
        reason = _try_step(stack, buffer, t, spec.system)
        if reason is not None:
            raise IllegalTransition(t, reason, step=step)
        tt = type(t)
        if lex and (tt is Shift or tt is ShiftK):
            # the word just shifted is now the stack top
            tokens.append(words[stack[-1].position])
        else:
            tokens.append(transition_token(t))
    return tokens


def _resolve_word(token: str, buffer: list, words, strict: bool,
                  index: int) -> Transition | None:
    """Decode a word token against the current buffer (the lossy rule).

    The front word decodes as Shift, any other occurrence as Shift#k of
    its FIRST match.  Unknown surfaces raise in strict mode and fall
    back to shifting the buffer front in repair mode (None = drop).
    """
    k = -1
    for j, p in enumerate(buffer):
        if words[p] == token:
            k = j
            break
    if k < 0:
        if strict:
            raise WordNotInBuffer(token, index)
        return SHIFT if buffer else None
    return SHIFT if k == 0 else make_shiftk(k)


def from_tokens(tokens: Sequence[str], sentence: Sentence,
                spec: LinearizationSpec, mode: str = "strict") -> list[Transition]:
    """Decode surface tokens back into transitions.

    Word tokens (lexicalized mode) are resolved by simulating the
    derivation: a token matching the buffer front decodes as Shift,
    anything else as Shift#k of its first buffer occurrence.  Repair
    mode drops unknown tokens (non-lexicalized) and treats unknown
    surfaces as a shift of the buffer front (lexicalized); strict mode
    raises instead.
    """
    if mode not in ("strict", "repair"):
        raise ValueError("mode must be 'strict' or 'repair', got %r" % mode)
    strict = mode == "strict"
    words = sentence.words
    stack: list = []
    buffer = list(range(len(sentence)))
    out: list[Transition] = []
    for index, token in enumerate(tokens):
        t = parse_action_token(token)
        if t is None:
            if not spec.lexicalized:
                if strict:
                    raise UnknownToken(token, index)
                continue
            t = _resolve_word(token, buffer, words, strict, index)
            if t is None:
                continue
        out.append(t)
        _step_total(stack, buffer, t, spec.system)
    return out


def tokens_to_tree(tokens: Sequence[str], sentence: Sentence,
                   spec: LinearizationSpec,
                   mode: str = "strict") -> ConstituentTree:
    """Decode tokens and execute them in a single pass.

    Equivalent to running :func:`from_tokens` and then executing the
    result, including which error strict mode raises first.
    """
    if mode not in ("strict", "repair"):
        raise ValueError("mode must be 'strict' or 'repair', got %r" % mode)
    strict = mode == "strict"
    words = sentence.words
    system = spec.system
    stack: list = []
    buffer = list(range(len(sentence)))
    for index, token in enumerate(tokens):
        t = parse_action_token(token)
        if t is None:
            if not spec.lexicalized:
                if strict:
                    raise UnknownToken(token, index)
                continue
            t = _resolve_word(token, buffer, words, strict, index)
            if t is None:
                continue
        if strict:
            reason = _try_step(stack, buffer, t, system)
            if reason is not None:
                raise IllegalTransition(t, reason, step=index)
        else:
            _step_total(stack, buffer, t, system)
    if strict:
        if buffer or len(stack) != 1 or type(stack[0]) is not SubtreeItem:
            raise NonTerminalState(
                "decoding ended with %d stack items and %d buffer words"
                % (len(stack), len(buffer)))
        root = stack[0].node
    else:
        root = _finish_repair(stack, buffer, system.base)
    return ConstituentTree(sentence, root)


def tree_to_tokens(tree: ConstituentTree,
                   spec: LinearizationSpec) -> list[str]:
    """Oracle plus rendering: the full encode direction."""
    return to_tokens(oracle(tree, spec.system), spec, tree.sentence)


# --- vocabulary ------------------------------------------------------------

@dataclass(frozen=True)
class Vocab:
    """Action-token inventory of a linearized corpus.

    ``action_tokens`` is ordered by frequency (descending, ties broken
    lexicographically); ``counts`` holds the frequency of every token
    seen, words included.
    """

    action_tokens: tuple[str, ...]
    counts: dict[str, int]


def build_vocab(token_sequences: Iterable[Sequence[str]]) -> Vocab:
    counts: Counter[str] = Counter()
    for seq in token_sequences:
        counts.update(seq)
    actions = [tok for tok in counts if parse_action_token(tok) is not None]
    actions.sort(key=lambda tok: (-counts[tok], tok))
    return Vocab(tuple(actions), dict(counts))


# --- whole-corpus reproduction ceiling --------------------------------------

def reproduce(tree: ConstituentTree,
              spec: LinearizationSpec) -> ConstituentTree:
    """Encode a tree and decode it again, repairing only when needed.

    This measures what the encoding itself can express: the pipeline is
    oracle -> tokens -> transitions -> execution, strict wherever the
    decoded sequence still executes, repair otherwise.
    """
    tokens = tree_to_tokens(tree, spec)
    try:
        return tokens_to_tree(tokens, tree.sentence, spec, mode="strict")
    except (TokenError, TransitionError):
        return tokens_to_tree(tokens, tree.sentence, spec, mode="repair")


def lossiness_report(trees: Sequence[ConstituentTree],
                     spec: LinearizationSpec, policy=None,
                     exclude_root: bool = True):
    """Reproduction ceiling of an encoding over a gold corpus.

    Returns the bracket scores of encode-decode-execute output against
    the input trees; 100 everywhere for lossless encodings, below 100
    for lexicalized Shift#k whenever first-occurrence resolution picks
    the wrong duplicate.
    """
    from .evaluation import score
    preds = [reproduce(tree, spec) for tree in trees]
    return score(list(trees), preds, policy=policy, exclude_root=exclude_root)


# --- linearized corpus files -------------------------------------------------

class CorpusFormatError(ValueError):
    """Malformed linearized-corpus file."""


@dataclass(frozen=True)
class CorpusRecord:
    """One line of a linearized corpus file."""

    id: str
    words: tuple[str, ...] | None = None
    tokens: tuple[str, ...] | None = None

    def sentence(self) -> Sentence:
        if self.words is None:
            raise CorpusFormatError("record %s has no words field" % self.id)
        return Sentence(self.words)


def read_corpus(source: Iterable[str]) -> list[CorpusRecord]:
    """Read JSON-lines records with fields id, words, tokens."""
    records = []
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError("line %d: %s" % (lineno, exc)) from exc
        if not isinstance(obj, dict) or "id" not in obj:
            raise CorpusFormatError("line %d: record needs an id field" % lineno)
        words = obj.get("words")
        tokens = obj.get("tokens")
        records.append(CorpusRecord(
            id=str(obj["id"]),
            words=tuple(words.split()) if isinstance(words, str) else None,
            tokens=tuple(tokens.split()) if isinstance(tokens, str) else None))
    return records


def read_corpus_file(path: str) -> list[CorpusRecord]:
    with open(path, encoding="utf-8") as fh:
        return read_corpus(fh)


def write_corpus(records: Iterable[CorpusRecord], out: TextIO) -> None:
    for rec in records:
        obj: dict = {"id": rec.id}
        if rec.words is not None:
            obj["words"] = " ".join(rec.words)
        if rec.tokens is not None:
            obj["tokens"] = " ".join(rec.tokens)
        out.write(json.dumps(obj, ensure_ascii=False))
        out.write("\n")
