"""Stack/buffer transition systems for constituent parsing.

Implements the top-down, bottom-up and in-order systems together with
the three discontinuity mechanisms (Swap, Swap#k, Shift#k).  ``apply``
and ``legal`` give exact single-step semantics over immutable states;
``execute`` runs whole sequences either strictly (raising on the first
violated precondition) or in repair mode, which never fails and always
returns a well-formed tree, so that arbitrary model output stays
evaluable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

from .trees import ConstituentTree, Internal, Leaf, Sentence


class Base(enum.Enum):
    TOP_DOWN = "topdown"
    BOTTOM_UP = "bottomup"
    IN_ORDER = "inorder"


class Disc(enum.Enum):
    NONE = "none"
    SWAP = "swap"
    SWAPK = "swapk"
    SHIFTK = "shiftk"


@dataclass(frozen=True)
class SystemSpec:
    """A base system plus the mechanism used for discontinuities."""

    base: Base
    disc: Disc = Disc.NONE

    @classmethod
    def parse(cls, base: str, disc: str = "none") -> "SystemSpec":
        return cls(Base(base), Disc(disc))

    def __str__(self) -> str:
        return "%s+%s" % (self.base.value, self.disc.value)


# --- transitions -----------------------------------------------------------

@dataclass(frozen=True)
class Shift:
    """Move the front buffer word onto the stack."""


@dataclass(frozen=True)
class ShiftK:
    """Move the word at buffer index k onto the stack (k=0 is Shift)."""

    k: int


@dataclass(frozen=True)
class NonTerminal:
    """Push an open non-terminal marker."""

    label: str


@dataclass(frozen=True)
class Reduce:
    """Close the nearest open non-terminal into a constituent."""


@dataclass(frozen=True)
class ReduceK:
    """Pop k completed items and group them under ``label`` (bottom-up)."""

    k: int
    label: str


@dataclass(frozen=True)
class Swap:
    """Move the second-from-top stack word back to the buffer front."""


@dataclass(frozen=True)
class SwapK:
    """k consecutive Swaps (Swap#1 is a single Swap)."""

    k: int


Transition = Union[Shift, ShiftK, NonTerminal, Reduce, ReduceK, Swap, SwapK]

SHIFT = Shift()
REDUCE = Reduce()
SWAP = Swap()

# Interning caches: oracles and decoders churn through the same few
# parameterized transitions millions of times in corpus-sized runs.
_NT_CACHE: dict = {}
_SHIFTK_CACHE: dict = {}
_REDUCEK_CACHE: dict = {}


def make_nt(label: str) -> NonTerminal:
    t = _NT_CACHE.get(label)
    if t is None:
        t = _NT_CACHE[label] = NonTerminal(label)
    return t


def make_shiftk(k: int) -> ShiftK:
    t = _SHIFTK_CACHE.get(k)
    if t is None:
        t = _SHIFTK_CACHE[k] = ShiftK(k)
    return t


def make_reducek(k: int, label: str) -> ReduceK:
    t = _REDUCEK_CACHE.get((k, label))
    if t is None:
        t = _REDUCEK_CACHE[(k, label)] = ReduceK(k, label)
    return t


# --- parser state ----------------------------------------------------------

@dataclass(frozen=True)
class WordItem:
    position: int


@dataclass(frozen=True)
class SubtreeItem:
    node: Internal


@dataclass(frozen=True)
class OpenNT:
    label: str


StackItem = Union[WordItem, SubtreeItem, OpenNT]


@dataclass(frozen=True)
class ParserState:
    """Snapshot of the stack and buffer during a derivation."""

    stack: tuple[StackItem, ...]
    buffer: tuple[int, ...]

    @classmethod
    def initial(cls, n: int) -> "ParserState":
        return cls((), tuple(range(n)))

    def is_terminal(self) -> bool:
        return (not self.buffer and len(self.stack) == 1
                and type(self.stack[0]) is SubtreeItem)


class TransitionError(Exception):
    pass


class IllegalTransition(TransitionError):
    def __init__(self, transition: Transition, reason: str,
                 step: int | None = None):
        at = "" if step is None else " at step %d" % step
        super().__init__("illegal %r%s: %s" % (transition, at, reason))
        self.transition = transition
        self.reason = reason
        self.step = step

    def __reduce__(self):
        # keep the exception picklable across worker processes
        return type(self), (self.transition, self.reason, self.step)


class NonTerminalState(TransitionError):
    """Strict execution ended without an empty buffer + single subtree."""


# --- single-step semantics -------------------------------------------------

def _nearest_marker(stack: list) -> int:
    for i in range(len(stack) - 1, -1, -1):
        if type(stack[i]) is OpenNT:
            return i
    return -1


def _item_node(item: StackItem):
    return item.node if type(item) is SubtreeItem else Leaf(item.position)


def _try_step(stack: list, buffer: list, t: Transition,
              spec: SystemSpec) -> str | None:
    """Apply ``t`` in place when legal; return the violation otherwise.

    Checking and applying are fused because this runs once per token of
    every encode, decode and execute pass.
    """
    tt = type(t)
    if tt is Shift:
        if not buffer:
            return "buffer is empty"
        stack.append(WordItem(buffer.pop(0)))
        return None
    if tt is ShiftK:
        k = t.k
        if k != 0 and spec.disc is not Disc.SHIFTK:
            return "Shift#k is not part of this system"
        if not 0 <= k < len(buffer):
            return "buffer index %d out of range" % k
        stack.append(WordItem(buffer.pop(k)))
        return None
    if tt is NonTerminal:
        base = spec.base
        if base is Base.BOTTOM_UP:
            return "the bottom-up system has no non-terminal action"
        if base is Base.IN_ORDER and (not stack or type(stack[-1]) is OpenNT):
            return "in-order non-terminal requires its first child on top"
        stack.append(OpenNT(t.label))
        return None
    if tt is Reduce:
        base = spec.base
        if base is Base.BOTTOM_UP:
            return "the bottom-up system reduces with Reduce#k-X"
        i = _nearest_marker(stack)
        if i < 0:
            return "no open non-terminal on the stack"
        label = stack[i].label
        if base is Base.IN_ORDER:
            if i == 0 or type(stack[i - 1]) is OpenNT:
                return "no first child below the open non-terminal"
            children = stack[i - 1:i] + stack[i + 1:]
            del stack[i - 1:]
        else:
            if i == len(stack) - 1:
                return "reduce would create an empty constituent"
            children = stack[i + 1:]
            del stack[i:]
        stack.append(SubtreeItem(
            Internal(label, tuple(_item_node(c) for c in children))))
        return None
    if tt is ReduceK:
        k = t.k
        if spec.base is not Base.BOTTOM_UP:
            return "Reduce#k-X belongs to the bottom-up system"
        if k < 1:
            return "reduce count must be at least 1"
        if len(stack) < k:
            return "stack has fewer than %d items" % k
        children = stack[-k:]
        if any(type(item) is OpenNT for item in children):
            return "open non-terminal inside the reduce window"
        del stack[-k:]
        stack.append(SubtreeItem(
            Internal(t.label, tuple(_item_node(c) for c in children))))
        return None
    if tt is Swap:
        if spec.disc is not Disc.SWAP and spec.disc is not Disc.SWAPK:
            return "Swap is not part of this system"
        reason = _swap_reason(stack, 1)
        if reason is None:
            buffer.insert(0, stack.pop(-2).position)
        return reason
    if tt is SwapK:
        k = t.k
        if k < 1:
            return "swap count must be at least 1"
        if spec.disc is not Disc.SWAPK and not (k == 1 and spec.disc is Disc.SWAP):
            return "Swap#k is not part of this system"
        reason = _swap_reason(stack, k)
        if reason is None:
            for _ in range(k):
                buffer.insert(0, stack.pop(-2).position)
        return reason
    return "unknown transition %r" % (t,)


def _swap_reason(stack: list, k: int) -> str | None:
    if len(stack) < k + 1:
        return "swap needs %d items below the stack top" % k
    for j in range(2, k + 2):
        if type(stack[-j]) is not WordItem:
            return "swap can only return words to the buffer"
    return None


def _repair_step(stack: list, buffer: list, t: Transition) -> None:
    """Total fallback for a transition that failed its precondition.

    Shifts are clamped to the buffer (or dropped when it is empty), a
    non-terminal is pushed top-down style, and everything else is
    skipped; missing structure is completed by :func:`_finish_repair`.
    """
    tt = type(t)
    if tt is Shift or tt is ShiftK:
        if buffer:
            k = t.k if tt is ShiftK else 0
            k = min(max(k, 0), len(buffer) - 1)
            stack.append(WordItem(buffer.pop(k)))
    elif tt is NonTerminal:
        stack.append(OpenNT(t.label))


def _step_total(stack: list, buffer: list, t: Transition,
                spec: SystemSpec) -> None:
    """One repair-mode step: apply when legal, otherwise repair."""
    if _try_step(stack, buffer, t, spec) is not None:
        _repair_step(stack, buffer, t)


def _finish_repair(stack: list, buffer: list, base: Base) -> Internal:
    """Close a repair-mode derivation into a single constituent.

    Remaining buffer words are shifted, unclosed non-terminals are
    reduced innermost first, and any leftover forest is grouped under a
    synthetic root.
    """
    while buffer:
        stack.append(WordItem(buffer.pop(0)))
    while True:
        i = _nearest_marker(stack)
        if i < 0:
            break
        label = stack[i].label
        above = stack[i + 1:]
        if (base is Base.IN_ORDER and i > 0
                and type(stack[i - 1]) is not OpenNT):
            children = [stack[i - 1]] + above
            del stack[i - 1:]
        elif above:
            children = above
            del stack[i:]
        else:
            del stack[i]  # an open non-terminal with nothing to hold
            continue
        stack.append(SubtreeItem(
            Internal(label, tuple(_item_node(c) for c in children))))
    if len(stack) == 1 and type(stack[0]) is SubtreeItem:
        return stack[0].node
    return Internal("ROOT", tuple(_item_node(item) for item in stack))


# --- public API ------------------------------------------------------------

def legal(state: ParserState, t: Transition, spec: SystemSpec) -> bool:
    """True iff ``t`` can be applied to ``state`` under strict semantics."""
    return _try_step(list(state.stack), list(state.buffer), t, spec) is None


def apply(state: ParserState, t: Transition, spec: SystemSpec) -> ParserState:
    """Apply one transition, returning the successor state."""
    stack, buffer = list(state.stack), list(state.buffer)
    reason = _try_step(stack, buffer, t, spec)
    if reason is not None:
        raise IllegalTransition(t, reason)
    return ParserState(tuple(stack), tuple(buffer))


def execute(sentence: Sentence, transitions: Sequence[Transition],
            spec: SystemSpec, mode: str = "strict") -> ConstituentTree:
    """Run a whole transition sequence over a fresh state.

    In strict mode every step must be legal and the final state terminal;
    repair mode instead applies local fixes and always returns a valid
    tree over the full sentence.
    """
    if mode not in ("strict", "repair"):
        raise ValueError("mode must be 'strict' or 'repair', got %r" % mode)
    strict = mode == "strict"
    stack: list = []
    buffer = list(range(len(sentence)))
    for step, t in enumerate(transitions):
        reason = _try_step(stack, buffer, t, spec)
        if reason is not None:
            if strict:
                raise IllegalTransition(t, reason, step=step)
            _repair_step(stack, buffer, t)
    if strict:
        if buffer or len(stack) != 1 or type(stack[0]) is not SubtreeItem:
            raise NonTerminalState(
                "derivation ended with %d stack items and %d buffer words"
                % (len(stack), len(buffer)))
        root = stack[0].node
    else:
        root = _finish_repair(stack, buffer, spec.base)
    return ConstituentTree(sentence, root)
