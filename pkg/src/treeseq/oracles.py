"""Gold transition sequences for every system combination.

Each oracle is deterministic and produces a sequence whose strict
execution rebuilds the input tree (with children in canonical
min-position order, which is how constituents come off the stack).

Discontinuous oracles work against the canonical word order: the tree
is projected onto its canonical permutation, the continuous oracle runs
there, and the shifts are then realized over the original buffer either
by shift-then-swap bubbling (Swap systems) or by indexing directly into
the buffer (Shift#k).
"""

from __future__ import annotations

from .transitions import (REDUCE, SHIFT, SWAP, Base, Disc, Shift, Swap,
                          SwapK, SystemSpec, Transition, make_nt,
                          make_reducek, make_shiftk)
from .trees import ConstituentTree, Internal, Leaf, canonicalize, sort_children


class UnsupportedSystem(ValueError):
    """Raised for system combinations the toolkit does not define."""


def _continuous_plan(root: Internal, base: Base) -> list[Transition]:
    """Traversal plan for an already min-position-sorted continuous tree."""
    out: list[Transition] = []

    if base is Base.TOP_DOWN:
        def visit(node: Internal) -> None:
            out.append(make_nt(node.label))
            for child in node.children:
                if type(child) is Leaf:
                    out.append(SHIFT)
                else:
                    visit(child)
            out.append(REDUCE)
    elif base is Base.BOTTOM_UP:
        def visit(node: Internal) -> None:
            for child in node.children:
                if type(child) is Leaf:
                    out.append(SHIFT)
                else:
                    visit(child)
            out.append(make_reducek(len(node.children), node.label))
    elif base is Base.IN_ORDER:
        def visit(node: Internal) -> None:
            first = node.children[0]
            if type(first) is Leaf:
                out.append(SHIFT)
            else:
                visit(first)
            out.append(make_nt(node.label))
            for child in node.children[1:]:
                if type(child) is Leaf:
                    out.append(SHIFT)
                else:
                    visit(child)
            out.append(REDUCE)
    else:
        raise UnsupportedSystem("unknown base system %r" % (base,))

    visit(root)
    return out


def oracle_continuous(tree: ConstituentTree, base: Base) -> list[Transition]:
    """Linearize a continuous tree under one of the three base systems."""
    if not tree.is_continuous():
        raise UnsupportedSystem(
            "tree is discontinuous; pick a swap or shift#k system")
    return _continuous_plan(sort_children(tree.root), base)


def _check_disc_base(base: Base) -> None:
    if base is Base.BOTTOM_UP:
        raise UnsupportedSystem(
            "discontinuous parsing is defined for the top-down and "
            "in-order systems only")


def oracle_swap(tree: ConstituentTree, base: Base) -> list[Transition]:
    """Swap-based oracle; works for continuous and discontinuous trees.

    Every shift of the canonical derivation is realized as: shift the
    buffer words standing before the target, shift the target, then swap
    the intervening words back to the buffer front in their original
    relative order.  On continuous input no swaps are emitted and the
    result equals :func:`oracle_continuous`.
    """
    _check_disc_base(base)
    canon, perm = canonicalize(tree)
    plan = _continuous_plan(canon.root, base)
    buffer = list(range(tree.n))
    out: list[Transition] = []
    shifted = 0
    for t in plan:
        if type(t) is Shift:
            target = perm[shifted]
            shifted += 1
            idx = buffer.index(target)
            out.extend([SHIFT] * (idx + 1))
            out.extend([SWAP] * idx)
            del buffer[idx]
        else:
            out.append(t)
    return out


def compress_swaps(transitions) -> list[Transition]:
    """Replace every maximal run of r Swaps with a single Swap#r."""
    out: list[Transition] = []
    run = 0
    for t in transitions:
        if type(t) is Swap:
            run += 1
            continue
        if run:
            out.append(SwapK(run))
            run = 0
        out.append(t)
    if run:
        out.append(SwapK(run))
    return out


def oracle_shiftk(tree: ConstituentTree, base: Base) -> list[Transition]:
    """Shift#k oracle: index shifts into the buffer, no reordering.

    The output has exactly the length of the continuous oracle on the
    canonicalized tree, which is what makes this encoding as short as
    the continuous ones.
    """
    _check_disc_base(base)
    canon, perm = canonicalize(tree)
    plan = _continuous_plan(canon.root, base)
    buffer = list(range(tree.n))
    out: list[Transition] = []
    shifted = 0
    for t in plan:
        if type(t) is Shift:
            target = perm[shifted]
            shifted += 1
            idx = buffer.index(target)
            out.append(make_shiftk(idx))
            del buffer[idx]
        else:
            out.append(t)
    return out


def oracle(tree: ConstituentTree, spec: SystemSpec) -> list[Transition]:
    """Dispatch to the oracle matching ``spec``."""
    if spec.disc is Disc.NONE:
        return oracle_continuous(tree, spec.base)
    if spec.disc is Disc.SWAP:
        return oracle_swap(tree, spec.base)
    if spec.disc is Disc.SWAPK:
        return compress_swaps(oracle_swap(tree, spec.base))
    if spec.disc is Disc.SHIFTK:
        return oracle_shiftk(tree, spec.base)
    raise UnsupportedSystem("unknown discontinuity mechanism %r" % (spec.disc,))
