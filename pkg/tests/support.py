"""Shared test helpers: the running example tree, terse tree builders,
and a naive bracket-scoring reference used as the independent oracle."""

from __future__ import annotations

from treeseq import ConstituentTree, Internal, Leaf, Sentence
from treeseq.transitions import (REDUCE, SHIFT, SWAP, NonTerminal, ShiftK)

NT = NonTerminal


def T(label, *children):
    return Internal(label, tuple(children))


def L(position):
    return Leaf(position)


def tree(words, root):
    return ConstituentTree(Sentence(tuple(words.split())), root)


# "What should I do ?" with WHNP{0}, VP{0,3}, SQ{0..3}, SBARQ{0..4}
WHAT_WORDS = "What should I do ?"


def what_tree():
    return tree(WHAT_WORDS, T("SBARQ",
                              T("SQ",
                                T("VP", T("WHNP", L(0)), L(3)),
                                L(1), L(2)),
                              L(4)))


# Hand-checked 21-transition in-order+Swap derivation of the tree above.
SWAP_DERIVATION = [
    SHIFT, NT("WHNP"), REDUCE, NT("VP"), SHIFT, SHIFT, SWAP, SHIFT, SHIFT,
    SWAP, SWAP, REDUCE, NT("SQ"), SHIFT, SHIFT, SWAP, SHIFT, REDUCE,
    NT("SBARQ"), SHIFT, REDUCE,
]

# Hand-checked 13-transition in-order+Shift#k derivation of the same tree.
SHIFTK_DERIVATION = [
    ShiftK(0), NT("WHNP"), REDUCE, NT("VP"), ShiftK(2), REDUCE, NT("SQ"),
    ShiftK(0), ShiftK(0), REDUCE, NT("SBARQ"), ShiftK(0), REDUCE,
]


# --- independent scoring reference ------------------------------------------
# Deliberately naive: bracket lists, quadratic matching, no shared code
# with treeseq.evaluation.

DEFAULT_PUNCT = (".", ",", ":", "``", "''", "-LRB-", "-RRB-", "?", "!")


def _bracket_list(t: ConstituentTree, punct, exclude_root):
    kept = []
    for i, w in enumerate(t.sentence.words):
        if w not in punct:
            kept.append(i)
    renumber = {}
    for new, old in enumerate(kept):
        renumber[old] = new

    out = []

    def leaf_positions(node):
        if isinstance(node, Leaf):
            return [node.position]
        acc = []
        for c in node.children:
            acc.extend(leaf_positions(c))
        return acc

    def walk(node, is_root):
        if isinstance(node, Leaf):
            return
        positions = []
        for p in leaf_positions(node):
            if p in renumber:
                positions.append(renumber[p])
        if positions and not (exclude_root and is_root):
            out.append((node.label, tuple(sorted(positions))))
        for c in node.children:
            walk(c, False)

    walk(t.root, True)
    return out


def _is_gappy(positions):
    for a, b in zip(positions, positions[1:]):
        if b != a + 1:
            return True
    return False


def _ratio(num, den):
    return 100.0 * num / den if den else 0.0


def brute_force_scores(gold, pred, punct=DEFAULT_PUNCT, exclude_root=True):
    """Reference scorer: materialize bracket lists, match them one by one."""
    matched = total_gold = total_pred = 0
    d_matched = d_gold = d_pred = 0
    exact = 0
    for g, p in zip(gold, pred):
        gb = _bracket_list(g, punct, exclude_root)
        pb = _bracket_list(p, punct, exclude_root)
        used = [False] * len(pb)
        for bracket in gb:
            for j, candidate in enumerate(pb):
                if not used[j] and candidate == bracket:
                    used[j] = True
                    matched += 1
                    if _is_gappy(bracket[1]):
                        d_matched += 1
                    break
        total_gold += len(gb)
        total_pred += len(pb)
        d_gold += sum(1 for b in gb if _is_gappy(b[1]))
        d_pred += sum(1 for b in pb if _is_gappy(b[1]))
        if sorted(gb) == sorted(pb):
            exact += 1
    precision = _ratio(matched, total_pred)
    recall = _ratio(matched, total_gold)
    f1 = 2 * precision * recall / (precision + recall) \
        if precision + recall else 0.0
    if d_gold:
        dp = _ratio(d_matched, d_pred)
        dr = _ratio(d_matched, d_gold)
        df = 2 * dp * dr / (dp + dr) if dp + dr else 0.0
    else:
        dp = dr = df = None
    return {
        "precision": precision, "recall": recall, "f1": f1,
        "disco_precision": dp, "disco_recall": dr, "disco_f1": df,
        "exact_match": _ratio(exact, len(gold)),
    }
