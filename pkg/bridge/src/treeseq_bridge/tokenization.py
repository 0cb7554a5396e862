"""Whitespace word-level tokenizer with action-token extension.

The base vocabulary is built from the corpus words; the action tokens
reported by the parser toolkit are then added as atomic entries, which
is the vocabulary-extension step the fine-tuning recipe calls for.
A word-level tokenizer keeps the round trip exact: decoding emits the
same whitespace-joined tokens the linearizer produced.
"""

from __future__ import annotations

import json
import os
import shutil
import subprocess
import sys
from typing import Iterable, Sequence

from tokenizers import Tokenizer, models, pre_tokenizers, processors
from transformers import PreTrainedTokenizerFast

PAD, BOS, EOS, UNK = "<pad>", "<s>", "</s>", "<unk>"

VOCAB_SIDECAR = "vocab.json"
SPEC_SIDECAR = "linearization.json"


def build_tokenizer(words: Iterable[str],
                    action_tokens: Sequence[str]) -> PreTrainedTokenizerFast:
    """Word-level tokenizer over ``words``, extended with action tokens."""
    vocab = {PAD: 0, BOS: 1, EOS: 2, UNK: 3}
    for word in sorted(set(words)):
        if word not in vocab:
            vocab[word] = len(vocab)
    core = Tokenizer(models.WordLevel(vocab, unk_token=UNK))
    core.pre_tokenizer = pre_tokenizers.WhitespaceSplit()
    core.post_processor = processors.TemplateProcessing(
        single="$A " + EOS, special_tokens=[(EOS, vocab[EOS])])
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_object=core, pad_token=PAD, bos_token=BOS, eos_token=EOS,
        unk_token=UNK)
    added = tokenizer.add_tokens(
        [t for t in action_tokens if t not in vocab])
    assert added <= len(action_tokens)
    return tokenizer


def primary_cli() -> list[str]:
    """Command prefix for the parser toolkit's command line."""
    exe = shutil.which("treeseq")
    if exe:
        return [exe]
    return [sys.executable, "-m", "treeseq.cli"]


def action_tokens_from_corpus(corpus_path: str) -> list[str]:
    """Ask the toolkit's ``vocab`` command for the corpus action tokens."""
    proc = subprocess.run(primary_cli() + ["vocab", corpus_path, "--json"],
                          capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError("vocab extraction failed: %s" % proc.stderr.strip())
    return list(json.loads(proc.stdout)["action_tokens"])


def save_sidecars(out_dir: str, action_tokens: Sequence[str],
                  spec_info: dict) -> None:
    with open(os.path.join(out_dir, VOCAB_SIDECAR), "w", encoding="utf-8") as fh:
        json.dump({"action_tokens": list(action_tokens)}, fh, indent=2)
        fh.write("\n")
    with open(os.path.join(out_dir, SPEC_SIDECAR), "w", encoding="utf-8") as fh:
        json.dump(spec_info, fh, indent=2)
        fh.write("\n")


def load_vocab_sidecar(checkpoint_dir: str) -> list[str]:
    path = os.path.join(checkpoint_dir, VOCAB_SIDECAR)
    if not os.path.exists(path):
        raise FileNotFoundError(
            "checkpoint %s has no %s sidecar; it was not produced by "
            "treeseq-bridge train" % (checkpoint_dir, VOCAB_SIDECAR))
    with open(path, encoding="utf-8") as fh:
        return list(json.load(fh)["action_tokens"])


def load_spec_sidecar(checkpoint_dir: str) -> dict:
    path = os.path.join(checkpoint_dir, SPEC_SIDECAR)
    if not os.path.exists(path):
        raise FileNotFoundError(
            "checkpoint %s has no %s sidecar" % (checkpoint_dir, SPEC_SIDECAR))
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
