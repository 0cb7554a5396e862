"""Batched beam-search prediction back into the corpus file contract."""

from __future__ import annotations

import torch
from transformers import AutoModelForSeq2SeqLM, AutoTokenizer
from transformers.utils import logging as hf_logging

from .config import BridgeConfig
from .corpus import Record, read_records, write_records
from .tokenization import load_spec_sidecar, load_vocab_sidecar


def bridge_predict(checkpoint_dir: str, sentences_file: str, out_path: str,
                   config: BridgeConfig, log=print) -> int:
    """Generate one token sequence per input sentence.

    The checkpoint must carry the vocab and linearization sidecars that
    ``bridge_train`` wrote; downstream decoding and scoring stay with
    the parser toolkit's own commands.
    """
    hf_logging.disable_progress_bar()
    load_vocab_sidecar(checkpoint_dir)  # fail fast when missing
    spec_info = load_spec_sidecar(checkpoint_dir)
    log("predicting with linearization %s" % (spec_info,))

    tokenizer = AutoTokenizer.from_pretrained(checkpoint_dir)
    model = AutoModelForSeq2SeqLM.from_pretrained(checkpoint_dir)
    model.eval()

    records = read_records(sentences_file, need_words=True)
    out_records = []
    generate_args = dict(
        num_beams=config.beam_size,
        max_new_tokens=config.max_sequence_length,
        early_stopping=config.beam_size > 1)
    if config.do_sample:
        generate_args.update(do_sample=True, temperature=config.temperature)

    batch = config.eval_batch_size
    with torch.no_grad():
        for start in range(0, len(records), batch):
            chunk = records[start:start + batch]
            enc = tokenizer([rec.words for rec in chunk], return_tensors="pt",
                            padding=True)
            generated = model.generate(
                input_ids=enc["input_ids"],
                attention_mask=enc["attention_mask"], **generate_args)
            for rec, ids in zip(chunk, generated):
                text = tokenizer.decode(ids, skip_special_tokens=True)
                tokens = " ".join(text.split())
                out_records.append(Record(id=rec.id, words=rec.words,
                                          tokens=tokens))
    with open(out_path, "w", encoding="utf-8") as fh:
        write_records(out_records, fh)
    return len(out_records)
