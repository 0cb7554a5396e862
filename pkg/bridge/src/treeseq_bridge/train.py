"""Fine-tune an encoder-decoder checkpoint on a linearized corpus."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

import torch
from torch.optim import AdamW
from transformers import (AutoModelForSeq2SeqLM, BartConfig,
                          BartForConditionalGeneration,
                          get_linear_schedule_with_warmup)
from transformers.utils import logging as hf_logging

from .config import BridgeConfig
from .corpus import Record, read_records
from .tokenization import (action_tokens_from_corpus, build_tokenizer,
                           save_sidecars)

TINY = "tiny"  # randomly initialized small config, for smoke runs


@dataclass
class TrainSummary:
    steps: int
    skipped: int
    train_loss: float
    dev_loss: float
    out_dir: str


def _make_model(checkpoint: str, vocab_size: int, config: BridgeConfig):
    if checkpoint == TINY:
        model_config = BartConfig(
            vocab_size=vocab_size, d_model=64,
            encoder_layers=2, decoder_layers=2,
            encoder_attention_heads=2, decoder_attention_heads=2,
            encoder_ffn_dim=128, decoder_ffn_dim=128,
            max_position_embeddings=config.max_sequence_length,
            dropout=config.dropout,
            pad_token_id=0, bos_token_id=1, eos_token_id=2,
            decoder_start_token_id=1, forced_eos_token_id=None)
        return BartForConditionalGeneration(model_config)
    model = AutoModelForSeq2SeqLM.from_pretrained(checkpoint)
    model.resize_token_embeddings(vocab_size)
    return model


def _encode_pairs(records: list[Record], tokenizer, max_length: int):
    """Tokenize (words, tokens) pairs, dropping over-long records."""
    kept, skipped = [], 0
    for rec in records:
        source = tokenizer(rec.words)["input_ids"]
        target = tokenizer(rec.tokens)["input_ids"]
        if len(source) > max_length or len(target) > max_length:
            skipped += 1
            continue
        kept.append((source, target))
    return kept, skipped


def _batches(pairs, batch_size: int, pad_id: int):
    for start in range(0, len(pairs), batch_size):
        chunk = pairs[start:start + batch_size]
        src_len = max(len(s) for s, _ in chunk)
        tgt_len = max(len(t) for _, t in chunk)
        input_ids, attention, labels = [], [], []
        for source, target in chunk:
            pad_src = src_len - len(source)
            input_ids.append(source + [pad_id] * pad_src)
            attention.append([1] * len(source) + [0] * pad_src)
            labels.append(target + [-100] * (tgt_len - len(target)))
        yield (torch.tensor(input_ids), torch.tensor(attention),
               torch.tensor(labels))


def _epoch_loss(model, pairs, batch_size: int, pad_id: int) -> float:
    model.eval()
    total, count = 0.0, 0
    with torch.no_grad():
        for input_ids, attention, labels in _batches(pairs, batch_size, pad_id):
            out = model(input_ids=input_ids, attention_mask=attention,
                        labels=labels)
            total += float(out.loss.detach())
            count += 1
    return total / count if count else 0.0


def bridge_train(train_file: str, dev_file: str, checkpoint: str,
                 config: BridgeConfig, out_dir: str, spec_info: dict,
                 vocab_file: str | None = None,
                 log=print) -> TrainSummary:
    """Fine-tune ``checkpoint`` on the corpus and save everything needed
    for prediction: model, tokenizer, the exact action-token vocabulary,
    and the linearization the corpus was produced with."""
    hf_logging.disable_progress_bar()
    torch.manual_seed(config.seed)
    random.seed(config.seed)

    train = read_records(train_file, need_words=True, need_tokens=True)
    dev = read_records(dev_file, need_words=True, need_tokens=True)

    if vocab_file:
        import json
        with open(vocab_file, encoding="utf-8") as fh:
            action_tokens = list(json.load(fh)["action_tokens"])
    else:
        action_tokens = action_tokens_from_corpus(train_file)

    words = [w for rec in train + dev for w in rec.words.split()]
    tokenizer = build_tokenizer(words, action_tokens)
    model = _make_model(checkpoint, len(tokenizer), config)

    max_len = config.max_sequence_length
    train_pairs, skipped_train = _encode_pairs(train, tokenizer, max_len)
    dev_pairs, skipped_dev = _encode_pairs(dev, tokenizer, max_len)
    skipped = skipped_train + skipped_dev
    if skipped:
        log("skipped %d over-length record(s) (> %d tokens)"
            % (skipped, max_len))
    if not train_pairs:
        raise ValueError("no trainable records under the length limit")

    pad_id = tokenizer.pad_token_id
    steps_per_epoch = (len(train_pairs) + config.train_batch_size - 1) \
        // config.train_batch_size
    total_steps = steps_per_epoch * config.epochs
    optimizer = AdamW(model.parameters(), lr=config.learning_rate,
                      betas=(config.adam_beta1, config.adam_beta2),
                      eps=config.adam_epsilon,
                      weight_decay=config.weight_decay)
    scheduler = get_linear_schedule_with_warmup(
        optimizer, int(config.warmup_ratio * total_steps), total_steps)

    steps = 0
    train_loss = 0.0
    order = list(range(len(train_pairs)))
    shuffle = random.Random(config.seed)
    for epoch in range(config.epochs):
        model.train()
        shuffle.shuffle(order)
        shuffled = [train_pairs[i] for i in order]
        running, batches = 0.0, 0
        for input_ids, attention, labels in _batches(
                shuffled, config.train_batch_size, pad_id):
            out = model(input_ids=input_ids, attention_mask=attention,
                        labels=labels)
            out.loss.backward()
            optimizer.step()
            scheduler.step()
            optimizer.zero_grad()
            running += float(out.loss.detach())
            batches += 1
            steps += 1
        train_loss = running / batches if batches else 0.0
        log("epoch %d/%d: train loss %.4f" % (epoch + 1, config.epochs,
                                              train_loss))
    dev_loss = _epoch_loss(model, dev_pairs, config.eval_batch_size, pad_id)
    log("dev loss %.4f" % dev_loss)

    os.makedirs(out_dir, exist_ok=True)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    save_sidecars(out_dir, action_tokens, spec_info)
    with open(os.path.join(out_dir, "bridge_config.txt"), "w",
              encoding="utf-8") as fh:
        fh.write(config.dump())
    return TrainSummary(steps=steps, skipped=skipped, train_loss=train_loss,
                        dev_loss=dev_loss, out_dir=out_dir)
