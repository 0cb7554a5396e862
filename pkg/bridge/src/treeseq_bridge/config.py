"""Flat key=value training configuration.

Defaults follow the standard fine-tuning recipe for these models (AdamW with
linear decay, warm-up ratio 0.1, learning rate 1e-5, max sequence
length 1024, beam size 10).  ``temperature`` is recorded alongside the
beam size because recipes often state both; plain beam search
ignores it, so it only takes effect when ``do_sample`` is switched on.
"""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class BridgeConfig:
    learning_rate: float = 1e-5
    weight_decay: float = 0.01
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8
    lr_scheduler: str = "linear"
    warmup_ratio: float = 0.1
    dropout: float = 0.1
    train_batch_size: int = 8
    eval_batch_size: int = 8
    epochs: int = 100
    max_sequence_length: int = 1024
    beam_size: int = 10
    temperature: float = 0.7
    do_sample: bool = False
    seed: int = 1

    @classmethod
    def load(cls, path: str | None) -> "BridgeConfig":
        config = cls()
        if path is None:
            return config
        types = {f.name: f.type for f in fields(cls)}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                key, value = key.strip(), value.strip()
                if not sep or not hasattr(config, key):
                    raise ValueError("%s:%d: unknown config line %r"
                                     % (path, lineno, line))
                current = getattr(config, key)
                if isinstance(current, bool):
                    setattr(config, key, value.lower() in ("1", "true", "yes"))
                elif isinstance(current, int):
                    setattr(config, key, int(value))
                elif isinstance(current, float):
                    setattr(config, key, float(value))
                else:
                    setattr(config, key, value)
        return config

    def dump(self) -> str:
        lines = []
        for f in fields(self):
            lines.append("%s=%s" % (f.name, getattr(self, f.name)))
        return "\n".join(lines) + "\n"
