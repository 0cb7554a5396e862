"""Thin adapter between pre-trained encoder-decoder checkpoints and the
treeseq linearized corpus file contract: fine-tune on (words, tokens)
records, predict token sequences back into the same format, and leave
all tree decoding and scoring to the parser toolkit.

Model-facing entry points live in :mod:`treeseq_bridge.train` and
:mod:`treeseq_bridge.predict` (imported lazily; they pull in torch).
"""

from .config import BridgeConfig
from .corpus import ContractError, Record, read_records, write_records

__version__ = "0.1.0"
