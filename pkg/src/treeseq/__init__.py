"""treeseq: constituent trees as transition-token sequences, and back.

The toolkit converts continuous and discontinuous constituent trees to
the token sequences a sequence-to-sequence parser is trained on
(top-down / bottom-up / in-order bases, with Swap, Swap#k or Shift#k for
discontinuities, optionally lexicalized), decodes possibly ill-formed
model output back into valid trees, and scores predictions with bracket
F1, discontinuous F1 and structural breakdowns.
"""

from .evaluation import (BreakdownReport, CorpusMismatch, EvalReport,
                         breakdown, score, tree_brackets)
from .linearization import (CorpusRecord, LinearizationSpec, TokenError,
                            UnknownToken, Vocab, WordNotInBuffer, build_vocab,
                            from_tokens, lossiness_report, parse_action_token,
                            read_corpus, read_corpus_file, reproduce,
                            to_tokens, tokens_to_tree, transition_token,
                            tree_to_tokens, write_corpus)
from .oracles import (UnsupportedSystem, compress_swaps, oracle,
                      oracle_continuous, oracle_shiftk, oracle_swap)
from .synth import random_corpus, random_tree
from .transitions import (Base, Disc, IllegalTransition, NonTerminal,
                          NonTerminalState, OpenNT, ParserState, Reduce,
                          ReduceK, Shift, ShiftK, SubtreeItem, Swap, SwapK,
                          SystemSpec, Transition, TransitionError, WordItem,
                          apply, execute, legal)
from .treebank import (TreebankFormatError, iter_treebank, parse_bracketed,
                       read_treebank, write_bracketed, write_treebank)
from .trees import (Constituent, ConstituentTree, Internal, Leaf,
                    PunctuationPolicy, Sentence, canonicalize, gap_degree,
                    is_contiguous, node_yield, sort_children,
                    strip_preterminals)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
