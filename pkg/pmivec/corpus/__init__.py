from pmivec.corpus.vocab import (
    TokenStream,
    Vocabulary,
    tokenize,
    read_corpus,
    build_vocab,
    write_vocab,
    read_vocab,
)
from pmivec.corpus.stream import (
    DEFAULT_SUBSAMPLE_T,
    DEFAULT_WINDOW,
    discard_probabilities,
    subsample,
    pair_stream,
    pair_total,
)
from pmivec.corpus.config import CorpusConfig

__all__ = [
    "TokenStream",
    "Vocabulary",
    "tokenize",
    "read_corpus",
    "build_vocab",
    "write_vocab",
    "read_vocab",
    "DEFAULT_SUBSAMPLE_T",
    "DEFAULT_WINDOW",
    "discard_probabilities",
    "subsample",
    "pair_stream",
    "pair_total",
    "CorpusConfig",
]
