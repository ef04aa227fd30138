from pmivec.trainer.config import TrainConfig
from pmivec.trainer.embeddings import EmbeddingPair, init_embeddings
from pmivec.trainer.losses import (
    loss_and_grad_D,
    loss_and_grad_L,
    loss_and_grad_P,
    loss_and_grad_shifted,
    batch_loss_and_grad_D,
    batch_loss_and_grad_L,
    batch_loss_and_grad_P,
)
from pmivec.trainer.negatives import draw_negatives
from pmivec.trainer.optim import Optimizer, Adagrad, Sgd, make_optimizer
from pmivec.trainer.train import EpochLoss, TrainResult, train, clamp_length_targets
from pmivec.trainer.io import (
    save_word2vec,
    load_word2vec,
    write_loss_trace,
    read_loss_trace,
)

__all__ = [
    "TrainConfig",
    "EmbeddingPair",
    "init_embeddings",
    "loss_and_grad_D",
    "loss_and_grad_L",
    "loss_and_grad_P",
    "loss_and_grad_shifted",
    "batch_loss_and_grad_D",
    "batch_loss_and_grad_L",
    "batch_loss_and_grad_P",
    "draw_negatives",
    "Optimizer",
    "Adagrad",
    "Sgd",
    "make_optimizer",
    "EpochLoss",
    "TrainResult",
    "train",
    "clamp_length_targets",
    "save_word2vec",
    "load_word2vec",
    "write_loss_trace",
    "read_loss_trace",
]
