from __future__ import annotations

import numpy as np

from pmivec.utils.types import FloatArray, IntArray


class Optimizer:
    """Row-wise optimizer over named parameter matrices, updated in place."""

    def __init__(self, learning_rate: float, params: dict[str, FloatArray]) -> None:
        if learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        self.learning_rate = learning_rate
        self.params = params

    def step(self, name: str, row: int, grad: FloatArray) -> None:
        raise NotImplementedError

    def step_rows(self, name: str, rows: IntArray, grads: FloatArray) -> None:
        """One step for each of several distinct rows; grads[k] belongs to rows[k]."""
        raise NotImplementedError

    def advance(self, steps: int = 1) -> None:
        """Called after every steps pair updates; schedules hook in here."""


class Adagrad(Optimizer):
    """Adagrad with a per-parameter squared-gradient accumulator."""

    def __init__(self, learning_rate: float, params: dict[str, FloatArray], eps: float = 1e-8) -> None:
        super().__init__(learning_rate, params)
        self.eps = eps
        self._sums = {name: np.zeros_like(p) for name, p in params.items()}

    def step(self, name: str, row: int, grad: FloatArray) -> None:
        acc = self._sums[name][row]
        acc += grad * grad
        self.params[name][row] -= self.learning_rate * grad / (np.sqrt(acc) + self.eps)

    def step_rows(self, name: str, rows: IntArray, grads: FloatArray) -> None:
        acc = self._sums[name][rows] + grads * grads
        self._sums[name][rows] = acc
        self.params[name][rows] -= self.learning_rate * grads / (np.sqrt(acc) + self.eps)


class Sgd(Optimizer):
    """Plain SGD with the learning rate decayed linearly to 1e-4 of its start."""

    def __init__(self, learning_rate: float, params: dict[str, FloatArray], total_steps: int) -> None:
        super().__init__(learning_rate, params)
        self.total_steps = max(total_steps, 1)
        self.steps_done = 0
        self.current_lr = learning_rate

    def step(self, name: str, row: int, grad: FloatArray) -> None:
        self.params[name][row] -= self.current_lr * grad

    def step_rows(self, name: str, rows: IntArray, grads: FloatArray) -> None:
        self.params[name][rows] -= self.current_lr * grads

    def advance(self, steps: int = 1) -> None:
        self.steps_done += steps
        progress = self.steps_done / self.total_steps
        self.current_lr = self.learning_rate * max(1.0 - progress, 1e-4)


def make_optimizer(
    kind: str, learning_rate: float, params: dict[str, FloatArray], total_steps: int
) -> Optimizer:
    if kind == "adagrad":
        return Adagrad(learning_rate, params)
    if kind == "sgd":
        return Sgd(learning_rate, params, total_steps)
    raise ValueError(f"Unknown optimizer: {kind}")
