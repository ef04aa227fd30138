"""Per-pair squared-error losses and their analytic gradients.

Every function takes 1-D vectors and returns the loss followed by the
gradient for each vector argument, in argument order.
"""

from __future__ import annotations

import math

import numpy as np

from pmivec.utils.types import FloatArray


def loss_and_grad_D(v: FloatArray, c: FloatArray, pmi_ij: float) -> tuple[float, FloatArray, FloatArray]:
    """(v . c - PMI)^2 with gradients 2r c and 2r v."""
    r = float(v @ c) - pmi_ij
    return r * r, 2.0 * r * c, 2.0 * r * v


def _length_penalty(v: FloatArray, target: float, alpha: float) -> tuple[float, FloatArray]:
    """alpha (||v|| - target)^2; the gradient at ||v|| = 0 is taken as zero."""
    norm = float(np.linalg.norm(v))
    diff = norm - target
    if norm == 0.0:
        return alpha * diff * diff, np.zeros_like(v)
    return alpha * diff * diff, (2.0 * alpha * diff / norm) * v


def loss_and_grad_L(
    v: FloatArray,
    c: FloatArray,
    pmi_ij: float,
    self_pmi_i: float,
    self_pmi_j: float,
    alpha1: float,
    alpha2: float,
) -> tuple[float, FloatArray, FloatArray]:
    """Dot residual plus length penalties pulling ||v|| to sqrt(PMI_ii) and ||c|| to sqrt(PMI_jj).

    Self-PMI arguments must already be clamped positive.
    """
    loss, gv, gc = loss_and_grad_D(v, c, pmi_ij)
    loss_i, gi = _length_penalty(v, math.sqrt(self_pmi_i), alpha1)
    loss_j, gj = _length_penalty(c, math.sqrt(self_pmi_j), alpha2)
    return loss + loss_i + loss_j, gv + gi, gc + gj


def loss_and_grad_P(
    v: FloatArray,
    v_ctx: FloatArray,
    c: FloatArray,
    pmi_ij: float,
    self_pmi_i: float,
    alpha1: float,
    alpha2: float,
) -> tuple[float, FloatArray, FloatArray, FloatArray]:
    """Dot residual plus alpha1 (v . v_ctx - PMI_ii)^2 plus alpha2 (||v|| - ||v_ctx||)^2.

    v_ctx is the context vector of the target word itself. Returns gradients
    for v, v_ctx and c.
    """
    loss, gv, gc = loss_and_grad_D(v, c, pmi_ij)

    s = float(v @ v_ctx) - self_pmi_i
    loss += alpha1 * s * s
    gv = gv + (2.0 * alpha1 * s) * v_ctx
    g_ctx = (2.0 * alpha1 * s) * v

    norm_v = float(np.linalg.norm(v))
    norm_ctx = float(np.linalg.norm(v_ctx))
    diff = norm_v - norm_ctx
    loss += alpha2 * diff * diff
    if norm_v > 0.0:
        gv = gv + (2.0 * alpha2 * diff / norm_v) * v
    if norm_ctx > 0.0:
        g_ctx = g_ctx - (2.0 * alpha2 * diff / norm_ctx) * v_ctx
    return loss, gv, g_ctx, gc


def loss_and_grad_shifted(
    v: FloatArray, c: FloatArray, pmi_ij: float, shift: float
) -> tuple[float, FloatArray, FloatArray]:
    """loss_and_grad_D against the shifted target PMI - shift."""
    return loss_and_grad_D(v, c, pmi_ij - shift)


def _row_dot(a: FloatArray, b: FloatArray) -> FloatArray:
    return np.einsum("ij,ij->i", a, b)


def _batch_length_penalty(V: FloatArray, targets: FloatArray, alpha: float) -> tuple[FloatArray, FloatArray]:
    """Row-wise _length_penalty; zero-norm rows get a zero gradient."""
    norms = np.linalg.norm(V, axis=1)
    diff = norms - targets
    scale = np.divide(2.0 * alpha * diff, norms, out=np.zeros_like(norms), where=norms > 0)
    return alpha * diff * diff, scale[:, None] * V


def batch_loss_and_grad_D(
    V: FloatArray, C: FloatArray, targets: FloatArray
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """loss_and_grad_D for every row of V and C at once."""
    r = _row_dot(V, C) - targets
    return r * r, 2.0 * r[:, None] * C, 2.0 * r[:, None] * V


def batch_loss_and_grad_L(
    V: FloatArray,
    C: FloatArray,
    targets: FloatArray,
    self_pmi_i: FloatArray,
    self_pmi_j: FloatArray,
    alpha1: float,
    alpha2: float,
) -> tuple[FloatArray, FloatArray, FloatArray]:
    loss, gv, gc = batch_loss_and_grad_D(V, C, targets)
    loss_i, gi = _batch_length_penalty(V, np.sqrt(self_pmi_i), alpha1)
    loss_j, gj = _batch_length_penalty(C, np.sqrt(self_pmi_j), alpha2)
    return loss + loss_i + loss_j, gv + gi, gc + gj


def batch_loss_and_grad_P(
    V: FloatArray,
    V_ctx: FloatArray,
    C: FloatArray,
    targets: FloatArray,
    self_pmi_i: FloatArray,
    alpha1: float,
    alpha2: float,
) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray]:
    """Row-wise loss_and_grad_P; gradients for V, V_ctx and C."""
    loss, gv, gc = batch_loss_and_grad_D(V, C, targets)

    s = _row_dot(V, V_ctx) - self_pmi_i
    loss = loss + alpha1 * s * s
    gv = gv + (2.0 * alpha1 * s)[:, None] * V_ctx
    g_ctx = (2.0 * alpha1 * s)[:, None] * V

    norm_v = np.linalg.norm(V, axis=1)
    norm_ctx = np.linalg.norm(V_ctx, axis=1)
    diff = norm_v - norm_ctx
    loss = loss + alpha2 * diff * diff
    scale_v = np.divide(2.0 * alpha2 * diff, norm_v, out=np.zeros_like(norm_v), where=norm_v > 0)
    scale_ctx = np.divide(2.0 * alpha2 * diff, norm_ctx, out=np.zeros_like(norm_ctx), where=norm_ctx > 0)
    gv = gv + scale_v[:, None] * V
    g_ctx = g_ctx - scale_ctx[:, None] * V_ctx
    return loss, gv, g_ctx, gc
