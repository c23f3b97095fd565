"""Sample-average moments of transformed snapshots.

Each received vector x(l) is mapped through the current weight vector w to
x_tilde(l) = y*(l) x(l) with y(l) = w^H x(l), and y_tilde(l) = w^H x_tilde(l)
(= |y(l)|^2 when the same w forms both).  The tracker keeps running averages

    r_tilde  = (1/i) sum_l x_tilde(l) x_tilde(l)^H
    p_tilde  = (1/i) sum_l x_tilde(l)
    p_tilde_y = (1/i) sum_l (nu - y_tilde(l))* x_tilde(l)

and supports replacing the most recent term with a recomputed one after the
weight vector has been updated mid-snapshot.  Historical terms keep the
weight that was active when they were last formed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["TransformedSnapshot", "MomentEstimates", "TransformedMomentTracker", "transform_snapshot"]


@dataclass(frozen=True)
class TransformedSnapshot:
    """One transformed observation: x_tilde = y* x and y_tilde = w^H x_tilde."""

    x_tilde: np.ndarray
    y_tilde: float


@dataclass(frozen=True)
class MomentEstimates:
    """Point-in-time view of the running averages."""

    r_tilde: np.ndarray
    p_tilde: np.ndarray
    p_tilde_y: np.ndarray
    count: int


def transform_snapshot(x: np.ndarray, w: np.ndarray) -> TransformedSnapshot:
    """Map a raw snapshot through w.  y_tilde = w^H (y* x) = |y|^2, real."""
    w = np.asarray(w, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if not np.any(w):
        raise ValueError("weight vector must be nonzero to form the transform")
    y = np.vdot(w, x)
    return TransformedSnapshot(x_tilde=np.conj(y) * x, y_tilde=(y * np.conj(y)).real)


class TransformedMomentTracker:
    """Streaming estimator with current-term refresh.

    The sums over frozen terms (all snapshots but the latest) are kept
    separate from the latest term's contribution, so a refresh replaces the
    latest term exactly instead of accumulating subtract-and-add rounding.
    Raw snapshots and the per-term weights are retained so the whole state
    can be recomputed from scratch (used by the test oracles).
    """

    def __init__(self, size: int, modulus_target: float = 1.0):
        if size < 1:
            raise ValueError("size must be >= 1")
        if not modulus_target > 0:
            raise ValueError("modulus_target must be > 0")
        self.size = size
        self.modulus_target = float(modulus_target)
        self._hist_r = np.zeros((size, size), dtype=complex)
        self._hist_p = np.zeros(size, dtype=complex)
        self._hist_py = np.zeros(size, dtype=complex)
        self._hist_tr = 0.0
        self._cur_x = None
        self._cur_xt = None
        self._cur_yt = 0.0
        self.count = 0
        self.snapshots: list[np.ndarray] = []
        self.weights: list[np.ndarray] = []

    # -- streaming updates ------------------------------------------------

    def accumulate(self, x: np.ndarray, w: np.ndarray) -> MomentEstimates:
        """Absorb one raw snapshot, transformed through w."""
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.size,):
            raise ValueError(f"expected snapshot of shape ({self.size},), got {x.shape}")
        self._freeze_current()
        ts = transform_snapshot(x, w)
        self._cur_x = x
        self._cur_xt = ts.x_tilde
        self._cur_yt = ts.y_tilde
        self.count += 1
        self.snapshots.append(x)
        self.weights.append(np.asarray(w, dtype=complex).copy())
        return self.estimates()

    def refresh_current(self, w: np.ndarray) -> MomentEstimates:
        """Recompute the latest term with a new weight vector.

        Terms for earlier snapshots are left untouched.  Idempotent for a
        fixed w.
        """
        if self.count < 1:
            raise ValueError("no snapshot to refresh")
        ts = transform_snapshot(self._cur_x, w)
        self._cur_xt = ts.x_tilde
        self._cur_yt = ts.y_tilde
        self.weights[-1] = np.asarray(w, dtype=complex).copy()
        return self.estimates()

    def _freeze_current(self):
        if self._cur_xt is None:
            return
        xt = self._cur_xt
        self._hist_r += np.outer(xt, xt.conj())
        self._hist_p += xt
        self._hist_py += (self.modulus_target - self._cur_yt) * xt
        self._hist_tr += float(np.vdot(xt, xt).real)
        self._cur_x = None
        self._cur_xt = None

    # -- views -------------------------------------------------------------

    @property
    def r_tilde(self) -> np.ndarray:
        if self.count == 0:
            return np.zeros((self.size, self.size), dtype=complex)
        r = self._hist_r.copy()
        if self._cur_xt is not None:
            r += np.outer(self._cur_xt, self._cur_xt.conj())
        return r / self.count

    @property
    def p_tilde(self) -> np.ndarray:
        if self.count == 0:
            return np.zeros(self.size, dtype=complex)
        p = self._hist_p.copy()
        if self._cur_xt is not None:
            p += self._cur_xt
        return p / self.count

    @property
    def p_tilde_y(self) -> np.ndarray:
        if self.count == 0:
            return np.zeros(self.size, dtype=complex)
        p = self._hist_py.copy()
        if self._cur_xt is not None:
            p += (self.modulus_target - self._cur_yt) * self._cur_xt
        return p / self.count

    def estimates(self) -> MomentEstimates:
        return MomentEstimates(self.r_tilde, self.p_tilde, self.p_tilde_y, self.count)

    # -- fast paths for the weight iteration --------------------------------

    def r_tilde_matvec(self, v: np.ndarray) -> np.ndarray:
        """r_tilde @ v without materializing the matrix (rank-1 current term)."""
        out = self._hist_r @ v
        if self._cur_xt is not None:
            out = out + self._cur_xt * np.vdot(self._cur_xt, v)
        return out / self.count

    def r_tilde_trace(self) -> float:
        """Trace of r_tilde; cheap scale proxy for degeneracy guards."""
        if self.count == 0:
            return 0.0
        tr = self._hist_tr
        if self._cur_xt is not None:
            tr += float(np.vdot(self._cur_xt, self._cur_xt).real)
        return tr / self.count

    def p_tilde_y_at(self, w: np.ndarray) -> np.ndarray:
        """p_tilde_y with every term's y_tilde evaluated at the given weight.

        (1/i) sum_l (nu - w^H x_tilde(l))* x_tilde(l) collapses to
        nu p_tilde - r_tilde w, so re-evaluating the whole history against a
        new weight costs one matrix-vector product.  The stored p_tilde_y
        keeps the per-term weights instead.
        """
        return self.modulus_target * self.p_tilde - self.r_tilde_matvec(w)
