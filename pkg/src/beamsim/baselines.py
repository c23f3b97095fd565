"""Reference beamformers used for comparison curves.

Includes the batch closed-form constant-modulus solution, the clairvoyant
minimum-variance oracle, an auxiliary-vector recursion on the plain sample
covariance, and projected stochastic-gradient / exponentially-weighted
recursive solvers under both the minimum-variance (CMV) and constant-modulus
(CCM) criteria.  These follow standard textbook forms; all of them keep the
unit response w^H a0 = 1 toward the presumed steering vector after every
update.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularStatisticsError

__all__ = [
    "BatchMoments",
    "AdaptiveFilterConfig",
    "ccm_closed_form",
    "mvdr_oracle",
    "cmv_avf_solve",
    "SgBeamformer",
    "RlsBeamformer",
    "CmvAvfBeamformer",
    "FixedWeightBeamformer",
    "make_baseline",
]

_CRITERIA = ("cmv", "ccm")


@dataclass
class BatchMoments:
    """Batch estimates of R = E[|y|^2 x x^H] and p = E[y* x]."""

    r_mat: np.ndarray
    p_vec: np.ndarray


@dataclass(frozen=True)
class AdaptiveFilterConfig:
    """Criterion/algorithm selection plus tuning for the baselines."""

    criterion: str = "ccm"
    algorithm: str = "sg"
    step_size: float = 0.6
    forgetting_factor: float = 0.998
    rank: int = 8
    diagonal_load: float = 1e-2
    modulus_target: float = 1.0

    def __post_init__(self):
        if self.criterion not in _CRITERIA:
            raise ValueError(f"criterion must be one of {_CRITERIA}, got {self.criterion!r}")
        if self.algorithm not in ("sg", "rls", "avf"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.algorithm == "sg" and self.step_size < 0:
            raise ValueError("step_size must be >= 0 for SG")
        if self.algorithm == "rls" and not 0 < self.forgetting_factor <= 1:
            raise ValueError("forgetting_factor must be in (0, 1] for RLS")
        if self.algorithm == "avf" and self.rank < 1:
            raise ValueError("rank must be >= 1 for AVF")
        if self.diagonal_load < 0:
            raise ValueError("diagonal_load must be >= 0")


def _solve(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularStatisticsError(
            "covariance matrix is singular; apply diagonal loading or gather more snapshots"
        ) from exc


def ccm_closed_form(moments: BatchMoments, a0: np.ndarray) -> np.ndarray:
    """Constrained constant-modulus weights from batch moments.

    Solves min w^H R w - 2 Re(w^H p) subject to w^H a0 = 1:

        w = R^{-1} p + [(1 - a0^H R^{-1} p) / (a0^H R^{-1} a0)] R^{-1} a0

    The correction coefficient is the conjugate of (p^H R^{-1} a0 - 1) over
    the same denominator; this is the form that satisfies the constraint
    exactly for complex-valued moments.
    """
    a0 = np.asarray(a0, dtype=complex)
    rinv_p = _solve(moments.r_mat, moments.p_vec)
    rinv_a = _solve(moments.r_mat, a0)
    denom = complex(np.vdot(a0, rinv_a))
    w = rinv_p + ((1.0 - np.vdot(a0, rinv_p)) / denom) * rinv_a
    if abs(np.vdot(w, a0) - 1.0) > 1e-6:
        raise SingularStatisticsError(
            "constraint violated after solve; covariance is too ill-conditioned, "
            "apply diagonal loading"
        )
    return w


def mvdr_oracle(true_covariance: np.ndarray, a0: np.ndarray) -> np.ndarray:
    """Clairvoyant minimum-variance weights R^{-1} a0 / (a0^H R^{-1} a0)."""
    a0 = np.asarray(a0, dtype=complex)
    rinv_a = _solve(np.asarray(true_covariance, dtype=complex), a0)
    return rinv_a / complex(np.vdot(a0, rinv_a))


def cmv_avf_solve(
    r_hat: np.ndarray, a0: np.ndarray, rank: int, exit_tolerance: float = 1e-8
) -> np.ndarray:
    """Auxiliary-vector recursion for the minimum-variance criterion.

    Starting from w0 = a0 / ||a0||^2, repeatedly subtracts the exact
    line-minimizing multiple of the projection of R w onto the orthogonal
    complement of a0.  No matrix inversion is used.
    """
    a0 = np.asarray(a0, dtype=complex)
    a_norm_sq = np.vdot(a0, a0).real
    w = a0 / a_norm_sq
    r_scale = float(np.linalg.norm(r_hat))
    for _ in range(rank):
        rw = r_hat @ w
        g = rw - a0 * (np.vdot(a0, rw) / a_norm_sq)
        g_norm = float(np.linalg.norm(g))
        if g_norm <= exit_tolerance * max(float(np.linalg.norm(rw)), 1e-30):
            break
        rg = r_hat @ g
        den = complex(np.vdot(g, rg))
        if abs(den) < 1e-14 * g_norm**2 * r_scale:
            raise SingularStatisticsError(
                "g^H R g is numerically zero in the auxiliary-vector recursion"
            )
        mu = complex(np.vdot(g, rw)) / den
        w = w - mu * g
    return w


class SgBeamformer:
    """Projected stochastic gradient under the CMV or CCM criterion.

    One normalized-gradient step per snapshot followed by re-projection onto
    the constraint set, so w^H a0 = 1 holds exactly after every update.  The
    CCM step is NLMS on the transformed regressor y* x with target nu; the
    CMV step is NLMS toward zero output.  Normalization keeps the recursion
    stable for any step size below 2 (a fixed-step constant-modulus gradient
    diverges once an output excursion exceeds 1/(step ||x||^2)).
    """

    _EPS = 1e-12

    def __init__(self, steer: np.ndarray, config: AdaptiveFilterConfig):
        self.steer = np.asarray(steer, dtype=complex)
        self.config = config
        self._a_norm_sq = np.vdot(self.steer, self.steer).real
        self.w = self.steer / self._a_norm_sq

    def update(self, x: np.ndarray) -> np.ndarray:
        y = np.vdot(self.w, x)
        x_norm_sq = np.vdot(x, x).real
        if self.config.criterion == "ccm":
            # regressor y* x, real error |y|^2 - nu
            y_sq = (y * y.conjugate()).real
            err = y_sq - self.config.modulus_target
            grad = (err / (y_sq * x_norm_sq + self._EPS)) * y.conjugate() * x
        else:
            grad = (1.0 / (x_norm_sq + self._EPS)) * y.conjugate() * x
        w = self.w - self.config.step_size * grad
        self.w = w + self.steer * ((1.0 - np.vdot(self.steer, w)) / self._a_norm_sq)
        return self.w


class RlsBeamformer:
    """Exponentially weighted moments plus the criterion's closed form.

    Maintains forgetting-factor averages of the moment matrices and applies
    the constant-modulus closed form (CCM) or the minimum-variance solution
    (CMV) each snapshot.  Diagonal loading of 'diagonal_load * tr(R)/m' is
    added until 2m snapshots have been absorbed.
    """

    def __init__(self, steer: np.ndarray, config: AdaptiveFilterConfig):
        self.steer = np.asarray(steer, dtype=complex)
        self.config = config
        m = self.steer.size
        self.w = self.steer / np.vdot(self.steer, self.steer).real
        self._sum_r = np.zeros((m, m), dtype=complex)
        self._sum_p = np.zeros(m, dtype=complex)
        self._weight_total = 0.0
        self.count = 0

    def update(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        lam = self.config.forgetting_factor
        y = np.vdot(self.w, x)
        if self.config.criterion == "ccm":
            term_r = (y * y.conjugate()).real * np.outer(x, x.conj())
            term_p = y.conjugate() * x
        else:
            term_r = np.outer(x, x.conj())
            term_p = None
        self._sum_r = lam * self._sum_r + term_r
        if term_p is not None:
            self._sum_p = lam * self._sum_p + term_p
        self._weight_total = lam * self._weight_total + 1.0
        self.count += 1

        m = x.size
        r_hat = self._sum_r / self._weight_total
        if self.count < 2 * m:
            r_hat = r_hat + (self.config.diagonal_load * np.trace(r_hat).real / m) * np.eye(m)
        if self.config.criterion == "ccm":
            p_hat = self._sum_p / self._weight_total
            self.w = ccm_closed_form(BatchMoments(r_hat, p_hat), self.steer)
        else:
            rinv_a = _solve(r_hat, self.steer)
            self.w = rinv_a / complex(np.vdot(self.steer, rinv_a))
        return self.w


class CmvAvfBeamformer:
    """Auxiliary-vector recursion on the running sample covariance."""

    def __init__(self, steer: np.ndarray, config: AdaptiveFilterConfig):
        self.steer = np.asarray(steer, dtype=complex)
        self.config = config
        m = self.steer.size
        self.w = self.steer / np.vdot(self.steer, self.steer).real
        self._sum_r = np.zeros((m, m), dtype=complex)
        self.count = 0

    def update(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        self._sum_r += np.outer(x, x.conj())
        self.count += 1
        self.w = cmv_avf_solve(self._sum_r / self.count, self.steer, self.config.rank)
        return self.w


class FixedWeightBeamformer:
    """Constant weight vector (used for the clairvoyant oracle column)."""

    def __init__(self, w: np.ndarray):
        self.w = np.asarray(w, dtype=complex)

    def update(self, x: np.ndarray) -> np.ndarray:
        return self.w


def make_baseline(steer: np.ndarray, config: AdaptiveFilterConfig):
    """Instantiate the baseline matching the config's algorithm field."""
    if config.algorithm == "sg":
        return SgBeamformer(steer, config)
    if config.algorithm == "rls":
        return RlsBeamformer(steer, config)
    if config.algorithm == "avf":
        if config.criterion != "cmv":
            raise ValueError("the auxiliary-vector baseline supports only the CMV criterion")
        return CmvAvfBeamformer(steer, config)
    raise ValueError(f"unknown algorithm {config.algorithm!r}")
