"""Constant-modulus auxiliary-vector weight iteration.

Per snapshot the weight vector is rebuilt from the constrained reference
w0 = a0 / ||a0||^2 by subtracting scaled auxiliary vectors, each orthogonal
to the steering vector a0 of the desired direction:

    p_y  = nu p_tilde - r_tilde w_{k-1}
    g_k  = conj(mu_{k-1}) * (p_y - a0 (a0^H p_y) / ||a0||^2)
    mu_k = (g_k^H r_tilde w_{k-1} - nu g_k^H p_tilde) / (g_k^H r_tilde g_k)
    w_k  = w_{k-1} - mu_k g_k

p_y is the sample average of (nu - y_tilde)* x_tilde with y_tilde taken at
the current iterate (the negated gradient of the empirical modulus-deviation
quadratic), and mu_k is that quadratic's exact minimizer along g_k, so each
inner step cannot increase the cost and consecutive auxiliary vectors come
out orthogonal without imposing it.  After each w_k the latest snapshot's
transform is refreshed with w_k, injecting the improved output estimate into
the moments.  The loop exits early when g_k is numerically zero.  Scaling
g_k by any nonzero constant leaves mu_k * g_k unchanged, which is why no
normalization of the auxiliary vector is needed; a unit-norm variant is kept
behind `normalize_auxiliary` to demonstrate the equivalence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularStatisticsError
from .estimators import TransformedMomentTracker

__all__ = [
    "AvfConfig",
    "AvfState",
    "initialize_weights",
    "auxiliary_vector",
    "scalar_factor",
    "avf_weight_iteration",
    "CcmAvfBeamformer",
]

logger = logging.getLogger(__name__)

_EXIT_FLOOR = 1e-30
_SINGULAR_REL = 1e-14


@dataclass(frozen=True)
class AvfConfig:
    """Tuning for the per-snapshot weight iteration."""

    mu0: float = 0.01
    max_iterations: int = 3
    exit_tolerance: float = 1e-8
    modulus_target: float = 1.0
    normalize_auxiliary: bool = False

    def __post_init__(self):
        if not self.mu0 > 0:
            raise ValueError("mu0 must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.exit_tolerance > 0:
            raise ValueError("exit_tolerance must be > 0")
        if not self.modulus_target > 0:
            raise ValueError("modulus_target must be > 0")


@dataclass
class AvfState:
    """Result of one per-snapshot iteration."""

    w_current: np.ndarray
    g_last: np.ndarray
    mu_last: complex
    iterations_run: int
    exited_early: bool
    gk_cosines: list = field(default_factory=list)


def initialize_weights(a0: np.ndarray) -> np.ndarray:
    """Constrained reference vector a0 / ||a0||^2, so that w^H a0 = 1."""
    a0 = np.asarray(a0, dtype=complex)
    norm_sq = np.vdot(a0, a0).real
    if norm_sq == 0.0:
        raise ValueError("steering vector must be nonzero")
    return a0 / norm_sq


def auxiliary_vector(mu_prev: complex, p_tilde_y: np.ndarray, a0: np.ndarray) -> np.ndarray:
    """Scaled component of p_tilde_y orthogonal to the steering vector.

    Returns conj(mu_prev) * (I - a0 a0^H / ||a0||^2) p_tilde_y.  A zero
    result is a valid exit signal, not an error.
    """
    a0 = np.asarray(a0, dtype=complex)
    p = np.asarray(p_tilde_y, dtype=complex)
    norm_sq = np.vdot(a0, a0).real
    if norm_sq == 0.0:
        raise ValueError("steering vector must be nonzero")
    return np.conj(mu_prev) * (p - a0 * (np.vdot(a0, p) / norm_sq))


def scalar_factor(
    g: np.ndarray,
    r_tilde: np.ndarray,
    p_tilde: np.ndarray,
    w_prev: np.ndarray,
    modulus_target: float = 1.0,
) -> complex:
    """Exact line minimizer of the modulus-deviation quadratic along g.

    mu = (g^H r_tilde w_prev - nu g^H p_tilde) / (g^H r_tilde g).  A zero
    value is allowed (the step degenerates to a no-op) but a vanishing
    denominator relative to ||g||^2 ||r_tilde||_F signals degenerate
    statistics and raises.
    """
    g = np.asarray(g, dtype=complex)
    rg = r_tilde @ g
    den = complex(np.vdot(g, rg))
    scale = float(np.vdot(g, g).real) * float(np.linalg.norm(r_tilde))
    if abs(den) < _SINGULAR_REL * scale or scale == 0.0:
        raise SingularStatisticsError(
            "g^H r_tilde g is numerically zero; statistics do not excite the search direction"
        )
    num = complex(np.vdot(g, r_tilde @ w_prev)) - modulus_target * complex(np.vdot(g, p_tilde))
    mu = num / den
    if mu == 0:
        logger.debug("scalar factor is exactly zero; step is a no-op")
    return mu


def _iterate(config: AvfConfig, a0: np.ndarray, tracker: TransformedMomentTracker) -> AvfState:
    a0 = np.asarray(a0, dtype=complex)
    a_norm_sq = np.vdot(a0, a0).real
    w = a0 / a_norm_sq
    mu_prev = complex(config.mu0)
    nu = config.modulus_target
    g_last = np.zeros_like(w)
    g_prev_dir = None
    cosines: list[float] = []
    exited = False
    iterations = 0
    r_scale = tracker.r_tilde_trace()

    for _ in range(config.max_iterations):
        rw = tracker.r_tilde_matvec(w)
        # modulus-deviation gradient of the sample quadratic at the current
        # iterate: p_tilde_y evaluated against w (all terms), not the stored
        # per-term outputs
        p_t = tracker.p_tilde
        pty = nu * p_t - rw
        proj = pty - a0 * (np.vdot(a0, pty) / a_norm_sq)
        g = np.conj(mu_prev) * proj
        g_last = g
        pty_norm = float(np.linalg.norm(pty))
        proj_norm = float(np.linalg.norm(proj))
        # exit on a numerically zero auxiliary vector.  The test is applied
        # to the projection before the mu scaling so that the decision is
        # invariant to the auxiliary vector's normalization convention;
        # mu_prev == 0 makes g exactly zero, and a gradient that is pure
        # rounding residue relative to its ingredients also counts as zero.
        grad_scale = nu * float(np.linalg.norm(p_t)) + float(np.linalg.norm(rw))
        if (
            mu_prev == 0
            or proj_norm <= config.exit_tolerance * max(pty_norm, _EXIT_FLOOR)
            or pty_norm <= config.exit_tolerance * grad_scale
        ):
            exited = True
            break
        g_norm = float(np.linalg.norm(g))
        g_use = g / g_norm if config.normalize_auxiliary else g
        if g_prev_dir is not None:
            cosines.append(abs(np.vdot(g_use, g_prev_dir)) / float(np.linalg.norm(g_use)))
        g_prev_dir = g_use / float(np.linalg.norm(g_use))

        rg = tracker.r_tilde_matvec(g_use)
        den = complex(np.vdot(g_use, rg))
        if abs(den) < _SINGULAR_REL * float(np.vdot(g_use, g_use).real) * r_scale:
            raise SingularStatisticsError(
                "g^H r_tilde g is numerically zero; statistics do not excite the search direction"
            )
        num = complex(np.vdot(g_use, rw)) - nu * complex(np.vdot(g_use, p_t))
        mu = num / den
        if mu == 0:
            logger.debug("scalar factor is exactly zero at snapshot %d", tracker.count)
        w = w - mu * g_use
        iterations += 1
        mu_prev = mu
        tracker.refresh_current(w)

    return AvfState(
        w_current=w,
        g_last=g_last,
        mu_last=mu_prev,
        iterations_run=iterations,
        exited_early=exited,
        gk_cosines=cosines,
    )


def avf_weight_iteration(
    config: AvfConfig, a0: np.ndarray, tracker: TransformedMomentTracker
) -> AvfState:
    """Run the per-snapshot iteration against the tracker's current moments.

    The tracker's latest term is refreshed in place with each intermediate
    weight vector, so the tracker reflects the final weights on return.
    """
    if tracker.count < 1:
        raise ValueError("at least one accumulated snapshot is required")
    return _iterate(config, a0, tracker)


class CcmAvfBeamformer:
    """Streaming beamformer wrapping the per-snapshot weight iteration.

    The weight vector returned for snapshot i seeds the transform of
    snapshot i+1; the first snapshot is transformed with the constrained
    reference vector.
    """

    def __init__(self, steer: np.ndarray, config: AvfConfig | None = None):
        self.steer = np.asarray(steer, dtype=complex)
        self.config = config or AvfConfig()
        self.w = initialize_weights(self.steer)
        self.tracker = TransformedMomentTracker(self.steer.size, self.config.modulus_target)
        self.last_state: AvfState | None = None
        self.cosine_sum = 0.0
        self.cosine_count = 0
        self.early_exits = 0

    def update(self, x: np.ndarray) -> np.ndarray:
        self.tracker.accumulate(x, self.w)
        state = _iterate(self.config, self.steer, self.tracker)
        self.w = state.w_current
        self.last_state = state
        self.cosine_sum += sum(state.gk_cosines)
        self.cosine_count += len(state.gk_cosines)
        self.early_exits += int(state.exited_early)
        return self.w
