"""Adaptive beamforming simulator for uniform linear arrays.

Implements a constant-modulus auxiliary-vector beamformer alongside
stochastic-gradient, recursive, and minimum-variance references, plus a
deterministic Monte Carlo harness that writes SINR-versus-snapshot and
SINR-versus-iteration tables as CSV.
"""

__version__ = "0.1.0"

from .arrays import (
    ArrayGeometry,
    SourceSet,
    Snapshot,
    beamformer_output,
    generate_snapshot,
    generate_snapshots,
    steering_matrix,
    steering_vector,
)
from .baselines import (
    AdaptiveFilterConfig,
    BatchMoments,
    CmvAvfBeamformer,
    RlsBeamformer,
    SgBeamformer,
    ccm_closed_form,
    cmv_avf_solve,
    mvdr_oracle,
)
from .ccm_avf import (
    AvfConfig,
    AvfState,
    CcmAvfBeamformer,
    auxiliary_vector,
    avf_weight_iteration,
    initialize_weights,
    scalar_factor,
)
from .errors import BeamsimError, SingularStatisticsError
from .estimators import MomentEstimates, TransformedMomentTracker, TransformedSnapshot
from .harness import ResultTable, run_k_sweep, run_scenario
from .metrics import SinrTrace, aggregate_trials, beampattern, output_sinr
from .scenarios import BeamformerSpec, Scenario, builtin_scenario, load_scenario_file

__all__ = [
    "__version__",
    "ArrayGeometry",
    "SourceSet",
    "Snapshot",
    "steering_vector",
    "steering_matrix",
    "generate_snapshot",
    "generate_snapshots",
    "beamformer_output",
    "TransformedSnapshot",
    "MomentEstimates",
    "TransformedMomentTracker",
    "AvfConfig",
    "AvfState",
    "initialize_weights",
    "auxiliary_vector",
    "scalar_factor",
    "avf_weight_iteration",
    "CcmAvfBeamformer",
    "BatchMoments",
    "AdaptiveFilterConfig",
    "ccm_closed_form",
    "cmv_avf_solve",
    "mvdr_oracle",
    "SgBeamformer",
    "RlsBeamformer",
    "CmvAvfBeamformer",
    "SinrTrace",
    "output_sinr",
    "aggregate_trials",
    "beampattern",
    "Scenario",
    "BeamformerSpec",
    "builtin_scenario",
    "load_scenario_file",
    "ResultTable",
    "run_scenario",
    "run_k_sweep",
    "BeamsimError",
    "SingularStatisticsError",
]
