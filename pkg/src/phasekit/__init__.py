"""Relative phase shifts of pure and mixed states under quantum operations."""

from .builtin import (
    ConditionalUnitarySpec,
    DepolarizingParams,
    conditional_kraus,
    conditional_phase,
    conditional_unitary,
    depolarizing,
    randomization_phase,
    randomizing,
)
from .channel import (
    Dilation,
    KrausSet,
    apply_dilation,
    apply_kraus,
    channels_equal,
    choi,
    choi_distance,
    dilate,
    extract_kraus,
    make_kraus_set,
    unitary_dilation,
)
from .compose import SequenceReport, bargmann3, compose_dilations, compose_kraus, sequence_report
from .errors import (
    BlochOutOfBall,
    CompletenessViolation,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidState,
    NormInvalid,
    NotUnitary,
    ParamOutOfRange,
    PhaseKitError,
    RedundantKrausWarning,
    WeightSumInvalid,
)
from .matcore import (
    AncillaState,
    BlochVector,
    DensityMatrix,
    PureState,
    basis_state,
    bloch_to_density,
    density_to_bloch,
    partial_trace_ancilla,
    tensor,
)
from .phase import (
    PhaseResult,
    ancilla_phase,
    circular_distance,
    cp_phase,
    cp_phase_mu,
    effective_operator,
    fringe,
    in_phase,
    mixed_unitary_phase,
    pancharatnam,
    wrap_angle,
)
from .purify import Purification, purified_phase, purify

__version__ = "0.1.0"
