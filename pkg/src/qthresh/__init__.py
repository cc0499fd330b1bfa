"""qthresh: entropy thresholds for entanglement applications.

A numerical toolkit for bipartite N x N mixed states centered on one
question: how mixed can a state get before teleportation and dense
coding stop working?  It provides:

- validated density matrices, Weyl operators and maximally entangled
  bases (``states``),
- entropy functionals and the closed-form usefulness thresholds
  (``entropy``),
- certified lower/upper bounds on the singlet fraction via gradient
  ascent over the unitary group (``fef``),
- Werner mixtures, basis-diagonal states and the extremal
  threshold-saturating state (``families``),
- teleportation and dense-coding simulators that give the thresholds
  their operational meaning (``protocols``),
- seeded random state generation (``sampling``) and an experiment
  harness with a CLI (``reports``, ``cli``).

Example:
    >>> import qthresh as qt
    >>> w = qt.werner(qt.WernerParams(2, 0.5))
    >>> qt.von_neumann_entropy(w)
    1.5487949406953985
    >>> qt.fef_certified(w).lower
    0.625...
"""

from .entropy import (
    DistillableEntanglement,
    SpectralDecomposition,
    densecoding_threshold,
    distillable_entanglement_rank2_belldiag,
    hermitian_entropy_bits,
    linear_entropy,
    shannon_bits,
    shannon_entropy_in_basis,
    spectral_decomposition,
    teleport_threshold_linear,
    teleport_threshold_vn,
    von_neumann_entropy,
)
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidDimension,
    InvalidParameter,
    InvalidRank,
    NotHermitian,
    NotMaximallyEntangled,
    NotPSD,
    NotProbabilityVector,
    NumericalInstability,
    ParseError,
    PreconditionFailed,
    TheoremViolation,
    ToolkitError,
    TraceNotOne,
    ValidationError,
)
from .families import (
    CriticalEpsilons,
    WernerParams,
    bell_diagonal,
    critical_epsilons,
    extremal_threshold_state,
    extremal_threshold_weights,
    werner,
    werner_entropy_closed_form,
    werner_fef_closed_form,
    werner_purity_closed_form,
)
from .fef import (
    FefBounds,
    OptimizerConfig,
    TeleportVerdict,
    fef_bell_diagonal_exact,
    fef_certified,
    fef_lower_bound,
    fef_objective,
    fef_upper_bound,
    usable_for_teleportation,
)
from .protocols import (
    DenseCodingEnsemble,
    DenseCodingVerdict,
    TeleportResult,
    classical_fidelity,
    densecoding_chi_standard,
    densecoding_ensemble,
    densecoding_holevo,
    densecoding_useful,
    rotate_first_factor,
    teleportation_avg_fidelity_exact,
    teleportation_avg_fidelity_mc,
    teleportation_channel_apply,
)
from .reports import (
    EntropyVerdict,
    SweepRow,
    ThresholdReport,
    VerificationSummary,
    analyze_rho,
    analyze_state,
    sweep_csv,
    sweep_werner,
    verify_theorem,
)
from .sampling import (
    SamplerSpec,
    haar_pure,
    haar_unitary,
    high_entropy_density,
    hs_random_density,
    sample,
)
from .states import (
    DensityMatrix,
    MaxEntangledBasis,
    PureState,
    bell_basis,
    bell_diagonal_coeffs,
    canonical_phi,
    load_state,
    maximally_mixed,
    partial_trace,
    save_state,
    state_from_dict,
    state_to_dict,
    tensor,
    validate_density,
    weyl_operator,
)

__version__ = "0.1.0"
