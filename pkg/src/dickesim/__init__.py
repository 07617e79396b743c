"""Heralded generation of symmetric multi-qubit entangled states.

Simulates a cascade of polarized photodetections on a chain of three-level
emitters, inverse-designs polarizer settings for arbitrary symmetric targets,
classifies three-qubit outputs into their entanglement families, and
estimates realistic preparation fidelities under finite detection windows.
"""

from .cascade import (
    PathCount,
    PolarizerConfig,
    PyramidLevel,
    build_pyramid,
    dicke_coefficients,
    path_count,
    pyramid_edges,
    pyramid_text,
)
from .core import (
    NORM_TOL,
    ORIENT_TOL,
    RESIDUAL_TOL,
    DickeIndex,
    EmitterRegister,
    LinearAngle,
    Polarizer,
    SymmetricState,
    apply_detection,
    fidelity,
    ket_index,
    ket_string,
    make_polarizer,
    project_symmetric,
    same_orientation,
)
from .entanglement import (
    CLASS_TOL,
    GHZ_CLASS,
    S_CLASS,
    W_CLASS,
    ClassPrediction,
    EntanglementReport,
    classify_from_config,
    classify_from_state,
    entanglement_report,
    pair_concurrence,
    single_qubit_entropy,
    tangle_closed_form,
    tangle_hyperdeterminant,
)
from .errors import (
    AsymmetricResidueError,
    ClassDisagreementError,
    ConfigError,
    DickesimError,
    DimensionMismatchError,
    InvalidKetError,
    NoExcitedPopulationError,
    ResidualExcitationError,
    RootFindingError,
    TooLargeError,
    WrongArityError,
    ZeroStateError,
    ZeroTargetError,
    ZeroVectorError,
)
from .synthesis import (
    DEGREE_TOL,
    SynthesisPolynomial,
    ghz_config,
    s_config,
    synthesize,
    w_config,
)
from .window import (
    DEFAULT_WAVELENGTH,
    DetectionGeometry,
    FidelityEstimate,
    PositionalDetection,
    estimate_fidelity,
    positional_detection_operator,
)

__version__ = "0.1.0"
