from .portfolio.base_models import (
    RiskFactorSpec,
    ExposureMatrix,
    MRFModel,
    SubsetSets,
    BivariateClaytonParams,
)
from .portfolio.models import (
    HypergeometricSpec,
    GammaComponent,
    ConvolutionPMF,
    SampleBatch,
    SimultaneousDefault,
    MonteCarloEstimate,
    TailIndices,
    MaxDependencePoint,
)
from .portfolio.types.enums import (
    FactorKind,
    SpecialCase,
    SampleKind,
    PathKind,
    Regime,
    Command,
    OutputFormat,
)
from .errors import ErrorCode, MRFError, ValidationFailure, NumericalFailure, ArtifactIOError
from .run_state import RunConfig, RunState, CommandResult
