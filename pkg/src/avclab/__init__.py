"""Exact oracles for adversarially robust PAC learning of halfspaces."""

from .aerm import ErmResult, aerm_finite, aerm_halfspace, threshold_erm_1d
from .corruption import (
    TabularRelation,
    corrupt_point,
    corrupt_tabular,
    corrupted_evaluate,
    identity_relation,
    lattice_relation,
    zero_one_loss,
)
from .errors import (
    AvclabError,
    CapacityError,
    CoverageError,
    DegenerateHypothesisError,
    DimensionMismatch,
    NoSupportError,
    PreconditionError,
    UnsupportedBodyError,
)
from .geometry import INF, ConstraintSet, dual_seminorm, lineality, seminorm, support_vertex
from .hypotheses import (
    BOT,
    FiniteClass,
    Halfspace,
    HalfspaceClass,
    LabeledDataset,
    PointIndicatorClass,
    evaluate,
    signed_distance,
    tabulate,
)
from .risk import (
    LossVectorSet,
    adversarial_empirical_risk,
    generalization_bound,
    loss_vector,
    margin_loss,
    massart_bound,
    rademacher_complexity,
    sample_complexity_bound,
)
from .shattering import (
    FeasibilityCertificate,
    avc_theorem_value,
    halfspace_pattern_feasible,
    loss_pattern_set,
    point_indicator_construction,
    sauer_bound,
    shatter_check,
    shattered_witness,
    shattering_coefficient,
    unachievable_pattern,
    vc_dimension,
    vc_pair_check,
)

__version__ = "0.1.0"
