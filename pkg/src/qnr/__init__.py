"""Computation of the quadratic numerical range of complex block matrices."""

from .concentration import (
    ConcentrationReport,
    EmptySetError,
    ExpectedReduced,
    concentration_experiment,
    expected_reduced,
    hausdorff,
    perturbation_bound,
)
from .driver import DriverConfig, compute_qnr, random_sampling_baseline
from .grid import GridSelection, PointCloud, grid_select, should_escalate
from .kernel import (
    EigenSplit,
    ObjectiveParams,
    RadicandOnCut,
    Reduced2x2,
    branch_eigenvalues,
    eigen2x2,
    objective,
    reduce_pair,
    split_by_alpha,
)
from .linalg import (
    BlockMatrix,
    UnitPair,
    assemble,
    disassemble,
    full_spectrum,
    inner,
    operator_norm,
    sample_unit_pair,
)
from .seeker import (
    AscentOperators,
    DegenerateEigenvalue,
    SeekConfig,
    TangentPair,
    ZeroGradient,
    ascent_operators,
    curve_point,
    derivative_along,
    line_search,
    seek_boundary,
    steepest_tangent,
)
from .zoo import (
    ParseError,
    SplitOutOfRange,
    gen_a1,
    gen_a2,
    gen_a3,
    gen_a4,
    gen_a5,
    load_block_matrix,
    save_block_matrix,
)

__all__ = [
    "AscentOperators",
    "BlockMatrix",
    "ConcentrationReport",
    "DegenerateEigenvalue",
    "DriverConfig",
    "EigenSplit",
    "EmptySetError",
    "ExpectedReduced",
    "GridSelection",
    "ObjectiveParams",
    "ParseError",
    "PointCloud",
    "RadicandOnCut",
    "Reduced2x2",
    "SeekConfig",
    "SplitOutOfRange",
    "TangentPair",
    "UnitPair",
    "ZeroGradient",
    "ascent_operators",
    "assemble",
    "branch_eigenvalues",
    "compute_qnr",
    "concentration_experiment",
    "curve_point",
    "derivative_along",
    "disassemble",
    "eigen2x2",
    "expected_reduced",
    "full_spectrum",
    "gen_a1",
    "gen_a2",
    "gen_a3",
    "gen_a4",
    "gen_a5",
    "grid_select",
    "hausdorff",
    "inner",
    "line_search",
    "load_block_matrix",
    "objective",
    "operator_norm",
    "perturbation_bound",
    "random_sampling_baseline",
    "reduce_pair",
    "sample_unit_pair",
    "save_block_matrix",
    "seek_boundary",
    "should_escalate",
    "split_by_alpha",
    "steepest_tangent",
]

__version__ = "0.1.0"
