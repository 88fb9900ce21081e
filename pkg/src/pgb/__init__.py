"""Critically sampled Gaussian time-frequency transforms for coding.

The toolkit builds the periodic Gabor basis on an N_t x N_w lattice,
exchanges analysis and synthesis roles through the biorthogonal set
(pgb mode), codes signals and images by keeping the largest
coefficients, and refits the kept values by least squares.  Unitary-DFT
baselines and file I/O round out the experiment pipeline; see the demos
directory for worked examples.
"""

from .compression import (
    ErrorMetrics,
    SparseCoefficients,
    compute_metrics,
    dft_reconstruct,
    dft_topk,
    error_vs_k_sweep,
    porat_correct,
    reconstruct_sparse,
    sweep_csv,
    top_k,
)
from .errors import (
    ConvergenceError,
    IllConditionedError,
    InvalidArgumentError,
    ModeError,
    ParseError,
    PgbError,
    ShapeMismatchError,
)
from .image2d import (
    CoefficientGrid2D,
    Plan2D,
    build_plan_2d,
    compress_2d,
    dft_topk_2d,
    forward_2d,
    inverse_2d,
    porat_2d,
    reconstruct_sparse_2d,
)
from .kernel import bg_eval, dirichlet_eval, interpolate, pg_eval
from .lattice import (
    LatticeConfig,
    build_config,
    build_gabor_matrix,
    cell_to_column,
    column_to_cell,
    freq_centers,
    gaussian_sample,
    time_centers,
)
from .signalio import (
    Image,
    Signal1D,
    chirped_gaussian,
    parse_coeffs,
    read_pgm,
    read_signal_csv,
    read_wav,
    rect_pulse,
    serialize_coeffs,
    synthetic_splat,
    write_pgm,
    write_signal_csv,
    write_wav,
)
from .transform import (
    COND_FAIL,
    COND_WARN,
    CoefficientSet,
    TransformPlan,
    biorthogonal_matrix,
    build_plan,
    forward_pg,
    forward_pgb,
    inverse_pg,
    inverse_pgb,
)

__version__ = "0.1.0"

__all__ = [
    "COND_FAIL",
    "COND_WARN",
    "CoefficientGrid2D",
    "CoefficientSet",
    "ConvergenceError",
    "ErrorMetrics",
    "IllConditionedError",
    "Image",
    "InvalidArgumentError",
    "LatticeConfig",
    "ModeError",
    "ParseError",
    "PgbError",
    "Plan2D",
    "ShapeMismatchError",
    "Signal1D",
    "SparseCoefficients",
    "TransformPlan",
    "bg_eval",
    "biorthogonal_matrix",
    "build_config",
    "build_gabor_matrix",
    "build_plan",
    "build_plan_2d",
    "cell_to_column",
    "chirped_gaussian",
    "column_to_cell",
    "compress_2d",
    "compute_metrics",
    "dft_reconstruct",
    "dft_topk",
    "dft_topk_2d",
    "dirichlet_eval",
    "error_vs_k_sweep",
    "forward_2d",
    "forward_pg",
    "forward_pgb",
    "freq_centers",
    "gaussian_sample",
    "interpolate",
    "inverse_2d",
    "inverse_pg",
    "inverse_pgb",
    "parse_coeffs",
    "pg_eval",
    "porat_2d",
    "porat_correct",
    "read_pgm",
    "read_signal_csv",
    "read_wav",
    "reconstruct_sparse",
    "reconstruct_sparse_2d",
    "rect_pulse",
    "serialize_coeffs",
    "sweep_csv",
    "synthetic_splat",
    "time_centers",
    "top_k",
    "write_pgm",
    "write_signal_csv",
    "write_wav",
    "__version__",
]
