"""entmom: exact entanglement-moment analytics with a Monte Carlo check.

Exact moments and cumulants of the purity distribution of bipartite
random pure states, Edgeworth expansions of the purity and Meyer-Wallach
entanglement densities, and a Haar-random-state sampler to validate all
of it.
"""

from .cumulant_engine import (
    CumulantVector,
    DegenerateDistributionError,
    RescaledCumulants,
    closed_form_kappa,
    moments_to_cumulants,
    rescale,
)
from .edgeworth import (
    EdgeworthSeries,
    EdgeworthTerm,
    adaptive_simpson,
    coefficient_table,
    density_function,
    evaluate,
)
from .meyer_wallach import (
    QMomentVector,
    QubitSystem,
    closed_form_q_kappa,
    q_cumulants,
    q_density,
    q_moment,
    q_moment_vector,
)
from .numkit import (
    Composition,
    MultiplicityVector,
    Rational,
    compositions,
    factorial,
    half_gamma,
    hermite_he,
    multiplicity_vectors,
)
from .purity import (
    DimensionPair,
    MomentVector,
    SchmidtVector,
    density_p2,
    density_p2_cdf,
    density_p2_normalization,
    moment_R,
    moment_R_from_integrals,
    moment_R_p2,
    moment_R_symmetric,
    moment_vector,
    simplex_integral_ordered,
    simplex_integral_symmetrized,
)
from .sampler import (
    Histogram,
    SampleBatch,
    empirical_moments,
    histogram,
    ks_statistic,
    read_batch_csv,
    sample_mw,
    sample_purity,
    schmidt_spectra,
    write_batch_csv,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # numkit
    "Rational",
    "Composition",
    "MultiplicityVector",
    "factorial",
    "half_gamma",
    "compositions",
    "multiplicity_vectors",
    "hermite_he",
    # purity
    "DimensionPair",
    "MomentVector",
    "SchmidtVector",
    "moment_R",
    "moment_R_symmetric",
    "moment_R_p2",
    "moment_vector",
    "moment_R_from_integrals",
    "simplex_integral_ordered",
    "simplex_integral_symmetrized",
    "density_p2",
    "density_p2_normalization",
    "density_p2_cdf",
    # cumulant engine
    "CumulantVector",
    "RescaledCumulants",
    "DegenerateDistributionError",
    "moments_to_cumulants",
    "closed_form_kappa",
    "rescale",
    # edgeworth
    "EdgeworthSeries",
    "EdgeworthTerm",
    "coefficient_table",
    "evaluate",
    "density_function",
    "adaptive_simpson",
    # meyer-wallach
    "QubitSystem",
    "QMomentVector",
    "q_moment",
    "q_moment_vector",
    "q_cumulants",
    "closed_form_q_kappa",
    "q_density",
    # sampler
    "SampleBatch",
    "Histogram",
    "sample_purity",
    "sample_mw",
    "schmidt_spectra",
    "empirical_moments",
    "histogram",
    "ks_statistic",
    "write_batch_csv",
    "read_batch_csv",
]
