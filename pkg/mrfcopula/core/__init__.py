"""
@fileoverview Numerical kernels of the MRF-Clayton copula family.
@filepath mrfcopula/core/__init__.py
"""

from .model import (
    build_model, factor_sets, bivariate_params, load_model, model_from_dict,
    model_to_dict, model_digest,
)
from .specfun import hyp_pfq, convergence_margin
from .gammaconv import convolution_pmf, expected_ratio
from .copula import (
    marginal_survival, marginal_survival_inverse, copula_cdf, copula_cdf_many,
    bivariate_cdf, bivariate_log_cdf, joint_survival, classify_special_case,
    GammaLaplace, gamma_transforms, lt_copula_cdf,
)
from .sampler import (
    sample_copula, sample_default_times, empirical_copula, to_uniforms,
    tie_frequency, empirical_spearman, margin_ks_statistics,
)
from .dependence import (
    spearman_rho, spearman_rho_numeric, spearman_archimedean, spearman_marshall_olkin,
    spearman_matrix, simdefault_analytic, simdefault_integral, simdefault_mc,
)
from .taildep import (
    classical_indices, maximal_indices, tail_indices, maximal_path, maximal_path_table,
    singularity_path, dependence_gap, estimate_tail_exponent,
)
