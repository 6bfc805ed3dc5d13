"""Morrey-Campanato toolkit: exact dyadic norms, Fourier-side bounds and experiments."""

from ._kernels import BACKEND
from .constructions import FAMILIES, make_family
from .fourier import ClosedForm, PowerWeighted, ft, ft_eval, morrey_norm_ft
from .functionals import (DProfile, campanato_rhs, campanato_sup_functional,
                          campanato_weight_conditions, d_functional, d_functional_weighted,
                          gm_constant)
from .grid import StepFunction, box, dilate, indicator
from .harness import (ExperimentConfig, ExperimentReport, fit_slope, generate_corpus,
                      run_suite)
from .norms import (NormParams, NormResult, Weight, campanato_seminorm, gamma_norm,
                    local_morrey_norm, lorentz_norm, morrey_norm, truncated_norm)
from .sequences import IndexedSeq, rearrange

__all__ = [
    "BACKEND", "FAMILIES", "make_family", "ClosedForm", "PowerWeighted", "ft", "ft_eval",
    "morrey_norm_ft", "DProfile", "campanato_rhs", "campanato_sup_functional",
    "campanato_weight_conditions", "d_functional", "d_functional_weighted", "gm_constant",
    "StepFunction", "box", "dilate", "indicator", "ExperimentConfig", "ExperimentReport",
    "fit_slope", "generate_corpus", "run_suite", "NormParams", "NormResult", "Weight",
    "campanato_seminorm", "gamma_norm", "local_morrey_norm", "lorentz_norm", "morrey_norm",
    "truncated_norm", "IndexedSeq", "rearrange",
]
