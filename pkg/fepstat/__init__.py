from __future__ import absolute_import
from .moments import Sample, summarize
from .onesample import (
    ConfidenceInterval, ci_mean_gaussian, ci_mean_general, ci_var_gaussian, ci_var_general,
    paired_reduce
)
from .twosample import (
    RatioNormalization, ci_ratio_gaussian, ci_ratio_general, ci_dm_pooled, ci_dm_welch,
    ci_dm_general
)
from .normality import jarque_bera
from .datasets import load_sample

__all__ = [
    'Sample', 'summarize', 'ConfidenceInterval', 'ci_mean_gaussian', 'ci_mean_general',
    'ci_var_gaussian', 'ci_var_general', 'paired_reduce', 'RatioNormalization',
    'ci_ratio_gaussian', 'ci_ratio_general', 'ci_dm_pooled', 'ci_dm_welch', 'ci_dm_general',
    'jarque_bera', 'load_sample',
]
