from __future__ import absolute_import
import os
from fepstat.utils.log import get_logger

# defaults; $FEPSTAT_CONF may name a python file overriding any of them (see load_conf)

logger = get_logger(__name__)

# significance levels: ALPHA_MEAN for means and mean differences, ALPHA_VAR
# for the Gaussian variance and variance-ratio intervals
ALPHA_MEAN = 0.05
ALPHA_VAR = 0.1

# digits shown in text reports
DIGITS = 2

# Jarque-Bera: normality accepted iff p >= JB_LEVEL
JB_LEVEL = 0.05
JB_MIN_SIZE = 4

# warn when max(n1, n2) / min(n1, n2) exceeds this
IMBALANCE_RATIO = 5.0

# special functions
ABS_TOL = 1e-12
MAX_ITER = 200

# quantile inversion stops once |cdf(x) - p| drops below this
QUANTILE_PTOL = 1e-13
QUANTILE_MAX_ITER = 400

# monte-carlo
REPLICATIONS = 20000
SEED = 20240101
# 0 means: physical cpu count
PARALLEL = 0
# slices per worker
SLICES_PER_WORKER = 4


def load_conf(path):
    """Run the python file at `path` and adopt its UPPER_CASE names."""
    if not path:
        return
    if not os.path.isfile(path):
        logger.warning('conf %s not found, keeping defaults', path)
        return

    scope = {}
    try:
        with open(path) as f:
            exec(compile(f.read(), path, 'exec'), scope)
    except Exception as e:
        logger.error('cannot load conf %s: %s', path, e)
        raise
    overrides = dict((k, v) for k, v in scope.items() if k.isupper())
    logger.debug('conf %s overrides %s', path, ', '.join(sorted(overrides)))
    globals().update(overrides)


load_conf(os.environ.get('FEPSTAT_CONF'))
