import logging
import os
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _env_float(name, default):
    value = os.environ.get(name)
    if value is None or value.strip() == '':
        return default
    try:
        return float(value)
    except ValueError:
        logger.warning('ignoring %s=%r: not a number; using %s', name, value, default)
        return default


def _env_threads():
    default = max(1, os.cpu_count() or 1)
    value = os.environ.get('GREYRANK_THREADS')
    if not value or not value.strip():
        return default
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning('ignoring GREYRANK_THREADS=%r: not an integer; using %d', value, default)
        return default


class Config:
    ALPHA = _env_float('GREYRANK_ALPHA', 0.5)
    RHO = _env_float('GREYRANK_RHO', 0.5)
    BETA = _env_float('GREYRANK_BETA', 0.5)
    VARIANT = os.environ.get('GREYRANK_VARIANT', 'bounded-vrs')
    OUTPUT_FORMAT = os.environ.get('GREYRANK_OUTPUT_FORMAT', 'table')

    THREADS = _env_threads()

    LOG_LEVEL = os.environ.get('GREYRANK_LOG_LEVEL', 'WARNING').upper()
    LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

    PIVOT_TOLERANCE = 1e-9
    FEASIBILITY_TOLERANCE = 1e-7
    SIMPLEX_MAX_ITERATIONS = 50_000

    POWER_TOLERANCE = 1e-12
    POWER_MAX_ITERATIONS = 10_000
    RECIPROCITY_TOLERANCE = 1e-9

    TIE_TOLERANCE = 5e-5
    WEIGHT_SUM_TOLERANCE = 2e-3
    SPREAD_TOLERANCE = 1e-12
    CR_WARNING_THRESHOLD = 0.1

    REPORT_DECIMALS = 4

    RANDOM_INDEX = {
        3: 0.58,
        4: 0.90,
        5: 1.12,
        6: 1.24,
        7: 1.32,
        8: 1.41,
        9: 1.45,
        10: 1.49,
    }

    APP_NAME = 'greyrank'
    VERSION = '0.1.0'
    APP_TAGLINE = 'Grey relational ranking with AHP-bounded additive DEA'
