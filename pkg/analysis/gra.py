import logging

import numpy as np

from models import CoefficientMatrix, ComparabilityMatrix, Interval, ReferenceSequence
from errors import DegenerateDataError, DimensionError, DomainError, NormalizationError, ValidationError

logger = logging.getLogger(__name__)


def _bounds(values):
    lo = np.array([v.lo for v in values], dtype=float)
    hi = np.array([v.hi for v in values], dtype=float)
    return lo, hi


def normalize(values, spec):
    """Map one attribute column onto the common 0-1 comparability scale.

    Desirable columns are divided by the largest upper endpoint. Undesirable
    columns take the smallest lower endpoint over each value, which reverses
    the endpoints: [min_lo / hi, min_lo / lo].
    """
    if len(values) == 0:
        raise ValidationError(f'attribute {spec.name!r}: empty column')
    lo, hi = _bounds(values)
    if spec.is_desirable:
        top = hi.max()
        if top <= 0:
            raise NormalizationError(
                f'attribute {spec.name!r}: largest upper value is {top}, cannot divide by it',
                attribute=spec.name,
            )
        if lo.min() < 0:
            raise NormalizationError(
                f'attribute {spec.name!r}: negative values cannot be normalized', attribute=spec.name
            )
        r_lo, r_hi = lo / top, hi / top
    else:
        if lo.min() <= 0:
            i = int(np.argmin(lo))
            raise NormalizationError(
                f'attribute {spec.name!r}: undesirable values must be positive '
                f'(entry {i + 1} has lower value {lo[i]})',
                attribute=spec.name,
            )
        bottom = lo.min()
        r_lo, r_hi = bottom / hi, bottom / lo
    r_hi = np.minimum(r_hi, 1.0)
    r_lo = np.minimum(r_lo, r_hi)
    return [Interval(float(a), float(b)) for a, b in zip(r_lo, r_hi)]


def build_comparability(grid, alternatives, attributes):
    """Normalize an m x n grid of Intervals column by column."""
    m, n = len(alternatives), len(attributes)
    if len(grid) != m or any(len(row) != n for row in grid):
        raise DimensionError(f'interval grid does not match {m} alternatives x {n} attributes')
    lo = np.empty((m, n))
    hi = np.empty((m, n))
    for j, spec in enumerate(attributes):
        column = normalize([grid[i][j] for i in range(m)], spec)
        lo[:, j], hi[:, j] = _bounds(column)
    return ComparabilityMatrix(lo, hi, tuple(alternatives), tuple(attributes))


def reference_sequence(cm):
    if cm.shape[0] == 0:
        raise ValidationError('reference sequence needs at least one alternative')
    return ReferenceSequence(cm.lo.max(axis=0), cm.hi.max(axis=0))


def distance_matrix(cm, ref):
    if len(ref) != cm.shape[1]:
        raise DimensionError(f'reference has {len(ref)} entries, matrix has {cm.shape[1]} attributes')
    return np.maximum(np.abs(ref.lo - cm.lo), np.abs(ref.hi - cm.hi))


def grey_coefficients(cm, ref, rho):
    if not (0.0 <= rho <= 1.0):
        raise DomainError(f'rho must lie in [0, 1], got {rho!r}')
    distances = distance_matrix(cm, ref)
    delta_min = float(distances.min())
    delta_max = float(distances.max())
    if delta_max == 0.0:
        if rho == 0.0:
            raise DegenerateDataError('every alternative equals the reference and rho = 0')
        logger.warning('all alternatives coincide with the reference; every coefficient is 1')
        values = np.ones_like(distances)
    else:
        denominator = distances + rho * delta_max
        if np.any(denominator <= 0):
            i, j = np.argwhere(denominator <= 0)[0]
            raise DegenerateDataError(
                f'coefficient for ({cm.alternatives[i]}, {cm.attributes[j].name}) is 0/0 '
                f'with rho = 0; use rho > 0'
            )
        values = (delta_min + rho * delta_max) / denominator
    logger.debug('coefficients: rho=%s delta_min=%.6g delta_max=%.6g', rho, delta_min, delta_max)
    return CoefficientMatrix(values, float(rho), delta_min, delta_max, distances,
                             cm.alternatives, cm.attributes)


def weighted_grade(row, w):
    row = np.asarray(row, dtype=float)
    w = np.asarray(w, dtype=float)
    if row.shape != w.shape:
        raise DimensionError(f'{w.size} weights for {row.size} coefficients')
    if np.any(w < 0):
        raise ValidationError('grade weights must be non-negative')
    return float(row @ w)


def classic_grades(coefficients, w):
    return np.array([weighted_grade(coefficients.row(k), w) for k in range(coefficients.shape[0])])
