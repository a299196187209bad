import logging

import numpy as np

from config import Config
from models import PriorityVector
from errors import ConvergenceError, DimensionError, DomainError, UnsupportedSizeError

logger = logging.getLogger(__name__)


def principal_eigenvector(B, tol=None, max_iter=None):
    """Priorities from the dominant eigenvector of a pairwise comparison matrix.

    Power iteration on B with the iterate renormalized to sum 1. A positive
    matrix has a unique dominant eigenvalue, so the iteration converges from
    the uniform start vector.
    """
    tol = Config.POWER_TOLERANCE if tol is None else tol
    max_iter = Config.POWER_MAX_ITERATIONS if max_iter is None else max_iter
    size = B.size
    if size < 2:
        raise DimensionError(f'AHP needs at least 2 attributes, got {size}')

    A = B.values
    e = np.full(size, 1.0 / size)
    for iteration in range(1, max_iter + 1):
        y = A @ e
        e_next = y / y.sum()
        if np.max(np.abs(e_next - e)) < tol:
            e = e_next
            break
        e = e_next
    else:
        raise ConvergenceError(f'power iteration did not converge in {max_iter} iterations')

    lambda_max = float(np.mean((A @ e) / e))
    logger.debug('power iteration converged after %d iterations, lambda_max=%.6f', iteration, lambda_max)
    if size > max(Config.RANDOM_INDEX):
        logger.warning('no random index for N = %d; consistency ratio not computed', size)
        return PriorityVector(e / e.sum(), lambda_max, None, B.labels, iteration)
    cr = consistency_ratio(lambda_max, size)
    if cr > Config.CR_WARNING_THRESHOLD:
        logger.warning('consistency ratio %.3f exceeds %.2f; judgments may be incoherent',
                       cr, Config.CR_WARNING_THRESHOLD)
    return PriorityVector(e / e.sum(), lambda_max, cr, B.labels, iteration)


def consistency_ratio(lambda_max, n):
    if n <= 2:
        return 0.0
    if n > max(Config.RANDOM_INDEX):
        raise UnsupportedSizeError(f'no random index tabulated for N = {n} (max {max(Config.RANDOM_INDEX)})')
    excess = lambda_max - n
    if excess < 0:
        # power iteration lands a hair under N on consistent matrices
        if excess < -1e-8 * n:
            raise DomainError(f'lambda_max {lambda_max} is below N = {n}')
        excess = 0.0
    return excess / ((n - 1) * Config.RANDOM_INDEX[n])
