import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from config import Config
from models import (AlternativeGrade, GradeSolution, LinearProgram, PriorityVector,
                    Relation, Sense, SlackSolution, Variant)
from errors import DimensionError, InfeasibleModelError, ValidationError
from analysis import lp as lp_solver

logger = logging.getLogger(__name__)


def _check_index(coefficients, k):
    m = coefficients.shape[0]
    if not (0 <= k < m):
        raise DimensionError(f'alternative index {k} outside 0..{m - 1}')


def _solve(program, coefficients, k, stage):
    solution = lp_solver.solve(program)
    if not solution.is_optimal:
        label = coefficients.alternatives[k]
        raise InfeasibleModelError(
            f'{stage} program for {label!r} returned {solution.status} '
            f'({program.n_vars} variables, {program.n_rows} rows)',
            status=solution.status, alternative=label, stage=stage,
        )
    return solution


def _multiplier_program(coefficients, k, cfg, sense):
    xi = coefficients.values
    m, n = xi.shape
    bounds = tuple(float(b) for b in cfg.lower_bounds(n))
    relation = Relation.LE if sense == Sense.MAXIMIZE else Relation.GE
    if cfg.has_intercept:
        # w0 enters as -w0 in the optimistic form and +w0 in the pessimistic one
        sign = -1.0 if sense == Sense.MAXIMIZE else 1.0
        objective = np.append(xi[k], sign)
        rows = np.hstack([xi, np.full((m, 1), sign)])
        bounds = bounds + (None,)
    else:
        objective = xi[k].copy()
        rows = xi.copy()
    return LinearProgram(sense, objective, rows, (relation,) * m, np.ones(m), bounds)


def _grade_from(solution, n, cfg, sense):
    weights = solution.x[:n]
    intercept = float(solution.x[n]) if cfg.has_intercept else 0.0
    return GradeSolution(float(solution.objective), weights, intercept)


def optimistic_grade(coefficients, k, cfg):
    """Best-light grade: max sum w_j xi_kj - w0 with every alternative's grade capped at 1."""
    _check_index(coefficients, k)
    program = _multiplier_program(coefficients, k, cfg, Sense.MAXIMIZE)
    solution = _solve(program, coefficients, k, 'optimistic')
    return _grade_from(solution, coefficients.shape[1], cfg, Sense.MAXIMIZE)


def pessimistic_grade(coefficients, k, cfg):
    """Worst-light grade: min sum w_j xi_kj + w0 with every alternative's grade at least 1."""
    _check_index(coefficients, k)
    program = _multiplier_program(coefficients, k, cfg, Sense.MINIMIZE)
    solution = _solve(program, coefficients, k, 'pessimistic')
    return _grade_from(solution, coefficients.shape[1], cfg, Sense.MINIMIZE)


def _envelopment_program(coefficients, k, e, slack_sign):
    xi = coefficients.values
    m, n = xi.shape
    priorities = e.weights if isinstance(e, PriorityVector) else np.asarray(e, dtype=float)
    if priorities.size != n:
        raise DimensionError(f'{priorities.size} priorities for {n} attributes')
    objective = np.concatenate([np.zeros(m), priorities])
    rows = np.zeros((n + 1, m + n))
    rows[:n, :m] = xi.T
    rows[:n, m:] = slack_sign * np.eye(n)
    rows[n, :m] = 1.0
    rhs = np.append(xi[k], 1.0)
    return LinearProgram(Sense.MAXIMIZE, objective, rows, (Relation.EQ,) * (n + 1), rhs)


def _slacks_from(solution, m):
    return SlackSolution(float(solution.objective), solution.x[:m], solution.x[m:])


def optimistic_slacks(coefficients, k, e):
    """Shortfall of alternative k against the best-practice frontier; value is 1 - optimistic grade."""
    _check_index(coefficients, k)
    program = _envelopment_program(coefficients, k, e, slack_sign=-1.0)
    solution = _solve(program, coefficients, k, 'optimistic-slacks')
    return _slacks_from(solution, coefficients.shape[0])


def pessimistic_slacks(coefficients, k, e):
    """Excess of alternative k over the worst-practice frontier; value is pessimistic grade - 1."""
    _check_index(coefficients, k)
    program = _envelopment_program(coefficients, k, e, slack_sign=1.0)
    solution = _solve(program, coefficients, k, 'pessimistic-slacks')
    return _slacks_from(solution, coefficients.shape[0])


def _min_max(values):
    values = np.asarray(values, dtype=float)
    spread = values.max() - values.min()
    if spread < Config.SPREAD_TOLERANCE:
        return np.zeros_like(values), False
    return (values - values.min()) / spread, True


def degenerate_spreads(optimistic, pessimistic):
    flags = []
    if not _min_max(optimistic)[1]:
        flags.append('degenerate-optimistic-spread')
    if not _min_max(pessimistic)[1]:
        flags.append('degenerate-pessimistic-spread')
    return tuple(flags)


def compromise(optimistic, pessimistic, beta):
    if not (0.0 <= beta <= 1.0):
        raise ValidationError(f'beta must lie in [0, 1], got {beta!r}')
    optimistic = np.asarray(optimistic, dtype=float)
    pessimistic = np.asarray(pessimistic, dtype=float)
    if optimistic.shape != pessimistic.shape:
        raise DimensionError('optimistic and pessimistic grades differ in length')
    best, best_spread = _min_max(optimistic)
    worst, worst_spread = _min_max(pessimistic)
    if not (best_spread and worst_spread):
        logger.warning('grade spread is degenerate; the flat term contributes 0 to every alternative')
    return np.clip(beta * best + (1 - beta) * worst, 0.0, 1.0)


def rank_dense(values, tol=None):
    tol = Config.TIE_TOLERANCE if tol is None else tol
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValidationError('cannot rank non-finite values')
    order = sorted(range(values.size), key=lambda i: (-values[i], i))
    ranks = [0] * values.size
    rank = 0
    anchor = None
    # a tie group spans at most tol from its largest value
    for i in order:
        if anchor is None or anchor - values[i] > tol:
            rank += 1
            anchor = values[i]
        ranks[i] = rank
    return tuple(ranks)


def _map(function, items, threads):
    if threads <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(function, items))


def grade_alternatives(coefficients, cfg, threads=None, slacks=False):
    """Solve both perspectives for every alternative and assemble ranked grades.

    Returns the grades ordered by alternative index and the degenerate-spread flags.
    """
    threads = Config.THREADS if threads is None else threads
    m = coefficients.shape[0]
    indices = list(range(m))
    optimistic = _map(lambda k: optimistic_grade(coefficients, k, cfg), indices, threads)
    pessimistic = _map(lambda k: pessimistic_grade(coefficients, k, cfg), indices, threads)
    logger.info('solved %d grade programs (%s)', 2 * m, cfg.variant)

    shortfalls = excesses = [None] * m
    if slacks:
        if cfg.variant == Variant.BOUNDED_VRS:
            shortfalls = _map(lambda k: optimistic_slacks(coefficients, k, cfg.weights), indices, threads)
            excesses = _map(lambda k: pessimistic_slacks(coefficients, k, cfg.weights), indices, threads)
        else:
            logger.info('slack diagnostics need AHP priorities; skipped for %s', cfg.variant)

    best = np.array([g.grade for g in optimistic])
    worst = np.array([g.grade for g in pessimistic])
    delta = compromise(best, worst, cfg.beta)
    ranks = rank_dense(delta)
    grades = tuple(
        AlternativeGrade(coefficients.alternatives[k], optimistic[k], pessimistic[k],
                         float(delta[k]), ranks[k], shortfalls[k], excesses[k])
        for k in indices
    )
    for grade in grades:
        logger.debug('%s: optimistic %.6f pessimistic %.6f compromise %.6f rank %d',
                     grade.label, grade.optimistic.grade, grade.pessimistic.grade,
                     grade.compromise, grade.rank)
    return grades, degenerate_spreads(best, worst)
