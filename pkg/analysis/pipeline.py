import logging
from contextlib import contextmanager

import numpy as np

from models import DeaConfig, GradeReport, PipelineAudit, PriorityVector, RunConfig
from errors import DimensionError, GreyRankError
from analysis.fuzzy import cut_cell
from analysis.gra import build_comparability, classic_grades, grey_coefficients, reference_sequence
from analysis.ahp import principal_eigenvector
from analysis.dea import compromise, grade_alternatives, rank_dense

logger = logging.getLogger(__name__)


@contextmanager
def stage(name):
    try:
        yield
    except GreyRankError as err:
        raise err.with_stage(name)


def interval_grid(dataset, alpha):
    return tuple(tuple(cut_cell(cell, alpha) for cell in row) for row in dataset.cells)


def _align(priorities, attributes):
    """Reorder priorities to the dataset's attribute order when the labels allow it."""
    names = [a.name.strip().lower() for a in attributes]
    labels = [label.strip().lower() for label in priorities.labels]
    if len(labels) != len(names):
        raise DimensionError(f'{len(labels)} priorities for {len(names)} attributes')
    if labels == names or sorted(labels) != sorted(names):
        return priorities
    order = [labels.index(name) for name in names]
    logger.info('reordering priorities %s to attribute order %s', priorities.labels, names)
    return PriorityVector(priorities.weights[order], priorities.lambda_max,
                          priorities.consistency_ratio,
                          tuple(priorities.labels[i] for i in order), priorities.iterations)


def resolve_priorities(config, attributes):
    if config.weights is not None:
        return _align(config.weights, attributes)
    if config.ahp_matrix is not None:
        return _align(principal_eigenvector(config.ahp_matrix), attributes)
    return None


def compute_coefficients(dataset, alpha, rho):
    """alpha-cut, normalize, build the reference and return (grid, comparability, reference, coefficients)."""
    with stage('alpha_cut'):
        grid = interval_grid(dataset, alpha)
    with stage('normalize'):
        comparability = build_comparability(grid, dataset.alternatives, dataset.attributes)
    with stage('reference'):
        reference = reference_sequence(comparability)
    with stage('coefficients'):
        coefficients = grey_coefficients(comparability, reference, rho)
    return grid, comparability, reference, coefficients


def full_pipeline(dataset, config):
    if not isinstance(config, RunConfig):
        raise TypeError('full_pipeline expects a RunConfig')
    logger.info('ranking %d alternatives x %d attributes from %r',
                len(dataset.alternatives), len(dataset.attributes), dataset.name)
    grid, comparability, reference, coefficients = compute_coefficients(
        dataset, config.alpha, config.rho)

    with stage('ahp'):
        priorities = resolve_priorities(config, dataset.attributes)
        dea_config = DeaConfig(config.variant, priorities, config.beta)

    classic = classic_grades(coefficients, priorities.weights) if priorities is not None else None

    with stage('grades'):
        grades, flags = grade_alternatives(coefficients, dea_config, config.threads, config.slacks)

    audit = PipelineAudit(grid, comparability, reference, coefficients, priorities, classic)
    return GradeReport(grades, config.variant, config.beta, flags, audit)


def sweep_beta(report, betas):
    """Compromise grades and dense ranks for several beta values; no programs are re-solved."""
    rows = []
    for beta in betas:
        with stage('compromise'):
            delta = compromise(report.optimistic, report.pessimistic, beta)
        rows.append((float(beta), delta, rank_dense(delta)))
    return rows


def sweep_rho(dataset, config, rhos):
    reports = []
    for rho in rhos:
        run = RunConfig(config.alpha, float(rho), config.beta, config.variant, config.ahp_matrix,
                        config.weights, config.output_format, False, False, config.threads)
        reports.append((float(rho), full_pipeline(dataset, run)))
    return reports


def rank_agreement(first, second):
    """Share of alternative pairs ordered the same way by two rank vectors (ties count as agreement)."""
    a = np.asarray(first)
    b = np.asarray(second)
    m = a.size
    if m < 2:
        return 1.0
    agree = total = 0
    for i in range(m):
        for j in range(i + 1, m):
            total += 1
            if np.sign(a[i] - a[j]) == np.sign(b[i] - b[j]) or a[i] == a[j] or b[i] == b[j]:
                agree += 1
    return agree / total
