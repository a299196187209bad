import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from config import Config
from errors import DimensionError, DomainError, SchemaError, ValidationError


class Orientation:
    DESIRABLE = 'desirable'
    UNDESIRABLE = 'undesirable'

    ALL_ORIENTATIONS = [DESIRABLE, UNDESIRABLE]

    ORIENTATION_NAMES = {
        DESIRABLE: 'Desirable (more is better)',
        UNDESIRABLE: 'Undesirable (less is better)',
    }


class CellKind:
    CRISP = 'crisp'
    TRAPEZOID = 'trapezoid'
    INTERVAL = 'interval'

    ALL_KINDS = [CRISP, TRAPEZOID, INTERVAL]

    KIND_NAMES = {
        CRISP: 'Crisp number',
        TRAPEZOID: 'Trapezoidal fuzzy number',
        INTERVAL: 'Pre-cut interval',
    }


class Variant:
    BOUNDED_VRS = 'bounded-vrs'
    CRS_UNBOUNDED = 'crs-unbounded'

    ALL_VARIANTS = [BOUNDED_VRS, CRS_UNBOUNDED]

    VARIANT_NAMES = {
        BOUNDED_VRS: 'AHP-bounded additive DEA, free intercept (VRS)',
        CRS_UNBOUNDED: 'Unbounded weights, zero intercept (CRS)',
    }


class OutputFormat:
    TABLE = 'table'
    CSV = 'csv'
    JSON = 'json'
    PDF = 'pdf'

    ALL_FORMATS = [TABLE, CSV, JSON, PDF]


class Sense:
    MAXIMIZE = 'max'
    MINIMIZE = 'min'

    ALL_SENSES = [MAXIMIZE, MINIMIZE]


class Relation:
    LE = '<='
    EQ = '='
    GE = '>='

    ALL_RELATIONS = [LE, EQ, GE]


class LpStatus:
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'

    ALL_STATUSES = [OPTIMAL, INFEASIBLE, UNBOUNDED]


def _check_finite(values, what):
    for v in values:
        if not math.isfinite(v):
            raise ValidationError(f'{what} must be finite, got {v!r}')


def _check_unit(value, name):
    if not (0.0 <= value <= 1.0):
        raise DomainError(f'{name} must lie in [0, 1], got {value!r}')


@dataclass(frozen=True)
class TrapezoidalFuzzy:
    y1: float
    y2: float
    y3: float
    y4: float

    def __post_init__(self):
        _check_finite(self.as_tuple(), 'trapezoid values')
        if not (self.y1 <= self.y2 <= self.y3 <= self.y4):
            raise ValidationError(
                f'trapezoid {self.as_tuple()} is not monotone (need y1 <= y2 <= y3 <= y4)'
            )

    @classmethod
    def crisp(cls, value):
        value = float(value)
        return cls(value, value, value, value)

    @property
    def is_crisp(self):
        return self.y1 == self.y4

    def as_tuple(self):
        return (self.y1, self.y2, self.y3, self.y4)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        _check_finite((self.lo, self.hi), 'interval endpoints')
        if self.lo > self.hi:
            raise ValidationError(f'interval [{self.lo}, {self.hi}] has lo > hi')

    @classmethod
    def point(cls, value):
        value = float(value)
        return cls(value, value)

    @property
    def width(self):
        return self.hi - self.lo

    def as_tuple(self):
        return (self.lo, self.hi)


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    orientation: str = Orientation.DESIRABLE

    def __post_init__(self):
        if self.orientation not in Orientation.ALL_ORIENTATIONS:
            raise ValidationError(
                f'attribute {self.name!r}: unknown orientation {self.orientation!r}'
            )

    @property
    def is_desirable(self):
        return self.orientation == Orientation.DESIRABLE


@dataclass(frozen=True, eq=False)
class ComparabilityMatrix:
    lo: np.ndarray
    hi: np.ndarray
    alternatives: tuple
    attributes: tuple

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        if lo.ndim != 2 or lo.shape != hi.shape:
            raise DimensionError('comparability bounds must be two matrices of equal shape')
        m, n = lo.shape
        if m == 0 or n == 0:
            raise ValidationError('comparability matrix is empty')
        if len(self.alternatives) != m or len(self.attributes) != n:
            raise DimensionError(
                f'labels ({len(self.alternatives)}x{len(self.attributes)}) do not match matrix {m}x{n}'
            )
        eps = 1e-12
        if np.any(lo < -eps) or np.any(hi > 1 + eps) or np.any(lo > hi + eps):
            raise ValidationError('comparability entries must satisfy 0 <= lo <= hi <= 1')
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    @property
    def shape(self):
        return self.lo.shape

    def cell(self, i, j):
        return Interval(float(self.lo[i, j]), float(self.hi[i, j]))

    def column(self, j):
        return [self.cell(i, j) for i in range(self.shape[0])]


@dataclass(frozen=True, eq=False)
class ReferenceSequence:
    lo: np.ndarray
    hi: np.ndarray

    def __len__(self):
        return len(self.lo)

    def entry(self, j):
        return Interval(float(self.lo[j]), float(self.hi[j]))


@dataclass(frozen=True, eq=False)
class CoefficientMatrix:
    values: np.ndarray
    rho: float
    delta_min: float
    delta_max: float
    distances: np.ndarray
    alternatives: tuple
    attributes: tuple

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise DimensionError('coefficient matrix must be two-dimensional')
        if values.shape != (len(self.alternatives), len(self.attributes)):
            raise DimensionError('coefficient labels do not match matrix shape')
        if np.any(values <= 0) or np.any(values > 1 + 1e-12):
            raise ValidationError('grey relational coefficients must lie in (0, 1]')
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_values(cls, values, alternatives=None, attributes=None, rho=float('nan')):
        """Wrap a bare coefficient matrix, e.g. a published table or a random test matrix."""
        values = np.asarray(values, dtype=float)
        m, n = values.shape
        alternatives = tuple(alternatives or (f'A{i + 1}' for i in range(m)))
        attributes = tuple(attributes or (AttributeSpec(f'C{j + 1}') for j in range(n)))
        return cls(values, rho, float('nan'), float('nan'), np.full((m, n), np.nan),
                   alternatives, attributes)

    @property
    def shape(self):
        return self.values.shape

    def row(self, k):
        return self.values[k]


@dataclass(frozen=True, eq=False)
class PairwiseMatrix:
    values: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise DimensionError(f'pairwise matrix must be square, got shape {values.shape}')
        size = values.shape[0]
        labels = tuple(self.labels) or tuple(f'C{j + 1}' for j in range(size))
        if len(labels) != size:
            raise DimensionError(f'{len(labels)} labels for a {size}x{size} pairwise matrix')
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise ValidationError('pairwise comparisons must be finite and positive')
        if not np.allclose(np.diag(values), 1.0, rtol=0, atol=Config.RECIPROCITY_TOLERANCE):
            raise ValidationError('pairwise matrix diagonal must be 1')
        product = values * values.T
        if not np.allclose(product, 1.0, rtol=Config.RECIPROCITY_TOLERANCE, atol=0):
            h, q = np.unravel_index(np.argmax(np.abs(product - 1.0)), product.shape)
            raise ValidationError(
                f'pairwise matrix is not reciprocal at ({labels[h]}, {labels[q]}): '
                f'{values[h, q]} vs {values[q, h]}'
            )
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'labels', labels)

    @property
    def size(self):
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class PriorityVector:
    weights: np.ndarray
    lambda_max: Optional[float] = None
    consistency_ratio: Optional[float] = None
    labels: tuple = ()
    iterations: int = 0

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float)
        if weights.ndim != 1 or weights.size == 0:
            raise DimensionError('priority vector must be a non-empty 1-d array')
        if np.any(weights <= 0):
            raise ValidationError('priorities must all be positive')
        if abs(weights.sum() - 1.0) > Config.WEIGHT_SUM_TOLERANCE:
            raise ValidationError(f'priorities must sum to 1, got {weights.sum():.12g}')
        labels = tuple(self.labels) or tuple(f'C{j + 1}' for j in range(weights.size))
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def from_weights(cls, weights, labels=()):
        """Accept externally supplied priorities as given; rounded published values may sum to 1 +- 2e-3."""
        weights = np.asarray(weights, dtype=float)
        if np.any(weights <= 0):
            raise ValidationError('explicit weights must all be positive')
        total = weights.sum()
        if abs(total - 1.0) > Config.WEIGHT_SUM_TOLERANCE:
            raise ValidationError(f'explicit weights sum to {total:.6g}, expected 1')
        return cls(weights, labels=labels)

    def __len__(self):
        return self.weights.size

    @property
    def is_consistent(self):
        if self.consistency_ratio is None:
            return True
        return self.consistency_ratio <= Config.CR_WARNING_THRESHOLD


@dataclass(frozen=True, eq=False)
class LinearProgram:
    sense: str
    objective: np.ndarray
    rows: np.ndarray
    relations: tuple
    rhs: np.ndarray
    lower_bounds: tuple = None

    def __post_init__(self):
        if self.sense not in Sense.ALL_SENSES:
            raise ValidationError(f'unknown objective sense {self.sense!r}')
        objective = np.asarray(self.objective, dtype=float).reshape(-1)
        n = objective.size
        rows = np.asarray(self.rows, dtype=float)
        if rows.size == 0:
            rows = rows.reshape(0, n)
        if rows.ndim != 2 or rows.shape[1] != n:
            raise DimensionError(f'every constraint row needs {n} coefficients')
        rhs = np.asarray(self.rhs, dtype=float).reshape(-1)
        if rhs.size != rows.shape[0] or len(self.relations) != rows.shape[0]:
            raise DimensionError('constraint rows, relations and rhs differ in length')
        for relation in self.relations:
            if relation not in Relation.ALL_RELATIONS:
                raise ValidationError(f'unknown constraint relation {relation!r}')
        lower = self.lower_bounds
        if lower is None:
            lower = (0.0,) * n
        if len(lower) != n:
            raise DimensionError(f'{len(lower)} variable bounds for {n} variables')
        lower = tuple(None if b is None else float(b) for b in lower)
        for arr, what in ((objective, 'objective'), (rows.ravel(), 'constraint coefficients'),
                          (rhs, 'right-hand sides'), ([b for b in lower if b is not None], 'bounds')):
            _check_finite(arr, what)
        object.__setattr__(self, 'objective', objective)
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'relations', tuple(self.relations))
        object.__setattr__(self, 'rhs', rhs)
        object.__setattr__(self, 'lower_bounds', lower)

    @property
    def n_vars(self):
        return self.objective.size

    @property
    def n_rows(self):
        return self.rows.shape[0]


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: str
    objective: float = float('nan')
    x: np.ndarray = None
    duals: np.ndarray = None
    iterations: int = 0

    def __post_init__(self):
        if self.status not in LpStatus.ALL_STATUSES:
            raise ValidationError(f'unknown LP status {self.status!r}')

    @property
    def is_optimal(self):
        return self.status == LpStatus.OPTIMAL


@dataclass(frozen=True, eq=False)
class DeaConfig:
    variant: str = Variant.BOUNDED_VRS
    weights: Optional[PriorityVector] = None
    beta: float = 0.5

    def __post_init__(self):
        if self.variant not in Variant.ALL_VARIANTS:
            raise ValidationError(f'unknown DEA variant {self.variant!r}')
        _check_unit(self.beta, 'beta')
        if self.variant == Variant.BOUNDED_VRS and self.weights is None:
            raise ValidationError('bounded-vrs requires AHP priority weights')

    def lower_bounds(self, n):
        if self.variant == Variant.CRS_UNBOUNDED:
            return np.zeros(n)
        if len(self.weights) != n:
            raise DimensionError(f'{len(self.weights)} priorities for {n} attributes')
        return self.weights.weights

    @property
    def has_intercept(self):
        return self.variant == Variant.BOUNDED_VRS


@dataclass(frozen=True, eq=False)
class GradeSolution:
    grade: float
    weights: np.ndarray
    intercept: float


@dataclass(frozen=True, eq=False)
class SlackSolution:
    value: float
    lambdas: np.ndarray
    slacks: np.ndarray


@dataclass(frozen=True, eq=False)
class AlternativeGrade:
    label: str
    optimistic: GradeSolution
    pessimistic: GradeSolution
    compromise: float = 0.0
    rank: int = 0
    shortfall: Optional[SlackSolution] = None
    excess: Optional[SlackSolution] = None


@dataclass(frozen=True, eq=False)
class PipelineAudit:
    intervals: Optional[tuple] = None
    comparability: Optional[ComparabilityMatrix] = None
    reference: Optional[ReferenceSequence] = None
    coefficients: Optional[CoefficientMatrix] = None
    priorities: Optional[PriorityVector] = None
    classic_grades: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class GradeReport:
    grades: tuple
    variant: str
    beta: float
    flags: tuple = ()
    audit: PipelineAudit = field(default_factory=PipelineAudit)

    @property
    def alternatives(self):
        return tuple(g.label for g in self.grades)

    @property
    def optimistic(self):
        return np.array([g.optimistic.grade for g in self.grades])

    @property
    def pessimistic(self):
        return np.array([g.pessimistic.grade for g in self.grades])

    @property
    def compromise(self):
        return np.array([g.compromise for g in self.grades])

    @property
    def ranks(self):
        return tuple(g.rank for g in self.grades)

    def by_label(self, label):
        for grade in self.grades:
            if grade.label == label:
                return grade
        raise KeyError(label)


@dataclass(frozen=True, eq=False)
class Dataset:
    name: str
    attributes: tuple
    kinds: tuple
    alternatives: tuple
    cells: tuple
    provenance: str = ''

    def __post_init__(self):
        n = len(self.attributes)
        if n == 0:
            raise SchemaError(f'dataset {self.name!r} has no attributes')
        if len(self.kinds) != n:
            raise SchemaError(f'dataset {self.name!r}: {len(self.kinds)} cell kinds for {n} attributes')
        if len(self.alternatives) == 0:
            raise SchemaError(f'dataset {self.name!r} has no alternatives')
        if len(self.cells) != len(self.alternatives):
            raise SchemaError(f'dataset {self.name!r}: rows and alternative labels differ in count')
        for kind in self.kinds:
            if kind not in CellKind.ALL_KINDS:
                raise SchemaError(f'unknown cell kind {kind!r}')
        for label, row in zip(self.alternatives, self.cells):
            if len(row) != n:
                raise SchemaError(f'row {label!r} has {len(row)} cells, expected {n}')
            for attribute, kind, cell in zip(self.attributes, self.kinds, row):
                if not _cell_matches(kind, cell):
                    raise SchemaError(
                        f'cell ({label}, {attribute.name}) is not a {kind} value: {cell!r}'
                    )

    @property
    def shape(self):
        return (len(self.alternatives), len(self.attributes))


def _cell_matches(kind, cell):
    if kind == CellKind.INTERVAL:
        return isinstance(cell, Interval)
    if not isinstance(cell, TrapezoidalFuzzy):
        return False
    return kind == CellKind.TRAPEZOID or cell.is_crisp


@dataclass(frozen=True, eq=False)
class RunConfig:
    alpha: float = Config.ALPHA
    rho: float = Config.RHO
    beta: float = Config.BETA
    variant: str = Config.VARIANT
    ahp_matrix: Optional[PairwiseMatrix] = None
    weights: Optional[PriorityVector] = None
    output_format: str = Config.OUTPUT_FORMAT
    audit: bool = False
    slacks: bool = False
    threads: int = Config.THREADS

    def __post_init__(self):
        _check_unit(self.alpha, 'alpha')
        _check_unit(self.rho, 'rho')
        _check_unit(self.beta, 'beta')
        if self.variant not in Variant.ALL_VARIANTS:
            raise ValidationError(f'unknown variant {self.variant!r}')
        if self.output_format not in OutputFormat.ALL_FORMATS:
            raise ValidationError(f'unknown output format {self.output_format!r}')
        if self.variant == Variant.BOUNDED_VRS and self.ahp_matrix is None and self.weights is None:
            raise ValidationError('bounded-vrs requires an AHP matrix or explicit weights')
        if self.threads < 1:
            raise ValidationError('threads must be at least 1')
