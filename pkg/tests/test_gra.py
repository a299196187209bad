import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import PUBLISHED_PRIORITIES, SITES, TABLE_IV
from models import AttributeSpec, ComparabilityMatrix, Interval, Orientation
from errors import DegenerateDataError, DimensionError, DomainError, NormalizationError
from analysis.gra import (build_comparability, classic_grades, distance_matrix, grey_coefficients,
                          normalize, reference_sequence, weighted_grade)
from analysis.pipeline import interval_grid

DESIRABLE = AttributeSpec('civic', Orientation.DESIRABLE)
UNDESIRABLE = AttributeSpec('cost', Orientation.UNDESIRABLE)


def _comparability(lo, hi):
    m, n = lo.shape
    return ComparabilityMatrix(lo, hi, tuple(f'A{i}' for i in range(m)),
                               tuple(AttributeSpec(f'C{j}') for j in range(n)))


@st.composite
def comparability_matrices(draw):
    m = draw(st.integers(min_value=2, max_value=8))
    n = draw(st.integers(min_value=1, max_value=4))
    grid_values = st.integers(min_value=0, max_value=20).map(lambda v: v / 20)
    cells = st.lists(grid_values, min_size=2, max_size=2).map(sorted)
    grid = draw(st.lists(st.lists(cells, min_size=n, max_size=n), min_size=m, max_size=m))
    values = np.array(grid)
    return _comparability(values[:, :, 0], values[:, :, 1])


def test_desirable_normalization_divides_by_largest_upper_value():
    result = normalize([Interval(2, 4), Interval(5, 10)], DESIRABLE)
    assert [r.as_tuple() for r in result] == [(0.2, 0.4), (0.5, 1.0)]


def test_undesirable_normalization_reverses_endpoints():
    result = normalize([Interval(2, 4), Interval(5, 10)], UNDESIRABLE)
    assert result[0].as_tuple() == pytest.approx((0.5, 1.0))
    assert result[1].as_tuple() == pytest.approx((0.2, 0.4))


def test_undesirable_zero_value_cannot_be_normalized():
    with pytest.raises(NormalizationError) as err:
        normalize([Interval(0, 4), Interval(5, 10)], UNDESIRABLE)
    assert err.value.attribute == 'cost'


def test_desirable_all_zero_column_cannot_be_normalized():
    with pytest.raises(NormalizationError):
        normalize([Interval(0, 0), Interval(0, 0)], DESIRABLE)


def test_interval_table_is_already_normalized(interval_dataset):
    grid = interval_grid(interval_dataset, 0.5)
    comparability = build_comparability(grid, interval_dataset.alternatives, interval_dataset.attributes)
    for i, row in enumerate(grid):
        for j, cell in enumerate(row):
            assert comparability.cell(i, j).as_tuple() == pytest.approx(cell.as_tuple())


def test_reference_takes_column_maxima(interval_dataset):
    grid = interval_grid(interval_dataset, 0.5)
    comparability = build_comparability(grid, interval_dataset.alternatives, interval_dataset.attributes)
    reference = reference_sequence(comparability)
    assert reference.entry(0).as_tuple() == pytest.approx((0.85, 1.00))
    assert reference.entry(2).as_tuple() == pytest.approx((0.90, 1.00))


def test_coefficients_reproduce_published_table(coefficients):
    assert coefficients.alternatives == SITES
    for k, site in enumerate(SITES):
        np.testing.assert_allclose(coefficients.row(k), TABLE_IV[site], atol=5e-5, err_msg=site)


def test_coefficient_extremes(coefficients):
    assert coefficients.delta_min == pytest.approx(0.0)
    assert coefficients.delta_max == pytest.approx(0.95)
    assert coefficients.values.max() == pytest.approx(1.0)


def test_rho_zero_with_reference_attaining_cell_is_degenerate(interval_dataset):
    grid = interval_grid(interval_dataset, 0.5)
    comparability = build_comparability(grid, interval_dataset.alternatives, interval_dataset.attributes)
    with pytest.raises(DegenerateDataError):
        grey_coefficients(comparability, reference_sequence(comparability), 0.0)


def test_identical_alternatives_give_unit_coefficients():
    comparability = _comparability(np.full((3, 2), 0.4), np.full((3, 2), 0.6))
    coefficients = grey_coefficients(comparability, reference_sequence(comparability), 0.5)
    np.testing.assert_array_equal(coefficients.values, np.ones((3, 2)))


def test_rho_outside_unit_interval_is_rejected():
    comparability = _comparability(np.array([[0.1], [0.5]]), np.array([[0.2], [0.9]]))
    with pytest.raises(DomainError):
        grey_coefficients(comparability, reference_sequence(comparability), 1.2)


@given(comparability_matrices(), st.floats(min_value=0.01, max_value=1))
@settings(max_examples=100)
def test_coefficients_decrease_with_distance(comparability, rho):
    reference = reference_sequence(comparability)
    distances = distance_matrix(comparability, reference).ravel()
    if distances.max() == 0:
        return
    values = grey_coefficients(comparability, reference, rho).values.ravel()
    assert np.all((values > 0) & (values <= 1 + 1e-12))
    for a in range(values.size):
        for b in range(values.size):
            if distances[a] < distances[b] - 1e-12:
                assert values[a] > values[b]
    attaining = distances == distances.min()
    np.testing.assert_allclose(values[attaining], 1.0)


@given(comparability_matrices(), st.floats(min_value=0.01, max_value=1), st.floats(min_value=0.01, max_value=1))
@settings(max_examples=100)
def test_column_order_does_not_depend_on_rho(comparability, rho_a, rho_b):
    reference = reference_sequence(comparability)
    if distance_matrix(comparability, reference).max() == 0:
        return
    first = grey_coefficients(comparability, reference, rho_a).values
    second = grey_coefficients(comparability, reference, rho_b).values
    for j in range(first.shape[1]):
        for a in range(first.shape[0]):
            for b in range(first.shape[0]):
                if first[a, j] > first[b, j] + 1e-9:
                    assert second[a, j] >= second[b, j]


def test_normalization_is_idempotent(rng):
    for _ in range(50):
        spec = DESIRABLE if rng.random() < 0.5 else UNDESIRABLE
        lo = rng.uniform(0.5, 20, size=6)
        column = [Interval(a, a + w) for a, w in zip(lo, rng.uniform(0, 5, size=6))]
        once = normalize(column, spec)
        twice = normalize(once, DESIRABLE)
        for a, b in zip(once, twice):
            assert a.as_tuple() == pytest.approx(b.as_tuple())


def test_equal_weights_average_the_row(coefficients):
    assert weighted_grade(coefficients.row(0), np.full(4, 0.25)) == pytest.approx(0.62785, abs=5e-5)


def test_priority_weights_on_wells(coefficients):
    wells = SITES.index('Wells')
    grade = weighted_grade(coefficients.row(wells), np.array(PUBLISHED_PRIORITIES))
    assert grade == pytest.approx(0.863957, abs=5e-5)


def test_one_hot_weight_picks_the_coefficient(coefficients):
    for j in range(4):
        w = np.zeros(4)
        w[j] = 1.0
        assert weighted_grade(coefficients.row(3), w) == pytest.approx(coefficients.values[3, j])


def test_weight_length_must_match_row(coefficients):
    with pytest.raises(DimensionError):
        weighted_grade(coefficients.row(0), np.ones(3) / 3)


def test_classic_grades_stay_in_unit_interval(coefficients):
    grades = classic_grades(coefficients, np.array(PUBLISHED_PRIORITIES) / sum(PUBLISHED_PRIORITIES))
    assert grades.shape == (12,)
    assert np.all((grades > 0) & (grades <= 1))
    assert SITES[int(np.argmax(grades))] == 'Wells'
