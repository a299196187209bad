import numpy as np
import pytest

from models import DeaConfig, Variant
from datasets import load_dataset, load_pairwise
from analysis.pipeline import compute_coefficients

SITES = ('Nome', 'Newark', 'Rock Springs', 'Duquesne', 'Gary', 'Yakima', 'Turkey', 'Wells',
         'Anaheim', 'Epcot', 'Duckwater', 'Santa Cruz')

PUBLISHED_PRIORITIES = (0.131, 0.545, 0.275, 0.05)

# grey relational coefficients at rho = 0.8, columns cost, lives lost, risk, civic
TABLE_IV = {
    'Nome': (0.9383, 0.6281, 0.4578, 0.4872),
    'Newark': (0.4444, 0.4444, 1.0, 1.0),
    'Rock Springs': (0.8352, 0.8352, 0.7917, 0.7917),
    'Duquesne': (0.6847, 0.8352, 0.6032, 0.6032),
    'Gary': (0.6281, 0.5033, 0.7917, 1.0),
    'Yakima': (0.6847, 0.5033, 0.4872, 0.6032),
    'Turkey': (0.8837, 0.5390, 0.4872, 0.7917),
    'Wells': (0.9383, 1.0, 0.6032, 0.6032),
    'Anaheim': (0.4720, 0.4578, 0.4578, 0.4578),
    'Epcot': (0.5033, 0.4720, 1.0, 0.4578),
    'Duckwater': (0.5802, 0.5390, 0.6032, 0.4872),
    'Santa Cruz': (0.5033, 0.5033, 0.4578, 0.4578),
}

# optimistic, pessimistic, compromise (beta = 0.5), rank
BOUNDED_VRS_GRADES = {
    'Nome': (0.7515, 1.1554, 0.3848, 8),
    'Newark': (1.0, 1.0, 0.5, 7),
    'Rock Springs': (1.0, 1.3618, 0.9480, 2),
    'Duquesne': (0.8770, 1.2808, 0.6954, 5),
    'Gary': (1.0, 1.1642, 0.7033, 3),
    'Yakima': (0.6642, 1.0680, 0.1684, 10),
    'Turkey': (1.0, 1.1230, 0.6523, 6),
    'Wells': (1.0, 1.4038, 1.0, 1),
    'Anaheim': (0.5962, 1.0, 0.0, 12),
    'Epcot': (1.0, 1.1609, 0.6992, 4),
    'Duckwater': (0.6960, 1.0999, 0.2474, 9),
    'Santa Cruz': (0.6251, 1.0289, 0.0716, 11),
}

CRS_GRADES = {
    'Nome': (1.0, 1.0, 0.5, 6),
    'Newark': (1.0, 1.0, 0.5, 6),
    'Rock Springs': (1.0, 1.7294, 1.0, 1),
    'Duquesne': (0.8921, 1.3176, 0.5912, 3),
    'Gary': (1.0, 1.1146, 0.5785, 4),
    'Yakima': (0.7855, 1.0642, 0.2926, 7),
    'Turkey': (1.0, 1.0642, 0.5440, 5),
    'Wells': (1.0, 1.3176, 0.7177, 2),
    'Anaheim': (0.5735, 1.0, 0.0, 10),
    'Epcot': (1.0, 1.0, 0.5, 6),
    'Duckwater': (0.7351, 1.0642, 0.2335, 8),
    'Santa Cruz': (0.5943, 1.0, 0.0244, 9),
}


@pytest.fixture
def interval_dataset():
    return load_dataset('table2-intervals')


@pytest.fixture
def raw_dataset():
    return load_dataset('table1-raw')


@pytest.fixture
def pairwise():
    matrix, _ = load_pairwise('table3-ahp')
    return matrix


@pytest.fixture
def published():
    _, priorities = load_pairwise('table3-ahp')
    return priorities


@pytest.fixture
def coefficients(interval_dataset):
    _, _, _, result = compute_coefficients(interval_dataset, 0.5, 0.8)
    return result


@pytest.fixture
def bounded_config(published):
    return DeaConfig(Variant.BOUNDED_VRS, published, 0.5)


@pytest.fixture
def crs_config():
    return DeaConfig(Variant.CRS_UNBOUNDED, None, 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
