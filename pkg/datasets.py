import csv
import json
import logging
import os
from fractions import Fraction

import numpy as np

from models import (AttributeSpec, CellKind, Dataset, Interval, Orientation, PairwiseMatrix,
                    PriorityVector, TrapezoidalFuzzy)
from errors import DataIOError, ParseError, SchemaError, ValidationError

logger = logging.getLogger(__name__)

FIXTURE_FOLDER = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')

DATASET_FIXTURES = {
    'table1-raw': 'table1_raw.csv',
    'table2-intervals': 'table2_intervals.csv',
}

MATRIX_FIXTURES = {
    'table3-ahp': 'table3_ahp.csv',
}

# dataset fixture + AHP fixture whose published priorities drive the run
BUNDLES = {
    'nuclear': ('table2-intervals', 'table3-ahp'),
}

ALL_FIXTURES = sorted([*DATASET_FIXTURES, *MATRIX_FIXTURES, *BUNDLES])


def read_text(path):
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return handle.read()
    except FileNotFoundError:
        raise DataIOError(f'file not found: {path}') from None
    except OSError as err:
        raise DataIOError(f'cannot read {path}: {err}') from None


def _fixture_path(name):
    return os.path.join(FIXTURE_FOLDER, name)


def _is_number(token):
    try:
        _parse_fraction(token)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def _parse_fraction(token):
    return float(Fraction(token.strip()))


def _split_comments(text):
    """Leading '#' lines become the provenance note; returns (note, [(line_number, line)])."""
    notes, rows = [], []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith('#'):
            if not rows:
                notes.append(stripped.lstrip('#').strip())
            continue
        rows.append((number, line))
    return ' '.join(notes), rows


def _csv_fields(line):
    return [field.strip() for field in next(csv.reader([line]))]


def _parse_cell(token, line, column):
    try:
        if '..' in token:
            lo, hi = token.split('..', 1)
            return CellKind.INTERVAL, Interval(float(lo), float(hi))
        if ',' in token:
            parts = [float(p) for p in token.split(',')]
            if len(parts) != 4:
                raise ParseError(f'trapezoid needs 4 values, got {len(parts)}', line=line, column=column)
            return CellKind.TRAPEZOID, TrapezoidalFuzzy(*parts)
        return CellKind.CRISP, TrapezoidalFuzzy.crisp(float(token))
    except ParseError:
        raise
    except ValueError:
        raise ParseError(f'cannot read cell {token!r}', line=line, column=column) from None
    except ValidationError as err:
        raise ParseError(err.message, line=line, column=column) from None


def _attribute_from_header(token, line, column):
    name, _, orientation = token.partition(':')
    orientation = orientation.strip().lower() or Orientation.DESIRABLE
    if orientation not in Orientation.ALL_ORIENTATIONS:
        raise ParseError(f'unknown orientation {orientation!r} for attribute {name!r}',
                         line=line, column=column)
    return AttributeSpec(name.strip(), orientation)


def _merge_kind(kinds, j, kind, label, attribute, line):
    if kinds[j] is None:
        kinds[j] = kind
    elif kinds[j] != kind:
        raise SchemaError(
            f'line {line}: cell ({label}, {attribute.name}) is a {kind} value in a {kinds[j]} column'
        )


def parse_csv_dataset(text, name='dataset'):
    provenance, rows = _split_comments(text)
    if not rows:
        raise SchemaError(f'{name}: no header row')
    header_line, header = rows[0]
    fields = _csv_fields(header)
    if len(fields) < 2:
        raise SchemaError(f'{name}: header needs an alternative column and at least one attribute')
    attributes = tuple(_attribute_from_header(token, header_line, c)
                       for c, token in enumerate(fields[1:], start=2))
    n = len(attributes)

    kinds = [None] * n
    labels, cells = [], []
    for number, line in rows[1:]:
        values = _csv_fields(line)
        if len(values) != n + 1:
            raise SchemaError(
                f'{name}: line {number} (row {values[0]!r}) has {len(values) - 1} cells, expected {n}'
            )
        label = values[0]
        row = []
        for j, token in enumerate(values[1:]):
            kind, cell = _parse_cell(token, number, j + 2)
            _merge_kind(kinds, j, kind, label, attributes[j], number)
            row.append(cell)
        labels.append(label)
        cells.append(tuple(row))
    if not labels:
        raise SchemaError(f'{name}: no alternatives')
    logger.info('loaded %s: %d alternatives x %d attributes', name, len(labels), n)
    return Dataset(name, attributes, tuple(kinds), tuple(labels), tuple(cells), provenance)


def _json_cell(value, where):
    if isinstance(value, bool):
        raise SchemaError(f'{where}: booleans are not attribute values')
    try:
        if isinstance(value, (int, float)):
            return CellKind.CRISP, TrapezoidalFuzzy.crisp(value)
        if isinstance(value, dict) and set(value) == {'lo', 'hi'}:
            return CellKind.INTERVAL, Interval(float(value['lo']), float(value['hi']))
        if isinstance(value, list) and all(isinstance(v, (int, float)) for v in value):
            if len(value) == 2:
                return CellKind.INTERVAL, Interval(float(value[0]), float(value[1]))
            if len(value) == 4:
                return CellKind.TRAPEZOID, TrapezoidalFuzzy(*(float(v) for v in value))
    except (TypeError, ValueError):
        raise SchemaError(f'{where}: cannot read {value!r} as numbers') from None
    except ValidationError as err:
        raise SchemaError(f'{where}: {err.message}') from None
    raise SchemaError(f'{where}: expected a number, [lo, hi] or [y1, y2, y3, y4], got {value!r}')


def parse_json_dataset(payload, name='dataset'):
    if isinstance(payload, str):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as err:
            raise ParseError(err.msg, line=err.lineno, column=err.colno) from None
    if not isinstance(payload, dict):
        raise SchemaError(f'{name}: top level must be an object')
    if 'dataset' in payload and 'alternatives' not in payload:
        payload = payload['dataset']
    if not isinstance(payload, dict):
        raise SchemaError(f'{name}: "dataset" must be an object')
    try:
        attribute_entries = payload['attributes']
        alternative_entries = payload['alternatives']
    except KeyError as err:
        raise SchemaError(f'{name}: missing key {err.args[0]!r}') from None
    for key, entries in (('attributes', attribute_entries), ('alternatives', alternative_entries)):
        if not isinstance(entries, list):
            raise SchemaError(f'{name}: "{key}" must be a list')

    attributes, kinds = [], []
    for index, entry in enumerate(attribute_entries, start=1):
        if isinstance(entry, str):
            entry = {'name': entry}
        if not isinstance(entry, dict) or not isinstance(entry.get('name'), str):
            raise SchemaError(f'{name}: attribute {index} needs a "name" string, got {entry!r}')
        attributes.append(AttributeSpec(entry['name'], entry.get('orientation', Orientation.DESIRABLE)))
        kind = entry.get('kind')
        if kind is not None and kind not in CellKind.ALL_KINDS:
            raise SchemaError(f'{name}: attribute {entry["name"]!r} has unknown kind {kind!r}')
        kinds.append(kind)

    n = len(attributes)
    labels, cells = [], []
    for index, entry in enumerate(alternative_entries, start=1):
        if not isinstance(entry, dict):
            raise SchemaError(f'{name}: alternative {index} must be an object with "name" and "values", '
                              f'got {entry!r}')
        label = str(entry.get('name', f'A{index}'))
        values = entry.get('values', [])
        if not isinstance(values, list):
            raise SchemaError(f'{name}: alternative {label!r} values must be a list')
        if len(values) != n:
            raise SchemaError(f'{name}: alternative {label!r} has {len(values)} values, expected {n}')
        row = []
        for j, value in enumerate(values):
            kind, cell = _json_cell(value, f'{name}: ({label}, {attributes[j].name})')
            if kinds[j] is None:
                kinds[j] = kind
            elif kinds[j] != kind:
                raise SchemaError(
                    f'{name}: cell ({label}, {attributes[j].name}) is a {kind} value '
                    f'in a {kinds[j]} column'
                )
            row.append(cell)
        labels.append(label)
        cells.append(tuple(row))
    return Dataset(payload.get('name', name), tuple(attributes), tuple(kinds), tuple(labels),
                   tuple(cells), payload.get('provenance', ''))


def _cell_to_json(kind, cell):
    if kind == CellKind.CRISP:
        return cell.y1
    if kind == CellKind.INTERVAL:
        return [cell.lo, cell.hi]
    return list(cell.as_tuple())


def dataset_to_dict(dataset):
    return {
        'name': dataset.name,
        'provenance': dataset.provenance,
        'attributes': [
            {'name': a.name, 'orientation': a.orientation, 'kind': kind}
            for a, kind in zip(dataset.attributes, dataset.kinds)
        ],
        'alternatives': [
            {'name': label, 'values': [_cell_to_json(k, c) for k, c in zip(dataset.kinds, row)]}
            for label, row in zip(dataset.alternatives, dataset.cells)
        ],
    }


def load_dataset(source):
    """Load a dataset from a fixture id, a .csv file or a .json file (dataset or report)."""
    if source in BUNDLES:
        source = BUNDLES[source][0]
    if source in DATASET_FIXTURES:
        return parse_csv_dataset(read_text(_fixture_path(DATASET_FIXTURES[source])), source)
    text = read_text(source)
    name = os.path.splitext(os.path.basename(source))[0]
    if source.lower().endswith('.json'):
        return parse_json_dataset(text, name)
    return parse_csv_dataset(text, name)


def _matrix_rows(rows, name):
    """Split CSV rows into labels, a square matrix and an optional priority column."""
    first_line, first = rows[0]
    fields = _csv_fields(first)
    labels = None
    if not all(_is_number(token) for token in fields[1:] or fields):
        labels = fields[1:]
        rows = rows[1:]
    size = len(rows)
    matrix, row_labels, published = [], [], []
    for number, line in rows:
        values = _csv_fields(line)
        if values and not _is_number(values[0]):
            row_labels.append(values[0])
            values = values[1:]
        if len(values) not in (size, size + 1):
            raise SchemaError(f'{name}: line {number} has {len(values)} values for a {size}x{size} matrix')
        numbers = []
        for column, token in enumerate(values, start=1):
            try:
                numbers.append(_parse_fraction(token))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f'not a judgment: {token!r}', line=number, column=column) from None
        matrix.append(numbers[:size])
        if len(numbers) == size + 1:
            published.append(numbers[size])
    if labels is not None:
        labels = labels[:size]
    elif len(row_labels) == size:
        labels = row_labels
    if published and len(published) != size:
        raise SchemaError(f'{name}: priority column is incomplete')
    return labels or (), np.array(matrix), published or None


def parse_pairwise_csv(text, name='matrix'):
    _, rows = _split_comments(text)
    if not rows:
        raise SchemaError(f'{name}: empty pairwise matrix')
    labels, matrix, published = _matrix_rows(rows, name)
    pairwise = PairwiseMatrix(matrix, tuple(labels))
    priorities = PriorityVector.from_weights(published, pairwise.labels) if published else None
    return pairwise, priorities


def parse_pairwise_json(text, name='matrix'):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, line=err.lineno, column=err.colno) from None
    try:
        matrix = [[_parse_fraction(str(v)) for v in row] for row in payload['matrix']]
    except KeyError:
        raise SchemaError(f'{name}: missing key "matrix"') from None
    except (ValueError, ZeroDivisionError) as err:
        raise SchemaError(f'{name}: unreadable judgment ({err})') from None
    pairwise = PairwiseMatrix(np.array(matrix), tuple(payload.get('labels', ())))
    published = payload.get('priorities')
    priorities = PriorityVector.from_weights(published, pairwise.labels) if published else None
    return pairwise, priorities


def load_pairwise(source):
    """Load an AHP matrix; returns (PairwiseMatrix, published PriorityVector or None)."""
    if source in BUNDLES:
        source = BUNDLES[source][1]
    if source in MATRIX_FIXTURES:
        return parse_pairwise_csv(read_text(_fixture_path(MATRIX_FIXTURES[source])), source)
    text = read_text(source)
    name = os.path.splitext(os.path.basename(source))[0]
    if source.lower().endswith('.json'):
        return parse_pairwise_json(text, name)
    return parse_pairwise_csv(text, name)


def load_bundle(name):
    """Dataset plus the published AHP priorities of a bundled fixture."""
    if name not in BUNDLES:
        raise ValidationError(f'unknown fixture {name!r}; choose from {", ".join(sorted(BUNDLES))}')
    dataset = load_dataset(BUNDLES[name][0])
    matrix, published = load_pairwise(BUNDLES[name][1])
    return dataset, matrix, published


def parse_weights(text, labels=()):
    try:
        values = [_parse_fraction(token) for token in text.split(',') if token.strip()]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f'cannot read weights {text!r}') from None
    return PriorityVector.from_weights(values, labels)

