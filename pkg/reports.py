import csv
import io
import json
import logging
from datetime import datetime, timezone

import numpy as np
from reportlab.lib import colors
from reportlab.lib.pagesizes import A4, landscape
from reportlab.lib.styles import getSampleStyleSheet, ParagraphStyle
from reportlab.platypus import SimpleDocTemplate, Table, TableStyle, Paragraph, Spacer
from tabulate import tabulate

from config import Config
from models import CellKind, Orientation, OutputFormat, Variant
from datasets import dataset_to_dict
from errors import ValidationError

logger = logging.getLogger(__name__)


def _decimals(decimals):
    return Config.REPORT_DECIMALS if decimals is None else decimals


def _interval_text(lo, hi, decimals):
    return f'[{lo:.{decimals}f}, {hi:.{decimals}f}]'


def _plain(value, decimals):
    if isinstance(value, (float, np.floating)):
        return f'{value:.{decimals}f}'
    return value


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    return value


def _dump_json(payload):
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + '\n'


# Sections are (title, headers, rows); rows hold floats until a format decides how to print them.

def _as_table(sections, decimals, notes=()):
    blocks = []
    for title, headers, rows in sections:
        body = '(empty)'
        if rows:
            body = tabulate(rows, headers=headers, tablefmt='simple', floatfmt=f'.{decimals}f')
        blocks.append(f'{title}\n{body}')
    blocks.extend(notes)
    return '\n\n'.join(blocks) + '\n'


def _as_csv(sections, decimals, notes=()):
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    for index, (title, headers, rows) in enumerate(sections):
        if len(sections) > 1:
            if index:
                writer.writerow([])
            writer.writerow([f'# {title}'])
        writer.writerow(headers)
        for row in rows:
            writer.writerow([_plain(value, decimals) for value in row])
    for note in notes:
        writer.writerow([f'# {note}'])
    return output.getvalue()


def _as_pdf(sections, decimals, subtitle, notes=()):
    buffer = io.BytesIO()
    doc = SimpleDocTemplate(buffer, pagesize=landscape(A4), rightMargin=30, leftMargin=30,
                            topMargin=30, bottomMargin=30)

    elements = []
    styles = getSampleStyleSheet()

    title_style = ParagraphStyle(
        'CustomTitle',
        parent=styles['Heading1'],
        fontSize=18,
        spaceAfter=20,
        alignment=1
    )

    elements.append(Paragraph(Config.APP_TAGLINE, title_style))
    elements.append(Paragraph(subtitle, styles['Normal']))
    elements.append(Paragraph(
        f"Generated: {datetime.now(timezone.utc).strftime('%d %B %Y %H:%M UTC')}", styles['Normal']))
    elements.append(Spacer(1, 20))

    for title, headers, rows in sections:
        elements.append(Paragraph(title, styles['Heading2']))
        data = [list(headers)] + [[str(_plain(value, decimals)) for value in row] for row in rows]
        table = Table(data, repeatRows=1)
        table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), colors.grey),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('ALIGN', (0, 0), (-1, -1), 'CENTER'),
            ('ALIGN', (0, 1), (0, -1), 'LEFT'),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, -1), 9),
            ('BOTTOMPADDING', (0, 0), (-1, 0), 8),
            ('GRID', (0, 0), (-1, -1), 1, colors.black),
        ]))
        elements.append(table)
        elements.append(Spacer(1, 16))

    for note in notes:
        elements.append(Paragraph(note, styles['Italic']))

    doc.build(elements)
    return buffer.getvalue()


def _emit(sections, output_format, decimals, payload, subtitle, notes=()):
    decimals = _decimals(decimals)
    if output_format == OutputFormat.TABLE:
        return _as_table(sections, decimals, notes)
    if output_format == OutputFormat.CSV:
        return _as_csv(sections, decimals, notes)
    if output_format == OutputFormat.JSON:
        return _dump_json(payload)
    if output_format == OutputFormat.PDF:
        return _as_pdf(sections, decimals, subtitle, notes)
    raise ValidationError(f'unknown output format {output_format!r}; '
                          f'choose from {", ".join(OutputFormat.ALL_FORMATS)}')


def _attribute_names(attributes):
    return [a.name if hasattr(a, 'name') else str(a) for a in attributes]


def grade_section(report):
    rows = [
        [g.label, g.optimistic.grade, g.pessimistic.grade, g.compromise, str(g.rank)]
        for g in report.grades
    ]
    return ('Grey relational grades', ['Alternative', 'Optimistic', 'Pessimistic', 'Compromise', 'Rank'],
            rows)


def _attribute_section(dataset):
    rows = [[a.name, Orientation.ORIENTATION_NAMES.get(a.orientation, a.orientation),
             CellKind.KIND_NAMES.get(kind, kind)]
            for a, kind in zip(dataset.attributes, dataset.kinds)]
    return ('Dataset attributes', ['Attribute', 'Orientation', 'Cell kind'], rows)


def _interval_section(title, labels, attributes, grid, decimals):
    rows = [[label] + [_interval_text(cell.lo, cell.hi, decimals) for cell in row]
            for label, row in zip(labels, grid)]
    return (title, ['Alternative'] + attributes, rows)


def _comparability_section(comparability, decimals):
    m, n = comparability.shape
    rows = [[comparability.alternatives[i]] +
            [_interval_text(comparability.lo[i, j], comparability.hi[i, j], decimals) for j in range(n)]
            for i in range(m)]
    return ('Comparability matrix', ['Alternative'] + _attribute_names(comparability.attributes), rows)


def coefficient_section(coefficients, classic=None):
    headers = ['Alternative'] + _attribute_names(coefficients.attributes)
    if classic is not None:
        headers.append('Weighted grade')
    rows = []
    for k, label in enumerate(coefficients.alternatives):
        row = [label] + [float(v) for v in coefficients.row(k)]
        if classic is not None:
            row.append(float(classic[k]))
        rows.append(row)
    return (f'Grey relational coefficients (rho = {coefficients.rho:g})', headers, rows)


def priority_section(priorities):
    labels = priorities.labels or tuple(f'C{j + 1}' for j in range(len(priorities)))
    rows = [[label, float(w)] for label, w in zip(labels, priorities.weights)]
    return ('AHP priorities', ['Attribute', 'Priority'], rows)


def _priority_notes(priorities):
    notes = []
    if priorities.lambda_max is not None:
        notes.append(f'lambda_max = {priorities.lambda_max:.4f}')
    if priorities.consistency_ratio is not None:
        notes.append(f'C.R. = {priorities.consistency_ratio:.4f}')
        if not priorities.is_consistent:
            notes.append(f'warning: C.R. above {Config.CR_WARNING_THRESHOLD}; judgments are inconsistent')
    return notes


def _weight_sections(report, attributes):
    sections = []
    for title, pick in (('Optimistic weights', lambda g: g.optimistic),
                        ('Pessimistic weights', lambda g: g.pessimistic)):
        rows = []
        for grade in report.grades:
            solution = pick(grade)
            rows.append([grade.label] + [float(w) for w in solution.weights] + [solution.intercept])
        sections.append((title, ['Alternative'] + attributes + ['Intercept'], rows))
    return sections


def _slack_sections(report, attributes):
    if not any(g.shortfall is not None for g in report.grades):
        return []
    rows = []
    for grade in report.grades:
        rows.append([grade.label, 'shortfall', grade.shortfall.value] + [float(s) for s in grade.shortfall.slacks])
        rows.append([grade.label, 'excess', grade.excess.value] + [float(s) for s in grade.excess.slacks])
    return [('Slack diagnostics', ['Alternative', 'Side', 'Value'] + attributes, rows)]


def _audit_sections(report, decimals):
    audit = report.audit
    sections = []
    coefficients = audit.coefficients
    attributes = _attribute_names(coefficients.attributes) if coefficients is not None else []
    if audit.intervals is not None:
        sections.append(_interval_section('Alpha-cut intervals', report.alternatives, attributes,
                                          audit.intervals, decimals))
    if audit.comparability is not None:
        sections.append(_comparability_section(audit.comparability, decimals))
    if audit.reference is not None:
        sections.append(('Reference sequence', attributes,
                         [[_interval_text(lo, hi, decimals) for lo, hi in zip(audit.reference.lo,
                                                                              audit.reference.hi)]]))
    if coefficients is not None:
        sections.append(coefficient_section(coefficients, audit.classic_grades))
    if audit.priorities is not None:
        sections.append(priority_section(audit.priorities))
    sections.extend(_weight_sections(report, attributes))
    return sections


def _solution_dict(solution):
    return {'grade': solution.grade, 'weights': solution.weights, 'intercept': solution.intercept}


def _slack_dict(slack):
    if slack is None:
        return None
    return {'value': slack.value, 'lambdas': slack.lambdas, 'slacks': slack.slacks}


def _priority_dict(priorities):
    if priorities is None:
        return None
    return {
        'labels': list(priorities.labels),
        'weights': priorities.weights,
        'lambda_max': priorities.lambda_max,
        'consistency_ratio': priorities.consistency_ratio,
    }


def report_to_dict(report, dataset=None, config=None, audit=False):
    """JSON-ready view of a GradeReport at full precision."""
    payload = {
        'tool': Config.APP_NAME,
        'variant': report.variant,
        'beta': report.beta,
        'flags': list(report.flags),
        'grades': [
            {
                'alternative': g.label,
                'optimistic': _solution_dict(g.optimistic),
                'pessimistic': _solution_dict(g.pessimistic),
                'compromise': g.compromise,
                'rank': g.rank,
                'shortfall': _slack_dict(g.shortfall),
                'excess': _slack_dict(g.excess),
            }
            for g in report.grades
        ],
    }
    if config is not None:
        payload['config'] = {
            'alpha': config.alpha,
            'rho': config.rho,
            'beta': config.beta,
            'variant': config.variant,
            'priorities': _priority_dict(report.audit.priorities),
        }
    if dataset is not None:
        payload['dataset'] = dataset_to_dict(dataset)
    if audit:
        trail = report.audit
        payload['audit'] = {
            'intervals': None if trail.intervals is None else
            [[[cell.lo, cell.hi] for cell in row] for row in trail.intervals],
            'comparability': None if trail.comparability is None else
            {'lo': trail.comparability.lo, 'hi': trail.comparability.hi},
            'reference': None if trail.reference is None else
            {'lo': trail.reference.lo, 'hi': trail.reference.hi},
            'coefficients': None if trail.coefficients is None else trail.coefficients.values,
            'distances': None if trail.coefficients is None else trail.coefficients.distances,
            'classic_grades': trail.classic_grades,
        }
    return payload


def render_report(report, output_format=OutputFormat.TABLE, dataset=None, config=None,
                  audit=False, decimals=None):
    """Render a GradeReport; returns str for text formats and bytes for pdf."""
    decimals = _decimals(decimals)
    sections = [grade_section(report)]
    notes = [f'flag: {flag}' for flag in report.flags]
    if audit:
        if dataset is not None:
            sections.append(_attribute_section(dataset))
        sections.extend(_audit_sections(report, decimals))
        if report.audit.priorities is not None:
            notes = _priority_notes(report.audit.priorities) + notes
    if report.grades:
        attributes = _attribute_names(report.audit.coefficients.attributes) \
            if report.audit.coefficients is not None else []
        sections.extend(_slack_sections(report, attributes))
    subtitle = f'{Variant.VARIANT_NAMES.get(report.variant, report.variant)}, beta = {report.beta:g}'
    if dataset is not None:
        subtitle = f'{dataset.name}: {subtitle}'
    logger.info('rendering %d grades as %s', len(report.grades), output_format)
    return _emit(sections, output_format, decimals,
                 report_to_dict(report, dataset, config, audit), subtitle, notes)


def render_priorities(priorities, output_format=OutputFormat.TABLE, published=None, decimals=None):
    section = priority_section(priorities)
    if published is not None:
        title, headers, rows = section
        section = (title, headers + ['Published'],
                   [row + [float(p)] for row, p in zip(rows, published.weights)])
    payload = {'priorities': _priority_dict(priorities),
               'published': None if published is None else published.weights,
               'iterations': priorities.iterations}
    return _emit([section], output_format, decimals, payload, 'AHP priorities',
                 _priority_notes(priorities))


def render_coefficients(coefficients, output_format=OutputFormat.TABLE, classic=None,
                        reference=None, decimals=None):
    decimals = _decimals(decimals)
    sections = [coefficient_section(coefficients, classic)]
    if reference is not None:
        sections.insert(0, ('Reference sequence', _attribute_names(coefficients.attributes),
                            [[_interval_text(lo, hi, decimals)
                              for lo, hi in zip(reference.lo, reference.hi)]]))
    payload = {
        'alternatives': list(coefficients.alternatives),
        'attributes': _attribute_names(coefficients.attributes),
        'rho': coefficients.rho,
        'delta_min': coefficients.delta_min,
        'delta_max': coefficients.delta_max,
        'coefficients': coefficients.values,
        'classic_grades': classic,
        'reference': None if reference is None else {'lo': reference.lo, 'hi': reference.hi},
    }
    notes = [f'delta_min = {coefficients.delta_min:.{decimals}f}, '
             f'delta_max = {coefficients.delta_max:.{decimals}f}']
    return _emit(sections, output_format, decimals, payload, 'Grey relational coefficients', notes)


def render_lp(solution, output_format=OutputFormat.TABLE, decimals=None):
    rows = []
    if solution.is_optimal:
        rows = [[f'x{j + 1}', float(v)] for j, v in enumerate(solution.x)]
    sections = [('Solution', ['Variable', 'Value'], rows)]
    if solution.is_optimal and solution.duals is not None and solution.duals.size:
        sections.append(('Shadow prices', ['Row', 'Dual'],
                         [[f'r{i + 1}', float(y)] for i, y in enumerate(solution.duals)]))
    notes = [f'status: {solution.status}', f'pivots: {solution.iterations}']
    if solution.is_optimal:
        notes.insert(1, f'objective: {solution.objective:.{_decimals(decimals)}f}')
    payload = {
        'status': solution.status,
        'objective': solution.objective if solution.is_optimal else None,
        'x': solution.x,
        'duals': solution.duals,
        'iterations': solution.iterations,
    }
    return _emit(sections, output_format, decimals, payload, 'Linear program', notes)


def render_beta_sweep(alternatives, rows, output_format=OutputFormat.TABLE, decimals=None):
    """rows are (beta, compromise grades, ranks) as returned by sweep_beta."""
    headers = ['beta'] + list(alternatives)
    grade_rows = [[beta] + [float(v) for v in delta] for beta, delta, _ in rows]
    rank_rows = [[beta] + [str(r) for r in ranks] for beta, _, ranks in rows]
    sections = [('Compromise grade by beta', headers, grade_rows),
                ('Rank by beta', headers, rank_rows)]
    payload = {'alternatives': list(alternatives),
               'sweep': [{'beta': beta, 'compromise': delta, 'ranks': list(ranks)}
                         for beta, delta, ranks in rows]}
    return _emit(sections, output_format, decimals, payload, 'Sensitivity to beta')


def render_rho_sweep(reports, output_format=OutputFormat.TABLE, agreement=None, decimals=None):
    """reports are (rho, GradeReport) pairs as returned by sweep_rho."""
    alternatives = list(reports[0][1].alternatives) if reports else []
    headers = ['rho'] + alternatives
    grade_rows = [[rho] + [float(v) for v in report.compromise] for rho, report in reports]
    rank_rows = [[rho] + [str(r) for r in report.ranks] for rho, report in reports]
    sections = [('Compromise grade by rho', headers, grade_rows),
                ('Rank by rho', headers, rank_rows)]
    notes = []
    if agreement is not None:
        notes.append(f'pairwise rank agreement between the extreme rho values: {agreement:.{_decimals(decimals)}f}')
    payload = {'alternatives': alternatives,
               'agreement': agreement,
               'sweep': [{'rho': rho, 'compromise': report.compromise, 'ranks': list(report.ranks),
                          'flags': list(report.flags)}
                         for rho, report in reports]}
    return _emit(sections, output_format, decimals, payload, 'Sensitivity to rho', notes)
