import logging

import numpy as np

from config import Config
from models import LinearProgram, LpSolution, LpStatus, Relation, Sense
from errors import ConvergenceError, ParseError

logger = logging.getLogger(__name__)


class SimplexSolver:
    """Dense two-phase primal simplex with Bland's anti-cycling rule.

    The program is brought to standard form (maximize, equality rows with
    non-negative right-hand sides, non-negative variables): lower-bounded
    variables are shifted to zero and free variables are split into a
    difference of two non-negative columns.
    """

    def __init__(self, pivot_tol=None, feasibility_tol=None, max_iter=None):
        self.pivot_tol = Config.PIVOT_TOLERANCE if pivot_tol is None else pivot_tol
        self.feasibility_tol = Config.FEASIBILITY_TOLERANCE if feasibility_tol is None else feasibility_tol
        self.max_iter = Config.SIMPLEX_MAX_ITERATIONS if max_iter is None else max_iter

    def solve(self, lp):
        form = _StandardForm(lp)
        T = np.hstack([form.A, form.b[:, None]])
        basis = list(form.initial_basis)
        iterations = 0

        if form.n_artificial:
            phase_one = np.zeros(form.n_cols)
            phase_one[form.artificial] = -1.0
            status, used = self._iterate(T, basis, phase_one, form.n_cols)
            iterations += used
            infeasibility = -float(phase_one[basis] @ T[:, -1])
            if infeasibility > self.feasibility_tol:
                logger.debug('phase one ended with infeasibility %.3g', infeasibility)
                return LpSolution(LpStatus.INFEASIBLE, iterations=iterations)
            self._drive_out_artificials(T, basis, form)

        status, used = self._iterate(T, basis, form.cost, form.first_artificial)
        iterations += used
        if status == LpStatus.UNBOUNDED:
            return LpSolution(LpStatus.UNBOUNDED, iterations=iterations)

        values = np.zeros(form.n_cols)
        values[basis] = T[:, -1]
        x = form.recover(values)
        duals = form.duals(basis)
        objective = float(lp.objective @ x)
        logger.debug('simplex optimal after %d pivots, objective %.10g', iterations, objective)
        return LpSolution(LpStatus.OPTIMAL, objective, x, duals, iterations)

    def _iterate(self, T, basis, cost, n_allowed):
        """Pivot until no allowed column improves the objective."""
        for iteration in range(self.max_iter):
            reduced = cost[basis] @ T[:, :-1] - cost
            in_basis = set(basis)
            entering = next(
                (j for j in range(n_allowed) if reduced[j] < -self.pivot_tol and j not in in_basis),
                None,
            )
            if entering is None:
                return LpStatus.OPTIMAL, iteration
            column = T[:, entering]
            rows = np.flatnonzero(column > self.pivot_tol)
            if rows.size == 0:
                return LpStatus.UNBOUNDED, iteration
            ratios = T[rows, -1] / column[rows]
            best = ratios.min()
            tied = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
            leaving = min(tied, key=lambda r: basis[r])
            _pivot(T, leaving, entering)
            basis[leaving] = entering
        raise ConvergenceError(f'simplex exceeded {self.max_iter} pivots')

    def _drive_out_artificials(self, T, basis, form):
        for row, var in enumerate(basis):
            if var < form.first_artificial:
                continue
            candidates = np.flatnonzero(np.abs(T[row, :form.first_artificial]) > self.pivot_tol)
            if candidates.size:
                _pivot(T, row, int(candidates[0]))
                basis[row] = int(candidates[0])
            # otherwise the row is redundant and its artificial stays basic at zero


def _pivot(T, row, col):
    T[row, :] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and T[r, col] != 0.0:
            T[r, :] -= T[r, col] * T[row, :]
    rhs = T[:, -1]
    rhs[np.abs(rhs) < 1e-13] = 0.0


class _StandardForm:
    def __init__(self, lp):
        self.lp = lp
        m, n = lp.n_rows, lp.n_vars
        shift = np.array([0.0 if b is None else b for b in lp.lower_bounds])

        self.plus = []
        self.minus = {}
        columns = []
        for j, bound in enumerate(lp.lower_bounds):
            self.plus.append(len(columns))
            columns.append(lp.rows[:, j])
            if bound is None:
                self.minus[j] = len(columns)
                columns.append(-lp.rows[:, j])
        structural = np.column_stack(columns) if columns else np.zeros((m, 0))
        self.n_structural = structural.shape[1]
        self.shift = shift

        sign = 1.0 if lp.sense == Sense.MAXIMIZE else -1.0
        self.sense_sign = sign
        cost = np.zeros(self.n_structural)
        for j in range(n):
            cost[self.plus[j]] = sign * lp.objective[j]
            if j in self.minus:
                cost[self.minus[j]] = -sign * lp.objective[j]

        b = lp.rhs - lp.rows @ shift
        relations = list(lp.relations)
        self.flip = np.ones(m)
        for i in range(m):
            if b[i] < 0:
                self.flip[i] = -1.0
                structural[i, :] *= -1.0
                b[i] = -b[i]
                if relations[i] == Relation.LE:
                    relations[i] = Relation.GE
                elif relations[i] == Relation.GE:
                    relations[i] = Relation.LE

        inequality_rows = [i for i in range(m) if relations[i] != Relation.EQ]
        artificial_rows = [i for i in range(m) if relations[i] != Relation.LE]
        n_slack = len(inequality_rows)
        self.n_artificial = len(artificial_rows)
        self.first_artificial = self.n_structural + n_slack
        self.n_cols = self.first_artificial + self.n_artificial
        self.artificial = list(range(self.first_artificial, self.n_cols))

        A = np.zeros((m, self.n_cols))
        A[:, :self.n_structural] = structural
        basis = [None] * m
        for k, i in enumerate(inequality_rows):
            col = self.n_structural + k
            A[i, col] = 1.0 if relations[i] == Relation.LE else -1.0
            if relations[i] == Relation.LE:
                basis[i] = col
        for k, i in enumerate(artificial_rows):
            col = self.first_artificial + k
            A[i, col] = 1.0
            basis[i] = col

        self.A = A
        self.b = b
        self.cost = np.concatenate([cost, np.zeros(self.n_cols - self.n_structural)])
        self.initial_basis = basis

    def recover(self, values):
        x = np.empty(self.lp.n_vars)
        for j in range(self.lp.n_vars):
            v = max(values[self.plus[j]], 0.0)
            if j in self.minus:
                v -= max(values[self.minus[j]], 0.0)
            x[j] = v + self.shift[j]
        return x

    def duals(self, basis):
        """Shadow prices d(objective)/d(rhs) in the program's own sense."""
        if not basis:
            return np.zeros(0)
        B = self.A[:, basis]
        c_B = self.cost[basis]
        try:
            y = np.linalg.solve(B.T, c_B)
        except np.linalg.LinAlgError:
            y = np.linalg.lstsq(B.T, c_B, rcond=None)[0]
        return self.sense_sign * self.flip * y


_default_solver = SimplexSolver()


def solve(lp):
    return _default_solver.solve(lp)


def parse_lp_text(text):
    """Read the plain LP format used by the `lp` command.

    First line `max` or `min`, second line the objective coefficients, then
    one constraint per line (`a1 a2 ... <= b`, `=` or `>=`). Optional
    `free i j ...` and `lower i value` lines (1-based indices) set bounds;
    every other variable is >= 0. `#` starts a comment, `end` stops reading.
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split('#', 1)[0].strip()
        if stripped:
            lines.append((number, stripped))
    if len(lines) < 2:
        raise ParseError('an LP needs a sense line and an objective line')

    number, sense = lines[0]
    sense = sense.lower()
    if sense not in Sense.ALL_SENSES:
        raise ParseError(f"first line must be 'max' or 'min', got {sense!r}", line=number, column=1)
    number, objective_line = lines[1]
    objective = _parse_numbers(objective_line, number)
    n = len(objective)

    rows, relations, rhs = [], [], []
    lower = [0.0] * n
    for number, line in lines[2:]:
        keyword = line.split()[0].lower()
        if keyword == 'end':
            break
        if keyword == 'free':
            for index in _parse_indices(line.split()[1:], n, number):
                lower[index] = None
            continue
        if keyword == 'lower':
            parts = line.split()
            if len(parts) != 3:
                raise ParseError("expected 'lower <index> <value>'", line=number)
            index = _parse_indices(parts[1:2], n, number)[0]
            lower[index] = _parse_numbers(parts[2], number)[0]
            continue
        relation = next((r for r in (Relation.LE, Relation.GE, Relation.EQ) if r in line), None)
        if relation is None:
            raise ParseError('constraint must contain <=, >= or =', line=number)
        left, right = line.split(relation, 1)
        coefficients = _parse_numbers(left, number)
        if len(coefficients) != n:
            raise ParseError(f'constraint has {len(coefficients)} coefficients, expected {n}', line=number)
        rows.append(coefficients)
        relations.append(relation)
        rhs.append(_parse_numbers(right, number)[0])

    return LinearProgram(sense, np.array(objective), np.array(rows, dtype=float).reshape(len(rows), n),
                         tuple(relations), np.array(rhs, dtype=float), tuple(lower))


def _parse_numbers(text, line):
    values = []
    position = 0
    for token in text.split():
        position = text.find(token, position)
        try:
            values.append(float(token))
        except ValueError:
            raise ParseError(f'not a number: {token!r}', line=line, column=position + 1) from None
        position += len(token)
    if not values:
        raise ParseError('expected numbers', line=line)
    return values


def _parse_indices(tokens, n, line):
    indices = []
    for token in tokens:
        if not token.isdigit() or not (1 <= int(token) <= n):
            raise ParseError(f'variable index must be in 1..{n}, got {token!r}', line=line)
        indices.append(int(token) - 1)
    return indices
