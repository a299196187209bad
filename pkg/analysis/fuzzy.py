from models import Interval, TrapezoidalFuzzy
from errors import DomainError, ValidationError


def alpha_cut(f, alpha):
    """Reduce a trapezoidal fuzzy number to the interval it spans at level alpha."""
    if not isinstance(f, TrapezoidalFuzzy):
        raise ValidationError(f'alpha_cut expects a TrapezoidalFuzzy, got {type(f).__name__}')
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f'alpha must lie in [0, 1], got {alpha!r}')
    lo = alpha * f.y2 + (1 - alpha) * f.y1
    hi = alpha * f.y3 + (1 - alpha) * f.y4
    # rounding can push a crisp value's endpoints apart by one ulp
    if lo > hi:
        lo = hi = (lo + hi) / 2
    return Interval(lo, hi)


def interval_distance(a, b):
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def cut_cell(cell, alpha):
    if isinstance(cell, Interval):
        return cell
    return alpha_cut(cell, alpha)
