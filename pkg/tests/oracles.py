"""Independent numerical oracles used to freeze expected test values.

Everything here is deliberately primitive (plain power series, closed
forms, 1-D quadrature) and shares no code path with the package under
test.
"""

import numpy as np


def expm_series(X, terms=60):
    """Matrix exponential by straight power series (small matrices only)."""
    X = np.asarray(X)
    acc = np.eye(X.shape[0], dtype=X.dtype if np.iscomplexobj(X) else float)
    term = acc.copy()
    for k in range(1, terms):
        term = term @ X / k
        acc = acc + term
    return acc


def boost_block(rapidity):
    """Closed-form 2x2 boost block [[cosh, sinh], [sinh, cosh]]."""
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    return np.array([[c, s], [s, c]])


def rotation_block(angle):
    """Closed-form 2x2 rotation block [[cos, sin], [-sin, cos]]."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, s], [-s, c]])


def trapezoid_1d(f, lo, hi, count):
    """Plain 1-D trapezoid rule."""
    x = np.linspace(lo, hi, count)
    y = f(x)
    h = (hi - lo) / (count - 1)
    return h * (y.sum() - 0.5 * (y[0] + y[-1]))
