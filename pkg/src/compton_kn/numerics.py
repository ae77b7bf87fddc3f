"""Small 1-D numerical routines: golden-section minimization and adaptive Simpson."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


class QuadratureError(RuntimeError):
    pass


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10):
    """Minimize a unimodal ``f`` on [a, b].

    Returns ``(x, f(x))`` with the bracket shrunk below ``tol``.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(n):
        # ties move the bracket right, toward the larger angle
        if fc < fd:
            b, d, fd = d, c, fc
            h *= INV_PHI
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h *= INV_PHI
            d = a + INV_PHI * h
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = 1e-9,
    max_depth: int = 60,
    min_depth: int = 6,
) -> float:
    """Integrate ``f`` over [a, b] by recursive Simpson bisection.

    The local error estimate is the usual Richardson one, |S2 - S1| / 15, and
    the tolerance is split evenly between the two halves at each level. The
    absolute tolerance is ``rtol`` times the magnitude of a composite Simpson
    first guess on ``2**min_depth`` panels; no panel coarser than that is ever
    accepted, so narrow peaks cannot slip between the first few nodes.
    Raises QuadratureError when ``max_depth`` is reached without convergence.
    """
    n = 2 ** (min_depth + 1)
    h = (b - a) / n
    ys = [f(a + i * h) for i in range(n + 1)]
    guess = abs(h / 3.0 * (ys[0] + ys[-1] + 4.0 * sum(ys[1:-1:2]) + 2.0 * sum(ys[2:-1:2])))
    tol = rtol * guess if guess > 0 else rtol
    fa, fm, fb = ys[0], ys[n // 2], ys[-1]
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _asr(f, a, b, fa, fm, fb, whole, tol, max_depth, min_depth)


def _asr(f, a, b, fa, fm, fb, whole, tol, depth, min_depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if min_depth <= 0 and abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(f"adaptive Simpson did not converge on [{a}, {b}]")
    return _asr(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, min_depth - 1) + _asr(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, min_depth - 1
    )


def trapezoid(f_vec: Callable, a: float, b: float, n: int = 1_000_001) -> float:
    """Composite trapezoid rule on ``n`` equally spaced nodes; ``f_vec`` takes arrays."""
    x = np.linspace(a, b, n)
    y = f_vec(x)
    h = (b - a) / (n - 1)
    return float(h * (y.sum() - 0.5 * (y[0] + y[-1])))
