"""Real roots of a monic cubic known to have three real roots."""

from __future__ import annotations

import math


def _poly(b, c, d, x):
    return ((x + b) * x + c) * x + d


def _dpoly(b, c, x):
    return (3.0 * x + 2.0 * b) * x + c


def solve_real_cubic(b, c, d, merge_rel=1e-6):
    """Roots of x^3 + b x^2 + c x + d, ascending.

    Uses the trigonometric form of the depressed cubic, then one Newton step per
    root (kept only if it lowers the residual).  Roots closer than
    ``merge_rel * (1 + max|root|)`` are treated as a double root and replaced by
    the nearby root of the derivative, which is simple and therefore accurate.
    """
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    amp = 2.0 * math.sqrt(-p / 3.0) if p < 0.0 else 0.0
    if p * amp == 0.0:
        # three real roots force p <= 0; p ~ 0 (down to underflow) is a triple root
        t = -math.copysign(abs(q) ** (1.0 / 3.0), q)
        roots = [t - shift] * 3
    else:
        arg = 3.0 * q / (p * amp)
        theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        roots = [amp * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]

    polished = []
    for x in roots:
        f = _poly(b, c, d, x)
        df = _dpoly(b, c, x)
        if df != 0.0:
            x_new = x - f / df
            if abs(_poly(b, c, d, x_new)) < abs(f):
                x = x_new
        polished.append(x)
    roots = sorted(polished)

    scale = 1.0 + max(abs(r) for r in roots)
    tol = merge_rel * scale
    if roots[2] - roots[0] <= tol:
        x = -shift
        return (x, x, x)
    for i in (0, 1):
        if roots[i + 1] - roots[i] <= tol:
            crit = _critical_point_near(b, c, 0.5 * (roots[i] + roots[i + 1]))
            roots[i] = roots[i + 1] = crit
    return tuple(sorted(roots))


def _critical_point_near(b, c, x0):
    # roots of 3x^2 + 2bx + c; pick the one closest to x0
    disc = b * b - 3.0 * c
    if disc < 0.0:
        return x0
    s = math.sqrt(disc)
    # avoid cancellation between -b and s
    qq = -(b + math.copysign(s, b))
    cands = [qq / 3.0]
    if qq != 0.0:
        cands.append(c / qq)
    else:
        cands.append(-qq / 3.0)
    return min(cands, key=lambda r: abs(r - x0))
