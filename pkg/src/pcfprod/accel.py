"""Sequence acceleration: Wynn's epsilon algorithm, iterated averaging and
Richardson extrapolation in fractional powers of 1/N."""

from __future__ import annotations

import numpy as np


def wynn_epsilon(partial_sums):
    """Epsilon-algorithm limit of a sequence of partial sums.

    Returns ``(limit, error_estimate)``; the estimate is the spread of the
    last two even-column entries.  Works on complex sequences.
    """
    s = np.asarray(partial_sums, dtype=complex)
    n = s.size
    if n < 3:
        return complex(s[-1]), float(abs(s[-1] - s[-2])) if n == 2 else 0.0
    prev = np.zeros(n + 1, dtype=complex)
    cur = s.copy()
    best = [complex(s[-1])]
    for k in range(1, n):
        diff = cur[1:] - cur[:-1]
        if np.any(diff == 0):
            break
        nxt = prev[1 : cur.size] + 1.0 / diff
        prev, cur = cur, nxt
        if k % 2 == 0:
            if not np.all(np.isfinite(cur)):
                break
            best.append(complex(cur[-1]))
        if cur.size < 2:
            break
    if len(best) < 2:
        return best[-1], float(abs(s[-1] - s[-2]))
    return best[-1], float(abs(best[-1] - best[-2]))


def iterated_average(values, levels):
    """Replace a sequence by ``levels`` rounds of neighbour averaging.

    Removes a (-1)^N component of a slowly varying sequence; the result has
    ``len(values) - levels`` entries.
    """
    v = np.asarray(values, dtype=complex)
    for _ in range(levels):
        v = 0.5 * (v[1:] + v[:-1])
    return v


def richardson_half_powers(ns, values):
    """Extrapolate S(N) = S + c1 N^-1/2 + c2 N^-3/2 + ... to N -> infinity.

    ``ns`` and ``values`` are equal-length; one power is eliminated per
    extra sample.  Returns ``(limit, estimate)`` where the estimate is the
    change against the extrapolation that drops the smallest N.
    """
    ns = np.asarray(ns, dtype=float)
    vals = np.asarray(values, dtype=complex)

    def solve(n_sel, v_sel):
        m = n_sel.size
        powers = [0.0] + [-(2 * k + 1) / 2 for k in range(m - 1)]
        a = np.array([[n**p for p in powers] for n in n_sel])
        return np.linalg.solve(a, v_sel)[0]

    full = solve(ns, vals)
    reduced = solve(ns[1:], vals[1:])
    return complex(full), float(abs(full - reduced))
