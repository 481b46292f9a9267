"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np


def coth(x):
    return 1.0 / np.tanh(x)


def h_closed(ys):
    """Transcribed closed forms of h_0..h_6 at accumulated arguments."""
    r = len(ys)
    c = [coth(y) for y in ys]
    if r == 0:
        return 1.0
    if r == 1:
        return c[0]
    if r == 2:
        return c[0] * c[1] - 1 / 3
    if r == 3:
        return c[0] * c[1] * c[2] - (c[0] + c[2]) / 3
    if r == 4:
        c1, c2, c3, c4 = c
        return c1 * c2 * c3 * c4 - (c1 * c4 + c3 * c4 + c1 * c2) / 3 + 2 / 15
    if r == 5:
        c1, c2, c3, c4, c5 = c
        return (c1 * c2 * c3 * c4 * c5
                - (c1 * c4 * c5 + c3 * c4 * c5 + c1 * c2 * c5 + c1 * c2 * c3) / 3
                + 2 / 15 * (c1 + c5) + c3 / 9)
    if r == 6:
        c1, c2, c3, c4, c5, c6 = c
        return (c1 * c2 * c3 * c4 * c5 * c6
                - (c1 * c4 * c5 * c6 + c3 * c4 * c5 * c6 + c1 * c2 * c3 * c4
                   + c1 * c2 * c5 * c6 + c1 * c2 * c3 * c6) / 3
                + (c1 * c4 + c3 * c4 + c3 * c6) / 9
                + 2 / 15 * (c5 * c6 + c1 * c6 + c1 * c2)
                - 17 / 315)
    raise ValueError("closed forms transcribed only up to r = 6")


def f_closed(L):
    return h_closed(np.cumsum(L))


def s_float(n):
    """sinh z cosh z / z = sinh(2z)/(2z): coefficient 2^n/(n+1)! for even n."""
    return 0.0 if n % 2 else 2.0**n / math.factorial(n + 1)


def g_literal(L):
    """G_{N+1} from the sum over split points with F-type brackets.

    sinh(sum L) G_{N+1} = s_N sum L
        + sum_r [A_r coth A_r - B_r coth B_r] f_{r-1}(-L_r..-L_2) f_{N-r}(L_{r+1}..L_N)
    with A_r = L_1+..+L_r and B_r = L_{r+1}+..+L_{N+1}.
    """
    L = [float(x) for x in L]
    n = len(L) - 1
    if n == 0:
        return L[0] / math.sinh(L[0])
    total = s_float(n) * sum(L)
    for r in range(1, n + 1):
        a = sum(L[:r])
        b = sum(L[r:])
        left = f_closed([-x for x in L[1:r][::-1]])
        right = f_closed(L[r:n])
        total += (a * coth(a) - b * coth(b)) * left * right
    return total / math.sinh(sum(L))


def shuffles_brute(n, m):
    """Interleavings found by filtering all of S_n."""
    out = []
    for p in permutations(range(1, n + 1)):
        a = [x for x in p if x <= m]
        b = [x for x in p if x > m]
        if a == sorted(a) and b == sorted(b):
            out.append(p)
    return sorted(out)


def taylor_by_derivatives(fn_coeffs_name, order):
    """Reference coefficients via sympy-free recurrences on Bernoulli numbers."""
    # tanh z / z = sum_{k>=1} 2^{2k}(2^{2k}-1) B_{2k} z^{2k-2} / (2k)!
    bern = _bernoulli(order + 2)
    out = [Fraction(0)] * (order + 1)
    for k in range(1, order // 2 + 2):
        idx = 2 * k - 2
        if idx <= order:
            coef = Fraction(2 ** (2 * k) * (2 ** (2 * k) - 1)) * bern[2 * k] / math.factorial(2 * k)
            out[idx] = coef
    if fn_coeffs_name == "t":
        return out
    if fn_coeffs_name == "T":
        # z coth z = sum_k 2^{2k} B_{2k} z^{2k} / (2k)!
        return [Fraction(2**k) * bern[k] / math.factorial(k) if k % 2 == 0 else Fraction(0)
                for k in range(order + 1)]
    raise ValueError(fn_coeffs_name)


def _bernoulli(n):
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        b[m] = -sum(math.comb(m + 1, k) * b[k] for k in range(m)) / Fraction(m + 1)
    return b


def rand_regular(rng, n, margin=0.2):
    while True:
        L = rng.uniform(-2, 2, n)
        p = np.concatenate(([0.0], np.cumsum(L)))
        if n == 0 or min(abs(p[j] - p[i]) for i, j in combinations(range(n + 1), 2)) >= margin:
            return L
