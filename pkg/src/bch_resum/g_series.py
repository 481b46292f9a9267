"""Coefficient functions G_N of the resummed BCH series and their identities.

Three independent routes to G_N are provided:

``g_perm``
    sinh(L_1 + ... + L_N) G_N = P_N h_{N-1} L_1, i.e. a signed sum of
    2^(N-1) brackets over permuted arguments.
``g_original``
    The product-of-three-f form, split into a half ``E_{N-1}`` and its
    reversed copy.
``g_overcomplete``
    The form in N+1 "eigenvalue" variables x_0..x_N whose successive
    differences are the arguments.

The ``check_*``/``*_relation``/``*_residual`` functions return an
:class:`IdentityReport`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import hyper_eval as hx
from .errors import NearSingular
from .exact_series import float_coeffs
from .hyper_eval import ArgTuple, require_regular
from .perm_algebra import expand_P, marching

REPRESENTATIONS = ("perm", "orig", "over")


@dataclass
class IdentityReport:
    identity: str
    n: int
    inputs: list[float]
    residual: float
    tolerance: float
    trial: int = 0
    seed: int | None = None
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        self.residual = float(self.residual)
        self.passed = bool(abs(self.residual) <= self.tolerance)

    def to_dict(self) -> dict:
        # fixed key order for byte-stable JSON
        return {
            "identity": self.identity,
            "n": self.n,
            "trial": self.trial,
            "seed": self.seed,
            "inputs": [float(x) for x in self.inputs],
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _tuple(t: ArgTuple | Sequence[float]) -> ArgTuple:
    return t if isinstance(t, ArgTuple) else ArgTuple(tuple(t))


@lru_cache(maxsize=None)
def _p_terms(n: int) -> tuple[tuple[np.ndarray, int], ...]:
    """(zero-based index map, coefficient) pairs of P_n."""
    return tuple((np.asarray(m) - 1, c) for m, c in expand_P(n).canonical())


@lru_cache(maxsize=None)
def _p_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """P_n as a (terms, n) index array and a coefficient vector."""
    terms = _p_terms(n)
    return np.stack([idx for idx, _ in terms]), np.array([c for _, c in terms], dtype=float)


# ---------------------------------------------------------------------------
# permutation representation


def perm_numerator_batch(L):
    """P_N h_{N-1} L_1 over the last axis of ``L`` (N >= 1, no guards)."""
    L = np.asarray(L)
    n = L.shape[-1]
    if n == 1:
        return L[..., 0]
    idx, coef = _p_arrays(n)
    # all 2^(n-1) brackets at once: shape (..., terms)
    return hx.bracket_batch(L[..., idx[:, : n - 1]]) @ coef


def g_perm_batch(L):
    L = np.asarray(L)
    if L.shape[-1] == 1:
        return hx.g1_batch(L[..., 0])
    return perm_numerator_batch(L) / np.sinh(L.sum(axis=-1))


def g_perm(t: ArgTuple | Sequence[float], regularized: bool = False) -> float:
    """G_N by the permutation representation."""
    t = _tuple(t)
    if len(t) == 0:
        raise ValueError("G_N needs N >= 1")
    if regularized:
        return float(g_regularized(np.asarray(t.args)))
    if len(t) == 1:
        return hx.g1(t[0])
    require_regular(t)
    return float(g_perm_batch(np.asarray(t.args)))


def perm_numerator(t: ArgTuple | Sequence[float]) -> float:
    t = _tuple(t)
    require_regular(t)
    return float(perm_numerator_batch(np.asarray(t.args)))


def h_perm(t: ArgTuple | Sequence[float]) -> float:
    """H_N = P_N h_N L_1 with an arity-N permutation sum on an N-bracket."""
    t = _tuple(t)
    n = len(t)
    if n == 0:
        raise ValueError("H_0 is not a finite quantity")
    require_regular(t)
    idx, coef = _p_arrays(n)
    return float(hx.bracket_batch(np.asarray(t.args)[idx]) @ coef)


# ---------------------------------------------------------------------------
# regularised evaluation at singular real points

CIRCLE_POINTS = 48
_RADII = np.linspace(0.5, 1.5, 11)


def g_regularized(L, points: int = CIRCLE_POINTS):
    """G_N at arbitrary real arguments via a mean over a complex circle.

    G_N is analytic near the real axis even where individual brackets blow
    up, so G(L) equals the average of G(L + delta * v) over a circle of
    offsets delta.  The direction ``v`` has equal positive entries summing to
    one, which keeps every contiguous sum of ``v`` nonzero; the radius is
    picked from ``_RADII`` to stay as far as possible from the real poles of
    the individual brackets.  Works on a batch over leading axes.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[-1]
    if n == 1:
        return hx.g1_batch(L[..., 0])
    v = np.full(n, 1.0 / n)
    flat = L.reshape(-1, n)
    # poles of bracket pieces sit at delta = -S(L)/S(v) for each contiguous sum
    sl = np.stack([hx.contiguous_sums(row) for row in flat])
    sv = hx.contiguous_sums(v)
    poles = np.abs(sl / sv)
    dist = np.abs(poles[:, :, None] - _RADII[None, None, :]).min(axis=1)
    rho = _RADII[np.argmax(dist, axis=1)]
    theta = np.pi * (2 * np.arange(points) + 1) / points
    delta = rho[:, None] * np.exp(1j * theta)[None, :]
    shifted = flat[:, None, :] + delta[:, :, None] * v
    vals = g_perm_batch(shifted).mean(axis=1).real
    return vals.reshape(L.shape[:-1])


# ---------------------------------------------------------------------------
# original representation


def _f(args: Sequence[float]) -> float:
    return float(hx.h_batch(np.cumsum(np.asarray(args, dtype=float))))


def e_original(args: Sequence[float]) -> float:
    """E_N(L_1..L_N), N >= 1, including the linear piece Delta_N."""
    args = [float(a) for a in args]
    n = len(args)
    if n == 0:
        raise ValueError("E_0 depends on L_1; use g_original for N = 1")
    total = 0.0
    prefix = 0.0
    for r in range(1, n + 1):
        prefix += args[r - 1]
        left = _f(args[1:r][::-1])  # f_{r-1}(L_r, ..., L_2)
        right = _f(args[r:])  # f_{N-r}(L_{r+1}, ..., L_N)
        total += (-1) ** (r - 1) * prefix * left * hx.coth_batch(prefix) * right
    s_n = float_coeffs("s", n)[n]
    return total + 0.5 * s_n * (args[0] + prefix)


def g_original(t: ArgTuple | Sequence[float]) -> float:
    """G_N from E_{N-1} and its reversed copy over L_N..L_2."""
    t = _tuple(t)
    n = len(t)
    if n == 0:
        raise ValueError("G_N needs N >= 1")
    if n == 1:
        # E_0 = L_1 / 2 in both halves
        return hx.g1(t[0])
    require_regular(t)
    forward = e_original(t.args[: n - 1])
    backward = e_original(t.args[:0:-1])
    return (forward - (-1) ** n * backward) / math.sinh(t.total)


# ---------------------------------------------------------------------------
# overcomplete representation


def g_overcomplete(xs: Sequence[float]) -> float:
    """G_N(x_1 - x_0, ..., x_N - x_{N-1}) from the N+1 values x_0..x_N."""
    x = np.asarray(xs, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two x values")
    hx._check_magnitude(list(x))
    diffs = np.abs(x[:, None] - x[None, :])[np.triu_indices(x.size, k=1)]
    if diffs.min() < hx.DELTA_REGULAR:
        raise NearSingular(f"x values closer than {hx.DELTA_REGULAR}")
    m = x.size - 2  # result is G_{m+1}
    x0, xe = x[0], x[-1]
    g1 = hx.g1
    h = lambda ys: float(hx.h_batch(np.asarray(ys)))  # noqa: E731
    inner = x[1:-1]
    out = xe / (xe - x0) * g1(x0 - xe) * h(inner - xe)
    out -= x0 / (xe - x0) * h(inner - x0) * g1(xe - x0)
    for r in range(1, m + 1):
        xr = x[r]
        # x_r^2 / x_r written as x_r so that x_r = 0 is harmless
        out += (
            xr
            / ((xr - x0) * (xe - xr))
            * g1(x0 - xr)
            * h(x[1:r] - xr)
            * h(x[r + 1 : -1] - xr)
            * g1(xe - xr)
        )
    return float(out)


def x_values(t: ArgTuple | Sequence[float], x0: float = 0.0) -> list[float]:
    """x_0..x_N with successive differences equal to ``t``."""
    t = _tuple(t)
    return [x0] + [x0 + p for p in t.prefix]


def g_eval(rep: str, t: ArgTuple | Sequence[float]) -> float:
    if rep == "perm":
        return g_perm(t)
    if rep == "orig":
        return g_original(t)
    if rep == "over":
        return g_overcomplete(x_values(t))
    raise ValueError(f"unknown representation {rep!r}; expected one of {REPRESENTATIONS}")


# ---------------------------------------------------------------------------
# identity checks


def identity_52_rhs(args: Sequence[float]) -> float:
    args = [float(a) for a in args]
    n = len(args)
    total = _f(args)
    prefix = 0.0
    for r in range(1, n + 1):
        prefix += args[r - 1]
        total += (-1) ** r * _f(args[1:r][::-1]) * hx.coth_batch(prefix) * _f(args[r:])
    return float(total)


def check_identity_52(t: ArgTuple | Sequence[float], n: int | None = None, tol: float = 1e-11) -> IdentityReport:
    """s_N = f_N + sum_r (-1)^r f_{r-1}(L_r..L_2) f_1(L_1+..+L_r) f_{N-r}(L_{r+1}..L_N)."""
    t = _tuple(t)
    n = len(t) if n is None else n
    t = t.window(0, n)
    if n:
        require_regular(t)
    s_n = float_coeffs("s", n)[n]
    return IdentityReport("52", n, list(t.args), abs(s_n - identity_52_rhs(t.args)), tol)


def marching_residual(alphas: Sequence[float], betas: Sequence[float], tol: float = 1e-10) -> IdentityReport:
    """|sum of G_N over all order-preserving interleavings of the two blocks|."""
    m = len(alphas)
    n = m + len(betas)
    if m < 1 or len(betas) < 1:
        raise ValueError("both blocks must be nonempty")
    base = np.asarray(list(alphas) + list(betas), dtype=float)
    total = 0.0
    for mp, c in marching(n, m).canonical():
        arranged = ArgTuple(tuple(base[np.asarray(mp) - 1]))
        total += c * g_perm(arranged)
    return IdentityReport(f"marching_{m}", n, base.tolist(), abs(total), tol)


def jk_sums(t: ArgTuple | Sequence[float], n: int | None = None) -> tuple[float, float, float]:
    """(J_N, K_N, W-sum) with the raising-operator shifts realised as windows.

    J_N = -sum_m (L_1+..+L_m) h~_m (-1)^m h_{N-m}[L_{m+1}..L_N]
    K_N =  sum_m (-1)^m h~_m (L_{m+1}+..+L_N) h_{N-m}[L_{m+1}..L_N]
    with h~_m = h_m(L_m, L_m+L_{m-1}, ..., L_m+..+L_1).
    """
    t = _tuple(t)
    n = len(t) if n is None else n
    args = list(t.args[:n])
    j = k = w = 0.0
    for m in range(n + 1):
        head = args[:m]
        tail = args[m:]
        core = (-1) ** m * _f(head[::-1]) * _f(tail)
        j -= sum(head) * core
        k += sum(tail) * core
        w += core
    return j, k, w


def jk_relation(t: ArgTuple | Sequence[float], n: int | None = None, tol: float = 1e-11) -> IdentityReport:
    t = _tuple(t)
    n = len(t) if n is None else n
    t = t.window(0, n)
    if n:
        require_regular(t)
    j, k, _ = jk_sums(t)
    w_n = float_coeffs("W", n)[n]
    return IdentityReport("jk", n, list(t.args), abs(k - j - w_n * sum(t.args)), tol)


def x_extra(t: ArgTuple | Sequence[float]) -> float:
    """X_N = E_N - H_N at (L_1..L_N)."""
    t = _tuple(t)
    require_regular(t)
    return e_original(t.args) - h_perm(t)


def x_reversal(t: ArgTuple | Sequence[float], tol: float = 1e-11) -> IdentityReport:
    """|X_N(L_1..L_N) - (-1)^(N+1) X_N(L_{N+1}..L_2)| over an (N+1)-tuple."""
    t = _tuple(t)
    n = len(t) - 1
    if n < 1:
        raise ValueError("need an (N+1)-tuple with N >= 1")
    require_regular(t)
    fwd = x_extra(t.window(0, n))
    bwd = x_extra(ArgTuple(t.args[:0:-1]))
    return IdentityReport("x_reversal", n, list(t.args), abs(fwd - (-1) ** (n + 1) * bwd), tol)


# ---------------------------------------------------------------------------
# denominator analogue


def rational_bracket(xs: Sequence[float]) -> float:
    """[x_1 ... x_n] = x_1 / (x_1 (x_1+x_2) ... (x_1+...+x_n))."""
    p = np.cumsum(np.asarray(xs, dtype=float))
    return float(xs[0] / np.prod(p))


def denominator_partition(xs: Sequence[float]) -> tuple[float, list[float]]:
    """D_N and the per-r pieces x_r D_{N,r} from the partition double sum."""
    x = [float(v) for v in xs]
    n = len(x)
    pieces = []
    for r in range(1, n + 1):
        d = 0.0
        for i in range(r, n + 1):
            # 1/x_i 1/(x_{i-1}+x_i) ... 1/(x_1+..+x_i)
            left = 1.0 / np.prod(np.cumsum(x[:i][::-1]))
            right = 1.0 / np.prod(np.cumsum(x[i:])) if i < n else 1.0
            d += (-1) ** (i - r) * left * right
        pieces.append(x[r - 1] * d)
    total = sum((-1) ** (r - 1) * pieces[r - 1] for r in range(1, n + 1))
    return total, pieces


def denominator_perm_sum(xs: Sequence[float]) -> float:
    x = np.asarray(xs, dtype=float)
    return sum(c * rational_bracket(x[idx]) for idx, c in _p_terms(len(x)))


def denominator_check(xs: Sequence[float], tol: float = 1e-11) -> IdentityReport:
    x = [float(v) for v in xs]
    if not x:
        raise ValueError("need at least one x")
    m = ArgTuple(tuple(x)).min_contiguous()
    if m < hx.DELTA_REGULAR:
        raise NearSingular(f"contiguous sum of magnitude {m:.3g}")
    d_n, _ = denominator_partition(x)
    return IdentityReport("denominator", len(x), x, abs(d_n - denominator_perm_sum(x)), tol)


# ---------------------------------------------------------------------------
# samplers

SAMPLE_RANGE = 2.0
SAMPLE_MARGIN = 0.2


def sample_regular(rng: np.random.Generator, n: int, margin: float = SAMPLE_MARGIN,
                   max_tries: int = 100_000) -> np.ndarray:
    """Uniform draw on [-2, 2]^n with every contiguous sum at least ``margin``."""
    for _ in range(max_tries):
        L = rng.uniform(-SAMPLE_RANGE, SAMPLE_RANGE, n)
        if n == 0 or ArgTuple(tuple(L)).min_contiguous() >= margin:
            return L
    raise RuntimeError(f"no regular {n}-tuple found with margin {margin}")


def sample_marching(rng: np.random.Generator, n: int, m: int, margin: float = SAMPLE_MARGIN,
                    max_tries: int = 100_000) -> tuple[np.ndarray, np.ndarray]:
    """(alphas, betas) such that every interleaving is regular with ``margin``."""
    maps = np.array([mp for mp, _ in marching(n, m).canonical()]) - 1
    i, j = np.triu_indices(n + 1, k=1)
    for _ in range(max_tries):
        L = rng.uniform(-SAMPLE_RANGE, SAMPLE_RANGE, n)
        p = np.zeros((len(maps), n + 1))
        p[:, 1:] = np.cumsum(L[maps], axis=1)
        if np.abs(p[:, j] - p[:, i]).min() >= margin:
            return L[:m], L[m:]
    raise RuntimeError(f"no regular marching draw found for ({n}, {m})")
