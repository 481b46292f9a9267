"""Numeric evaluation of the hyperbolic kernel functions.

Public evaluators take real arguments and refuse near-singular input with
:class:`~bch_resum.errors.NearSingular`.  The ``_batch`` kernels underneath
work on numpy arrays with any leading batch shape and accept complex input;
they perform no domain checks and are used by the G_N evaluators and the
matrix series, which do their own guarding.

Naming: ``h_r`` takes accumulated arguments ``(y_1, ..., y_r)`` while ``f_r``
takes increments ``(L_1, ..., L_r)`` with ``y_k = L_1 + ... + L_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ArgumentOverflow, NearSingular
from .exact_series import float_coeffs

DELTA_SINGULAR = 1e-8
DELTA_REGULAR = 1e-6
G1_TAYLOR_CUTOFF = 1e-4
MAX_ARG = 350.0


@dataclass(frozen=True)
class ArgTuple:
    """Ordered real arguments ``(L_1, ..., L_N)``."""

    args: tuple[float, ...]
    prefix: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(float(a) for a in self.args))
        object.__setattr__(self, "prefix", tuple(np.cumsum(self.args).tolist()))

    @classmethod
    def of(cls, *args: float) -> ArgTuple:
        return cls(tuple(args))

    def __len__(self) -> int:
        return len(self.args)

    def __getitem__(self, k):
        return self.args[k]

    @property
    def total(self) -> float:
        return self.prefix[-1] if self.args else 0.0

    def contiguous_sums(self) -> np.ndarray:
        """All sums ``L_i + ... + L_j`` for ``1 <= i <= j <= N``."""
        return contiguous_sums(self.args)

    def min_contiguous(self) -> float:
        if not self.args:
            return math.inf
        return float(np.min(np.abs(self.contiguous_sums())))

    def is_regular(self, delta: float = DELTA_REGULAR) -> bool:
        return self.min_contiguous() >= delta

    def reversed(self) -> ArgTuple:
        return ArgTuple(self.args[::-1])

    def window(self, start: int, stop: int) -> ArgTuple:
        """Zero-based slice ``args[start:stop]``."""
        return ArgTuple(self.args[start:stop])


def contiguous_sums(args: Sequence[float]) -> np.ndarray:
    p = np.concatenate(([0.0], np.cumsum(np.asarray(args, dtype=float))))
    i, j = np.triu_indices(len(p), k=1)
    return p[j] - p[i]


def _as_tuple(t: ArgTuple | Sequence[float]) -> ArgTuple:
    return t if isinstance(t, ArgTuple) else ArgTuple(tuple(t))


def _check_magnitude(values: Sequence[float]) -> None:
    for v in values:
        if not math.isfinite(v) or abs(v) > MAX_ARG:
            raise ArgumentOverflow(f"|{v}| exceeds the argument cap {MAX_ARG}")


def _check_poles(values: Sequence[float], what: str, delta: float = DELTA_SINGULAR) -> None:
    _check_magnitude(values)
    for v in values:
        if abs(v) < delta:
            raise NearSingular(f"{what} {v!r} is within {delta} of a pole")


def require_regular(t: ArgTuple, delta: float = DELTA_REGULAR) -> None:
    _check_magnitude(t.args)
    m = t.min_contiguous()
    if m < delta:
        raise NearSingular(f"contiguous sum of magnitude {m:.3g} below {delta}")


# ---------------------------------------------------------------------------
# scalar evaluators


def coth_x(x: float) -> float:
    if abs(x) > MAX_ARG:
        raise ArgumentOverflow(f"|{x}| exceeds the argument cap {MAX_ARG}")
    if abs(x) < DELTA_SINGULAR:
        raise NearSingular(f"coth({x!r}) is within {DELTA_SINGULAR} of its pole")
    return math.cosh(x) / math.sinh(x)


def g1(x: float) -> float:
    """x / sinh(x), with the removable point at zero filled in."""
    if abs(x) > MAX_ARG:
        raise ArgumentOverflow(f"|{x}| exceeds the argument cap {MAX_ARG}")
    if abs(x) < G1_TAYLOR_CUTOFF:
        x2 = x * x
        return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0
    return x / math.sinh(x)


def h_eval(cumargs: Sequence[float]) -> float:
    """h_r at accumulated arguments ``(y_1, ..., y_r)``; ``h_0 = 1``."""
    cumargs = [float(c) for c in cumargs]
    _check_poles(cumargs, "accumulated argument")
    return float(h_batch(np.asarray(cumargs)))


def f_eval(t: ArgTuple | Sequence[float]) -> float:
    t = _as_tuple(t)
    require_regular(t)
    return float(h_batch(np.asarray(t.prefix)))


def u_eval(t: ArgTuple | Sequence[float], r: int) -> float:
    """u_r = h_{r-1}(y_1..y_{r-1}) coth(y_r), with ``u_0 = 1``."""
    t = _as_tuple(t)
    if not 0 <= r <= len(t):
        raise ValueError(f"need 0 <= r <= {len(t)}, got {r}")
    if r == 0:
        return 1.0
    _check_poles(t.prefix[:r], "accumulated argument")
    return float(u_batch(np.asarray(t.prefix[:r])))


def bracket(t: ArgTuple | Sequence[float]) -> float:
    """The symbol ``[L_1 ... L_N] = f_N(L_1, ..., L_N) * L_1`` (N >= 1)."""
    t = _as_tuple(t)
    if len(t) == 0:
        raise ValueError("bracket needs at least one argument")
    require_regular(t)
    return float(bracket_batch(np.asarray(t.args)))


def w2_inv(x: float, y: float) -> float:
    """W(x, y)^-1 = G1(x) G1(y) / G1(x - y)."""
    _check_magnitude([x, y, x - y])
    for v, label in ((x, "x"), (y, "y")):
        if abs(v) < DELTA_SINGULAR:
            raise NearSingular(f"{label} = {v!r} is within {DELTA_SINGULAR} of zero")
    return g1(x) * g1(y) / g1(x - y)


# ---------------------------------------------------------------------------
# vectorised kernels (no guards; complex allowed)


def coth_batch(z):
    return 1.0 / np.tanh(z)


def g1_batch(z):
    z = np.asarray(z)
    small = np.abs(z) < G1_TAYLOR_CUTOFF
    safe = np.where(small, 1.0, z)
    z2 = z * z
    return np.where(small, 1.0 - z2 / 6.0 + 7.0 * z2 * z2 / 360.0, safe / np.sinh(safe))


def h_batch(cum):
    """h_r over the last axis of ``cum`` via the right-edge recursion.

    h_m = sum_{q=0}^{m-1} t_q h_{m-q-1}(y_1..y_{m-q-1}) coth(y_{m-q}) + t_m
    """
    cum = np.asarray(cum)
    r = cum.shape[-1]
    batch = cum.shape[:-1]
    if r == 0:
        return np.ones(batch, dtype=cum.dtype if cum.dtype.kind == "c" else float)
    t = float_coeffs("t", r)
    c = coth_batch(cum)
    hs = [np.ones(batch, dtype=c.dtype)]
    for m in range(1, r + 1):
        acc = np.full(batch, t[m], dtype=c.dtype)
        for q in range(0, m, 2):
            acc = acc + t[q] * hs[m - q - 1] * c[..., m - q - 1]
        hs.append(acc)
    return hs[r]


def u_batch(cum):
    cum = np.asarray(cum)
    return h_batch(cum[..., :-1]) * coth_batch(cum[..., -1])


def bracket_batch(args):
    args = np.asarray(args)
    return args[..., 0] * h_batch(np.cumsum(args, axis=-1))
