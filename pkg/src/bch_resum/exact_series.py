"""Exact rational Taylor coefficients of the hyperbolic generating functions.

All tables are produced from the factorial series of sinh and cosh by exact
long division and convolution over :class:`fractions.Fraction`:

* ``t``: tanh(z)/z
* ``T``: z/tanh(z), the series reciprocal of ``t``
* ``s``: sinh(z)cosh(z)/z
* ``W``: (sinh(z)/z)**2, the convolution of ``t`` and ``s``
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

DEFAULT_ORDER = 64

SERIES_NAMES = ("t", "T", "s", "W")


@dataclass(frozen=True)
class RationalSeries:
    name: str
    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def as_strings(self) -> list[str]:
        """Coefficients as ``p/q`` strings (integers keep a ``/1``)."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    def floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def convolve(a: RationalSeries, b: RationalSeries, name: str | None = None) -> RationalSeries:
    """Cauchy product truncated to the shorter of the two inputs."""
    n = min(len(a), len(b))
    out = [
        sum((a.coeffs[p] * b.coeffs[k - p] for p in range(k + 1)), Fraction(0))
        for k in range(n)
    ]
    return RationalSeries(name or f"{a.name}*{b.name}", tuple(out))


def unit(order: int) -> RationalSeries:
    return RationalSeries("1", (Fraction(1),) + (Fraction(0),) * order)


def _sinh_over_z(order: int) -> list[Fraction]:
    return [Fraction(1, factorial(k + 1)) if k % 2 == 0 else Fraction(0) for k in range(order + 1)]


def _cosh(order: int) -> list[Fraction]:
    return [Fraction(1, factorial(k)) if k % 2 == 0 else Fraction(0) for k in range(order + 1)]


def _divide(num: Sequence[Fraction], den: Sequence[Fraction]) -> list[Fraction]:
    # den[0] must be nonzero; q_k = (num_k - sum_{j<k} q_j den_{k-j}) / den_0
    q: list[Fraction] = []
    for k in range(len(num)):
        acc = num[k] - sum((q[j] * den[k - j] for j in range(k)), Fraction(0))
        q.append(acc / den[0])
    return q


def _mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a[p] * b[k - p] for p in range(k + 1)), Fraction(0)) for k in range(len(a))]


def _build(order: int) -> dict[str, tuple[Fraction, ...]]:
    sz = _sinh_over_z(order)
    ch = _cosh(order)
    t = _divide(sz, ch)
    one = [Fraction(1)] + [Fraction(0)] * order
    big_t = _divide(one, t)
    s = _mul(sz, ch)
    w = _mul(t, s)
    return {"t": tuple(t), "T": tuple(big_t), "s": tuple(s), "W": tuple(w)}


_lock = threading.Lock()
_tables: dict[str, tuple[Fraction, ...]] = {}
_built_order = -1


def _table(name: str, order: int) -> tuple[Fraction, ...]:
    global _tables, _built_order
    if name not in SERIES_NAMES:
        raise KeyError(f"unknown series {name!r}; expected one of {SERIES_NAMES}")
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order > _built_order:
        with _lock:
            if order > _built_order:
                target = max(order, DEFAULT_ORDER)
                # publish the dict only after it is complete
                _tables = _build(target)
                _built_order = target
    return _tables[name][: order + 1]


def series(name: str, order: int) -> RationalSeries:
    return RationalSeries(name, _table(name, order))


def taylor_t(order: int) -> RationalSeries:
    """Coefficients of tanh(z)/z up to ``z**order``."""
    return series("t", order)


def taylor_T(order: int) -> RationalSeries:
    """Coefficients of z/tanh(z) up to ``z**order``."""
    return series("T", order)


def taylor_s(order: int) -> RationalSeries:
    """Coefficients of sinh(z)cosh(z)/z up to ``z**order``."""
    return series("s", order)


def taylor_W(order: int) -> RationalSeries:
    """Coefficients of (sinh(z)/z)**2 up to ``z**order``."""
    return series("W", order)


@lru_cache(maxsize=None)
def float_coeffs(name: str, order: int) -> tuple[float, ...]:
    """Float view of a table, used by the numeric evaluators."""
    return tuple(float(c) for c in _table(name, order))
