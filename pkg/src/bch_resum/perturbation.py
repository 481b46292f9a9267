"""Eigenvalue corrections of C = C(A, eps B) to third order in eps.

In the eigenbasis of A (eigenvalues a_n) the eigenvalue of C tracking state n
expands as a_n + eps c1 + eps^2 c2 + eps^3 c3 with

    c1 = B_nn
    c2 = sum_{m != n} h_1(a_n - a_m) B_nm B_mn
    c3 = sum_{m, l != n} h_2(a_n - a_m, a_n - a_l) B_nm B_ml B_ln
         - sum_{m != n} h_2(a_n - a_m, a_n - a_m) B_nm B_mn B_nn

All intermediate indices skip n, in both third-order sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import AmbiguousMatching, DegenerateSpectrum
from .hyper_eval import coth_batch, h_batch
from .matrix_engine import DELTA_GAP, as_dense, bch_oracle, loglog_slope, sym_eig

OVERLAP_MIN = 0.9


@dataclass
class SweepPoint:
    eps: float
    exact: float
    partial_sum: float
    residual: float
    overlap: float = 1.0


@dataclass
class PerturbationResult:
    n: int
    corrections: tuple[float, float, float, float]
    sweep: list[SweepPoint] = field(default_factory=list)

    def partial_sum(self, eps: float, order: int = 3) -> float:
        return float(sum(c * eps**k for k, c in enumerate(self.corrections[: order + 1])))

    def slope(self) -> float:
        """Log-log slope of the residual over the nonzero-eps sweep points."""
        pts = [p for p in self.sweep if p.eps > 0]
        if len(pts) < 2:
            raise ValueError("need two nonzero eps values for a slope")
        return loglog_slope([p.eps for p in pts], [p.residual for p in pts])


def _check_gaps(a: np.ndarray, n: int, delta_gap: float) -> None:
    gaps = np.abs(np.delete(a, n) - a[n])
    if gaps.size and gaps.min() < delta_gap:
        raise DegenerateSpectrum(f"gap {gaps.min():.3g} at state {n} below {delta_gap}")


def corrections(a: Sequence[float], B, n: int, delta_gap: float = DELTA_GAP) -> PerturbationResult:
    """c^(0..3) for state ``n`` with ``B`` given in the eigenbasis of A."""
    a = np.asarray(a, dtype=float)
    b = as_dense(B, symmetric=True)
    if b.shape[0] != a.size:
        raise ValueError("B and a have different sizes")
    if not 0 <= n < a.size:
        raise IndexError(f"state {n} out of range")
    _check_gaps(a, n, delta_gap)
    others = np.delete(np.arange(a.size), n)
    d = a[n] - a[others]
    bn = b[n, others]
    c1 = b[n, n]
    c2 = float(np.sum(coth_batch(d) * bn * bn)) if others.size else 0.0
    c3 = 0.0
    if others.size:
        # h_2 takes accumulated arguments (a_n - a_m, a_n - a_l)
        cum = np.stack(np.broadcast_arrays(d[:, None], d[None, :]), axis=-1)
        inner = b[np.ix_(others, others)]
        c3 = float(np.sum(h_batch(cum) * bn[:, None] * inner * bn[None, :]))
        diag = h_batch(np.stack([d, d], axis=-1))
        c3 -= float(np.sum(diag * bn * bn) * b[n, n])
    return PerturbationResult(n, (float(a[n]), float(c1), c2, c3))


def epsilon_sweep(A, B, n: int, epsilons: Sequence[float],
                  delta_gap: float = DELTA_GAP) -> PerturbationResult:
    """Corrections for state ``n`` of A checked against oracle eigenvalues.

    The oracle eigenvalue for state n is the one whose eigenvector has the
    largest overlap with the unperturbed eigenvector.
    """
    a_mat = as_dense(A, symmetric=True)
    b_mat = as_dense(B, symmetric=True)
    sd = sym_eig(a_mat)
    q = sd.eigenvectors
    b = 0.5 * (q.T @ b_mat @ q + (q.T @ b_mat @ q).T)
    res = corrections(sd.eigenvalues, b, n, delta_gap)
    for eps in epsilons:
        if eps == 0:
            exact, ov = float(sd.eigenvalues[n]), 1.0
        else:
            c = sym_eig(q.T @ bch_oracle(a_mat, eps * b_mat) @ q)
            overlaps = np.abs(c.eigenvectors[n, :])
            j = int(np.argmax(overlaps))
            ov = float(overlaps[j])
            if ov < OVERLAP_MIN:
                raise AmbiguousMatching(f"state {n} at eps={eps}: best overlap {ov:.3f}")
            exact = float(c.eigenvalues[j])
        ps = res.partial_sum(eps)
        res.sweep.append(SweepPoint(float(eps), exact, ps, abs(exact - ps), ov))
    return res
