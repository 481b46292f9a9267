"""Small dense symmetric-matrix kernels and the BCH series for matrices.

The oracle solves e^{2C} = e^A e^{2B} e^A exactly through a matrix logarithm;
:func:`series_C` builds the same C order by order in B from the scalar
coefficient functions G_k evaluated on eigenvalue differences of A.

Matrices are plain ``numpy.ndarray`` objects; :func:`as_dense` validates them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSpectrum, NonSPD, NotSymmetric
from .g_series import g_perm_batch, g_regularized
from .hyper_eval import contiguous_sums

MAX_DIM = 16
MAX_ORDER = 5
SYM_TOL = 1e-13
JACOBI_TOL = 1e-14
SPD_FLOOR = 1e-13
DELTA_GAP = 1e-4
EXPM_DEGREE = 16
EXPM_SCALED_NORM = 0.5
# chains whose smallest contiguous difference sum is below this are regularised
CHAIN_SINGULAR = 0.25
CHAIN_BLOCK = 1 << 15


def as_dense(M, symmetric: bool = False) -> np.ndarray:
    M = np.array(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not 1 <= M.shape[0] <= MAX_DIM:
        raise ValueError(f"dimension {M.shape[0]} outside 1..{MAX_DIM}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    if symmetric:
        scale = max(np.abs(M).max(), 1.0)
        if np.abs(M - M.T).max() > SYM_TOL * scale:
            raise NotSymmetric("matrix is not symmetric")
    return M


@dataclass
class SpectralData:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T

    def min_gap(self) -> float:
        if self.eigenvalues.size < 2:
            return math.inf
        return float(np.min(np.diff(self.eigenvalues)))


def sym_eig(M, max_sweeps: int = 100) -> SpectralData:
    """Cyclic Jacobi eigen-decomposition, eigenvalues ascending."""
    a = as_dense(M, symmetric=True)
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    q = np.eye(n)
    target = JACOBI_TOL * max(np.linalg.norm(a), np.finfo(float).tiny)
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target:
            sweeps -= 1
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if apr == 0.0:
                    continue
                theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                # rotate rows/columns p and r
                ap = a[:, p].copy()
                ar = a[:, r].copy()
                a[:, p] = c * ap - s * ar
                a[:, r] = s * ap + c * ar
                ap = a[p, :].copy()
                ar = a[r, :].copy()
                a[p, :] = c * ap - s * ar
                a[r, :] = s * ap + c * ar
                a[p, r] = a[r, p] = 0.0
                qp = q[:, p].copy()
                qr = q[:, r].copy()
                q[:, p] = c * qp - s * qr
                q[:, r] = s * qp + c * qr
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return SpectralData(w[order], q[:, order], sweeps)


def expm(M) -> np.ndarray:
    """Scaling and squaring with a degree-16 Taylor polynomial."""
    m = as_dense(M)
    norm = np.abs(m).sum(axis=1).max()
    k = 0
    if norm > EXPM_SCALED_NORM:
        k = int(math.ceil(math.log2(norm / EXPM_SCALED_NORM)))
    x = m / (2.0**k)
    n = m.shape[0]
    # Horner on sum x^j / j!
    out = np.eye(n)
    for j in range(EXPM_DEGREE, 0, -1):
        out = np.eye(n) + (x @ out) / j
    for _ in range(k):
        out = out @ out
    return out


def logm_spd(M) -> np.ndarray:
    sd = sym_eig(M)
    if sd.eigenvalues[0] <= SPD_FLOOR:
        raise NonSPD(f"smallest eigenvalue {sd.eigenvalues[0]:.3g} is not positive")
    q = sd.eigenvectors
    return (q * np.log(sd.eigenvalues)) @ q.T


def _sym(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.T)


def bch_oracle(A, B) -> np.ndarray:
    """C with e^{2C} = e^A e^{2B} e^A, via the SPD matrix logarithm."""
    a = as_dense(A, symmetric=True)
    b = as_dense(B, symmetric=True)
    ea = expm(a)
    return 0.5 * logm_spd(_sym(ea @ expm(2.0 * b) @ ea))


def bch_oracle_swapped(A, B) -> np.ndarray:
    """1/2 log(e^B e^{2A} e^B), similar to 1/2 log(e^{2A} e^{2B})."""
    return bch_oracle(B, A)


# ---------------------------------------------------------------------------
# series in B


@dataclass
class SeriesTerms:
    """Order-by-order pieces of C in the eigenbasis of A.

    ``terms[k]`` holds T_k with C = Q (diag(a) + sum_k eps^k T_k) Q^T;
    ``flags[k]`` marks entries that needed the regularised evaluation.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    B_eig: np.ndarray
    terms: dict[int, np.ndarray] = field(default_factory=dict)
    flags: dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return max(self.terms, default=0)

    def eig_basis_C(self, order: int, eps: float = 1.0) -> np.ndarray:
        if order > self.order:
            raise ValueError(f"terms available to order {self.order}, asked for {order}")
        c = np.diag(self.eigenvalues).astype(float)
        for k in range(1, order + 1):
            c = c + eps**k * self.terms[k]
        return c

    def C(self, order: int, eps: float = 1.0) -> np.ndarray:
        q = self.eigenvectors
        return q @ self.eig_basis_C(order, eps) @ q.T

    def flagged(self, order: int) -> np.ndarray:
        out = np.zeros_like(self.B_eig, dtype=bool)
        for k in range(1, order + 1):
            out |= self.flags[k]
        return out


def _chain_term(a: np.ndarray, b: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """T_k and its regularisation mask from the full index-chain sum."""
    d = a.size
    out = np.zeros((d, d))
    flag = np.zeros((d, d), dtype=bool)
    chains = np.array(list(itertools.product(range(d), repeat=k + 1)), dtype=np.intp)
    for start in range(0, len(chains), CHAIN_BLOCK):
        ch = chains[start : start + CHAIN_BLOCK]
        vals = a[ch]
        diffs = vals[:, :-1] - vals[:, 1:]
        weight = np.prod(b[ch[:, :-1], ch[:, 1:]], axis=1)
        live = weight != 0.0
        ch, diffs, weight = ch[live], diffs[live], weight[live]
        if not len(ch):
            continue
        small = np.array([np.abs(contiguous_sums(row)).min() for row in diffs]) < CHAIN_SINGULAR
        g = np.empty(len(ch))
        if (~small).any():
            g[~small] = g_perm_batch(diffs[~small])
        if small.any():
            g[small] = g_regularized(diffs[small])
        np.add.at(out, (ch[:, 0], ch[:, -1]), g * weight)
        np.logical_or.at(flag, (ch[small, 0], ch[small, -1]), True)
    return out, flag


def series_terms(A, B, order: int, delta_gap: float = DELTA_GAP) -> SeriesTerms:
    """Compute T_1..T_order once so that many scalings of B can reuse them."""
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}")
    a_mat = as_dense(A, symmetric=True)
    b_mat = as_dense(B, symmetric=True)
    if a_mat.shape != b_mat.shape:
        raise ValueError("A and B must have the same shape")
    sd = sym_eig(a_mat)
    if sd.min_gap() < delta_gap:
        raise DegenerateSpectrum(f"eigenvalue gap {sd.min_gap():.3g} below {delta_gap}")
    q = sd.eigenvectors
    b = _sym(q.T @ b_mat @ q)
    st = SeriesTerms(sd.eigenvalues, q, b)
    for k in range(1, order + 1):
        st.terms[k], st.flags[k] = _chain_term(sd.eigenvalues, b, k)
    return st


def series_C(A, B, order: int, delta_gap: float = DELTA_GAP) -> np.ndarray:
    """C truncated after the B^order term, in the original basis."""
    if order == 0:
        return as_dense(A, symmetric=True).copy()
    return series_terms(A, B, order, delta_gap).C(order)


# ---------------------------------------------------------------------------
# convergence table


@dataclass
class ConvergenceRow:
    eps: float
    order: int
    error: float
    slope: float | None


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])


def convergence_table(A, B, orders, epsilons) -> tuple[list[ConvergenceRow], dict[int, float]]:
    """Errors of the truncated series against the oracle for each (eps, order).

    Each row's ``slope`` is the local slope to the previous eps; the returned
    dict holds the least-squares slope over all eps per order.
    """
    orders = sorted(orders)
    epsilons = sorted(epsilons, reverse=True)
    st = series_terms(A, B, max(orders))
    q = st.eigenvectors
    b_mat = as_dense(B, symmetric=True)
    exact = {e: q.T @ bch_oracle(A, e * b_mat) @ q for e in epsilons}
    rows: list[ConvergenceRow] = []
    fits: dict[int, float] = {}
    for n in orders:
        errs = []
        for i, e in enumerate(epsilons):
            err = float(np.linalg.norm(st.eig_basis_C(n, e) - exact[e], 2))
            slope = None if i == 0 else loglog_slope(epsilons[i - 1 : i + 1], [errs[-1], err])
            errs.append(err)
            rows.append(ConvergenceRow(e, n, err, slope))
        fits[n] = loglog_slope(epsilons, errs)
    return rows, fits


def random_symmetric(rng: np.random.Generator, n: int, norm: float | None = None) -> np.ndarray:
    g = rng.standard_normal((n, n))
    s = _sym(g)
    if norm is not None:
        s *= norm / np.linalg.norm(s, 2)
    return s
