"""Verification suites: task enumeration, parallel execution, report merging.

A suite expands into :class:`Task` records.  Each task draws its random
inputs from a generator seeded by ``(config seed, identity, n, m, trial)``,
so results do not depend on scheduling or on the ``jobs`` setting.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

import numpy as np

from . import g_series as gs
from .config import RunConfig
from .exact_series import series
from .g_series import IdentityReport
from .matrix_engine import (bch_oracle, bch_oracle_swapped, convergence_table, expm,
                            random_symmetric, sym_eig)
from .perturbation import epsilon_sweep

SUITE_NAMES = ("coeffs", "identities", "equivalence", "marching", "denominator", "bch",
               "perturb", "all")
VERIFY_NAMES = ("52", "marching", "jk", "x", "denominator")


class Task(NamedTuple):
    suite: str
    identity: str
    n: int
    m: int
    trial: int


def task_rng(seed: int, task: Task) -> np.random.Generator:
    key = (zlib.crc32(task.identity.encode()), task.n, task.m, task.trial)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


# ---------------------------------------------------------------------------
# task enumeration


def _tasks_coeffs(cfg: RunConfig, ns: Iterable[int] | None = None) -> list[Task]:
    ns = range(cfg.cap("coeffs") + 1) if ns is None else ns
    return [Task("coeffs", ident, n, 0, 0) for ident in ("coeffs_inverse", "coeffs_sW")
            for n in ns]


def _trials(suite: str, ident: str, ns, cfg: RunConfig, m: int = 0) -> list[Task]:
    return [Task(suite, ident, n, m, k) for n in ns for k in range(cfg.trials_for(suite))]


def tasks_for_identity(name: str, cfg: RunConfig, n: int | None = None) -> list[Task]:
    """Tasks of one ``verify`` identity, for a single N or every N up to the cap."""
    if name == "52":
        return _trials("identities", "52", [n] if n is not None else range(cfg.cap("52") + 1), cfg)
    if name == "jk":
        return _trials("identities", "jk", [n] if n is not None else range(cfg.cap("jk") + 1), cfg)
    if name == "x":
        ns = [n] if n is not None else range(1, cfg.cap("x") + 1)
        out = [Task("identities", "x_value", k, 0, 0) for k in ns if k <= 3]
        return out + _trials("identities", "x_reversal", ns, cfg)
    if name == "denominator":
        ns = [n] if n is not None else range(1, cfg.cap("denominator") + 1)
        return _trials("denominator", "denominator", ns, cfg)
    if name == "marching":
        ns = [n] if n is not None else range(2, cfg.cap("marching") + 1)
        return [t for k in ns for m in range(1, k) for t in _trials("marching", "marching", [k], cfg, m)]
    raise KeyError(f"unknown identity {name!r}; expected one of {VERIFY_NAMES}")


def tasks_for_suite(name: str, cfg: RunConfig) -> list[Task]:
    if name == "all":
        return [t for s in SUITE_NAMES[:-1] for t in tasks_for_suite(s, cfg)]
    if name == "coeffs":
        return _tasks_coeffs(cfg)
    if name == "identities":
        return [t for i in ("52", "jk", "x") for t in tasks_for_identity(i, cfg)]
    if name in ("marching", "denominator"):
        return tasks_for_identity(name, cfg)
    if name == "equivalence":
        return _trials("equivalence", "equivalence", range(1, cfg.cap("equivalence") + 1), cfg)
    if name == "bch":
        return _trials("bch", "bch", [cfg.cap("bch")], cfg)
    if name == "perturb":
        return _trials("perturb", "perturb", [cfg.cap("perturb")], cfg)
    raise KeyError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")


# ---------------------------------------------------------------------------
# task bodies


def _coeffs(task: Task, cfg: RunConfig, rng) -> list[IdentityReport]:
    n = task.n
    t, big_t, s, w = (series(k, n) for k in ("t", "T", "s", "W"))
    if task.identity == "coeffs_inverse":
        lhs = sum((big_t[p] * t[n - p] for p in range(n + 1)), Fraction(0))
        res = lhs - (1 if n == 0 else 0)
    else:
        res = s[n] - sum((big_t[p] * w[n - p] for p in range(n + 1)), Fraction(0))
    return [IdentityReport(task.identity, n, [], abs(float(res)), cfg.tol("coeffs"))]


def _identity(task: Task, cfg: RunConfig, rng) -> list[IdentityReport]:
    n = task.n
    if task.identity == "52":
        return [gs.check_identity_52(gs.sample_regular(rng, n, cfg.margin), tol=cfg.tol("52"))]
    if task.identity == "jk":
        return [gs.jk_relation(gs.sample_regular(rng, n, cfg.margin), tol=cfg.tol("jk"))]
    if task.identity == "x_reversal":
        return [gs.x_reversal(gs.sample_regular(rng, n + 1, cfg.margin), tol=cfg.tol("x"))]
    if task.identity == "x_value":
        L = gs.sample_regular(rng, n, cfg.margin)
        expected = 0.0
        if n == 3:
            expected = (L[1] / np.tanh(L[1]) + L[2] / np.tanh(L[2])) / 3.0
        return [IdentityReport("x_value", n, L.tolist(), abs(gs.x_extra(L) - expected),
                               cfg.tol("x_value"))]
    raise KeyError(task.identity)


def _equivalence(task: Task, cfg: RunConfig, rng) -> list[IdentityReport]:
    n = task.n
    L = gs.sample_regular(rng, n, cfg.margin)
    x0 = float(rng.uniform(-gs.SAMPLE_RANGE, gs.SAMPLE_RANGE))
    gp = gs.g_perm(L)
    scale = max(1.0, abs(gp))
    tol = cfg.tol("equivalence")
    orig = abs(gp - gs.g_original(L)) / scale
    over = abs(gp - gs.g_overcomplete(gs.x_values(L, x0))) / scale
    return [IdentityReport("equivalence_orig", n, L.tolist(), orig, tol),
            IdentityReport("equivalence_over", n, L.tolist() + [x0], over, tol)]


def _marching(task: Task, cfg: RunConfig, rng) -> list[IdentityReport]:
    alphas, betas = gs.sample_marching(rng, task.n, task.m, cfg.margin)
    return [gs.marching_residual(alphas, betas, tol=cfg.tol("marching"))]


def _denominator(task: Task, cfg: RunConfig, rng) -> list[IdentityReport]:
    return [gs.denominator_check(gs.sample_regular(rng, task.n, cfg.margin),
                                 tol=cfg.tol("denominator"))]


def _draw_pair(rng, dim: int) -> tuple[np.ndarray, np.ndarray]:
    return random_symmetric(rng, dim), random_symmetric(rng, dim, 1.0)


def _bch(task: Task, cfg: RunConfig, rng) -> list[IdentityReport]:
    A, B = _draw_pair(rng, cfg.bch_dim)
    flat = A.ravel().tolist() + B.ravel().tolist()
    out = []
    # oracle consistency and the similarity check at the largest eps
    e = max(cfg.bch_eps)
    C = bch_oracle(A, e * B)
    prod = expm(A) @ expm(2 * e * B) @ expm(A)
    res = np.abs(expm(2 * C) - prod).max() / np.abs(prod).max()
    out.append(IdentityReport("bch_oracle", task.n, flat, res, cfg.tol("bch_oracle")))
    ev = sym_eig(C).eigenvalues
    ev2 = sym_eig(bch_oracle_swapped(A, e * B)).eigenvalues
    out.append(IdentityReport("bch_similarity", task.n, flat, np.abs(ev - ev2).max(),
                              cfg.tol("bch_similarity")))
    orders = list(range(2, task.n + 1))
    _, fits = convergence_table(A, B, orders, cfg.bch_eps)
    for n in orders:
        # residual is the shortfall of the fitted slope below n + 1/2
        out.append(IdentityReport(f"bch_slope_{n}", n, [fits[n]] + flat,
                                  max(0.0, n + 0.5 - fits[n]), cfg.tol("bch")))
    return out


def _perturb(task: Task, cfg: RunConfig, rng) -> list[IdentityReport]:
    A, B = _draw_pair(rng, cfg.perturb_dim)
    flat = A.ravel().tolist() + B.ravel().tolist()
    out = []
    for state in range(cfg.perturb_dim):
        slope = epsilon_sweep(A, B, state, cfg.perturb_eps).slope()
        # order-3 partial sum leaves an eps^4 remainder; required slope 3.5
        out.append(IdentityReport("perturb_slope", state, [slope] + flat,
                                  max(0.0, 3.5 - slope), cfg.tol("perturb")))
    return out


_BODIES: dict[str, Callable] = {
    "coeffs": _coeffs,
    "identities": _identity,
    "equivalence": _equivalence,
    "marching": _marching,
    "denominator": _denominator,
    "bch": _bch,
    "perturb": _perturb,
}


def run_task(task: Task, cfg: RunConfig) -> list[IdentityReport]:
    reports = _BODIES[task.suite](task, cfg, task_rng(cfg.seed, task))
    for r in reports:
        r.trial = task.trial
        r.seed = cfg.seed
    return reports


def _run_packed(args: tuple[Task, RunConfig]) -> list[IdentityReport]:
    return run_task(*args)


@dataclass
class SuiteResult:
    reports: list[IdentityReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def summary(self) -> list[tuple[str, int, int, float, bool]]:
        """(identity, n, trials, max_residual, pass) in first-seen order."""
        groups: dict[tuple[str, int], list[IdentityReport]] = {}
        for r in self.reports:
            groups.setdefault((r.identity, r.n), []).append(r)
        return [(ident, n, len(rs), max(r.residual for r in rs), all(r.passed for r in rs))
                for (ident, n), rs in groups.items()]


def run_tasks(tasks: list[Task], cfg: RunConfig) -> SuiteResult:
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_run_packed, [(t, cfg) for t in tasks], chunksize=8))
    else:
        chunks = [run_task(t, cfg) for t in tasks]
    # map preserves task order, which is already (suite, identity, n, trial)
    return SuiteResult([r for chunk in chunks for r in chunk])


def run_suite(name: str, cfg: RunConfig) -> SuiteResult:
    return run_tasks(tasks_for_suite(name, cfg), cfg)
