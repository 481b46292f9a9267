"""Run configuration: a versioned flat ``key = value`` file plus overrides.

Lookup order: the packaged ``defaults.conf``, then the file named by
``BCH_RESUM_CONFIG`` (if set), then explicit overrides from the command line.

Recognised keys::

    version              format version, must be 1
    seed                 base seed (64-bit unsigned)
    output               csv | json
    jobs                 worker processes
    margin               minimum |contiguous sum| of sampled tuples
    trials               default trials per (identity, N)
    trials.<suite>       per-suite trials
    tol.<identity>       residual tolerance
    cap.<suite>          largest N for a suite
    bch.dim, bch.eps     matrix size and eps list for the convergence suite
    perturb.dim, perturb.eps
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from .errors import ConfigError

CONFIG_VERSION = 1
ENV_VAR = "BCH_RESUM_CONFIG"
SUITES = ("coeffs", "identities", "equivalence", "marching", "denominator", "bch", "perturb")
# identities whose tolerance must be configured
IDENTITIES = ("coeffs", "52", "jk", "x", "x_value", "denominator", "marching",
              "equivalence", "bch", "bch_oracle", "bch_similarity", "perturb")
CAPPED = ("coeffs", "52", "jk", "x", "denominator", "marching", "equivalence", "bch", "perturb")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    output: str = "csv"
    jobs: int = 1
    margin: float = 0.2
    trials: int = 50
    suite_trials: dict[str, int] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    n_caps: dict[str, int] = field(default_factory=dict)
    bch_dim: int = 4
    bch_eps: tuple[float, ...] = (0.2, 0.1, 0.05)
    perturb_dim: int = 4
    perturb_eps: tuple[float, ...] = (0.1, 0.05, 0.025)

    def trials_for(self, suite: str) -> int:
        return self.suite_trials.get(suite, self.trials)

    def tol(self, identity: str) -> float:
        try:
            return self.tolerances[identity]
        except KeyError:
            raise ConfigError(f"no tolerance configured for {identity!r}") from None

    def cap(self, suite: str) -> int:
        try:
            return self.n_caps[suite]
        except KeyError:
            raise ConfigError(f"no N cap configured for {suite!r}") from None

    def with_overrides(self, **kw) -> RunConfig:
        """Return a copy; ``trials`` and ``tol`` overrides apply to every suite."""
        kw = {k: v for k, v in kw.items() if v is not None}
        if "trials" in kw:
            kw["suite_trials"] = {}
        if "tol" in kw:
            tol = kw.pop("tol")
            kw["tolerances"] = {k: tol for k in self.tolerances}
        return replace(self, **kw)


def parse_text(text: str, source: str = "<string>") -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        out[key] = value
    return out


def _floats(s: str) -> tuple[float, ...]:
    return tuple(float(x) for x in s.split(",") if x.strip())


def from_mapping(kv: dict[str, str], source: str = "<config>") -> RunConfig:
    if kv.get("version") != str(CONFIG_VERSION):
        raise ConfigError(f"{source}: unsupported config version {kv.get('version')!r}")
    cfg: dict = {"suite_trials": {}, "tolerances": {}, "n_caps": {}}
    try:
        for key, value in kv.items():
            head, _, tail = key.partition(".")
            if key == "version":
                continue
            elif key == "seed":
                cfg["seed"] = int(value)
                if not 0 <= cfg["seed"] < 2**64:
                    raise ConfigError(f"{source}: seed must fit in 64 bits")
            elif key == "output":
                if value not in ("csv", "json"):
                    raise ConfigError(f"{source}: output must be csv or json")
                cfg["output"] = value
            elif key in ("jobs", "trials"):
                cfg[key] = int(value)
            elif key == "margin":
                cfg["margin"] = float(value)
            elif head == "trials" and tail:
                cfg["suite_trials"][tail] = int(value)
            elif head == "tol" and tail:
                cfg["tolerances"][tail] = float(value)
            elif head == "cap" and tail:
                cfg["n_caps"][tail] = int(value)
            elif key in ("bch.dim", "perturb.dim"):
                cfg[key.replace(".", "_")] = int(value)
            elif key in ("bch.eps", "perturb.eps"):
                cfg[key.replace(".", "_")] = _floats(value)
            else:
                raise ConfigError(f"{source}: unknown key {key!r}")
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{source}: {exc}") from None
    return RunConfig(**cfg)


def _defaults_text() -> str:
    return resources.files(__package__).joinpath("defaults.conf").read_text()


def load(path: str | os.PathLike | None = None) -> RunConfig:
    """Defaults, overlaid by ``path`` or ``$BCH_RESUM_CONFIG``, then validated."""
    kv = parse_text(_defaults_text(), "defaults.conf")
    source = "defaults.conf"
    path = path or os.environ.get(ENV_VAR) or None
    if path is not None:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {p}: {exc}") from None
        kv.update(parse_text(text, str(p)))
        source = str(p)
    cfg = from_mapping(kv, source)
    missing = [k for k in IDENTITIES if k not in cfg.tolerances]
    missing += [f"cap.{k}" for k in CAPPED if k not in cfg.n_caps]
    if missing:
        raise ConfigError(f"{source}: missing keys {missing}")
    return cfg
