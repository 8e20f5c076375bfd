"""Run configuration, versioned JSON report and sweep CSV."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
import time
from dataclasses import asdict, dataclass

from . import __version__
from .ansatz import PRESET_NAMES, spec_from_dict
from .claims import CLAIMS, ClaimParams, ClaimVerdict, ScalingSweep, get_claim, run_claim, sweep_beta
from .claims.sweep import DEFAULT_BETAS
from .field_calculus import CONVENTIONS
from .geometry import METRICS

SCHEMA_VERSION = "1.0"
SWEEP_QUANTITIES = ("norm", "energy", "ratio")


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration (exit status 2)."""


@dataclass(frozen=True)
class RunConfig:
    preset: str = "paper-single"
    ansatz: dict | None = None
    metric: str = "minkowski"
    x0_rotation: bool = False
    betas: tuple = (1.0,)
    s: tuple = (1.0, 0.0, 0.0)
    scheme_order: int = 4
    quad_order: int = 8
    claims: tuple | None = None
    seed: int = 0
    convention: str = "literal"

    def __post_init__(self):
        if self.ansatz is None and self.preset not in PRESET_NAMES:
            raise ConfigError(f"unknown preset {self.preset!r}; expected one of {', '.join(PRESET_NAMES)}")
        if self.metric not in METRICS:
            raise ConfigError(f"unknown metric {self.metric!r}; expected one of {', '.join(METRICS)}")
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"unknown convention {self.convention!r}")
        if self.scheme_order not in (2, 4):
            raise ConfigError(f"scheme order must be 2 or 4, got {self.scheme_order}")
        if int(self.quad_order) < 1:
            raise ConfigError("quadrature order must be positive")
        betas = tuple(float(b) for b in self.betas)
        if not betas:
            raise ConfigError("at least one beta value is required")
        if any(not (b > 0 and math.isfinite(b)) for b in betas):
            raise ConfigError(f"beta values must be positive, got {list(betas)}")
        object.__setattr__(self, "betas", betas)
        s = tuple(float(v) for v in self.s)
        if len(s) != 3:
            raise ConfigError(f"charge vector needs 3 components for SU(2), got {len(s)}")
        object.__setattr__(self, "s", s)
        if self.claims is not None:
            try:
                for cid in self.claims:
                    get_claim(cid)
            except KeyError as exc:
                raise ConfigError(exc.args[0]) from None
            object.__setattr__(self, "claims", tuple(self.claims))
        if self.ansatz is not None:
            try:
                spec_from_dict(self.ansatz)
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"malformed ansatz: {exc}") from None

    @property
    def beta(self) -> float:
        return self.betas[0]

    def params(self, beta: float | None = None) -> ClaimParams:
        return ClaimParams(beta=self.beta if beta is None else beta, s=self.s, metric=self.metric,
                           x0_rotation=self.x0_rotation, scheme_order=self.scheme_order,
                           quad_order=self.quad_order, seed=self.seed, convention=self.convention)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["betas"] = list(self.betas)
        d["s"] = list(self.s)
        d["claims"] = None if self.claims is None else list(self.claims)
        return d


CONFIG_KEYS = {"preset", "ansatz", "metric", "x0_rotation", "beta", "s", "scheme_order",
               "quad_order", "claims", "seed", "convention"}


def parse_betas(value) -> tuple:
    if isinstance(value, (int, float)):
        return (float(value),)
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",") if p]
        try:
            return tuple(float(p) for p in parts)
        except ValueError:
            raise ConfigError(f"cannot parse beta list {value!r}") from None
    if isinstance(value, (list, tuple)):
        return tuple(float(v) for v in value)
    raise ConfigError(f"beta must be a number or list, got {type(value).__name__}")


def load_config_file(path: str) -> dict:
    """Parse a JSON config; ``beta`` is mandatory in files."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(obj) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "beta" not in obj:
        raise ConfigError("config is missing the required field 'beta'")
    if isinstance(obj.get("ansatz"), dict) and "beta" not in obj["ansatz"]:
        raise ConfigError("inline ansatz is missing the required field 'beta'")
    return obj


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """Defaults, then config file values, then explicit command-line values."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    kw = {}
    for key, val in merged.items():
        if key == "beta":
            kw["betas"] = parse_betas(val)
        elif key == "claims":
            kw["claims"] = tuple(c for c in (val.split(",") if isinstance(val, str) else val) if c)
        elif key in ("scheme_order", "quad_order", "seed"):
            kw[key] = int(val)
        elif key == "x0_rotation":
            kw[key] = bool(val)
        else:
            kw[key] = val
    try:
        return RunConfig(**kw)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


@dataclass
class Report:
    schema_version: str
    toolkit_version: str
    config: dict
    claims: list
    sweeps: dict
    timing: dict | None = None
    internal_gate_failed: bool = False

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "toolkit_version": self.toolkit_version,
                "config": self.config, "claims": [c.to_dict() for c in self.claims],
                "sweeps": {k: v.to_dict() for k, v in self.sweeps.items()}, "timing": self.timing,
                "internal_gate_failed": self.internal_gate_failed}

    @classmethod
    def from_dict(cls, obj: dict) -> "Report":
        return cls(obj["schema_version"], obj["toolkit_version"], obj["config"],
                   [ClaimVerdict.from_dict(c) for c in obj["claims"]],
                   {k: ScalingSweep.from_dict(v) for k, v in obj["sweeps"].items()},
                   obj.get("timing"), obj.get("internal_gate_failed", False))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def build_report(cfg: RunConfig, timing: bool = False, sweeps: bool = True) -> Report:
    ids = list(CLAIMS) if cfg.claims is None else sorted(set(cfg.claims), key=lambda c: int(c[1:]))
    params = cfg.params()
    times = {}
    t_all = time.perf_counter()
    verdicts = []
    for cid in ids:
        t = time.perf_counter()
        verdicts.append(run_claim(cid, params))
        times[cid] = time.perf_counter() - t
    sweep_tables = {}
    if sweeps:
        betas = cfg.betas if len(set(cfg.betas)) >= 3 else DEFAULT_BETAS
        for q in SWEEP_QUANTITIES:
            t = time.perf_counter()
            sweep_tables[q] = sweep_beta(q, params, betas)
            times[f"sweep:{q}"] = time.perf_counter() - t
    times["total"] = time.perf_counter() - t_all
    return Report(SCHEMA_VERSION, __version__, cfg.to_dict(), verdicts, sweep_tables,
                  times if timing else None, any(v.internal_gate_failed for v in verdicts))


def atomic_write(path: str, text: str) -> None:
    """Write ``text`` to a sibling temporary file, then rename over ``path``.

    Existing non-regular targets (devices, pipes) are written in place.
    """
    if os.path.exists(path) and not os.path.isfile(path):
        with open(path, "w") as fh:
            fh.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cell(v) -> str:
    return "" if v is None else repr(float(v))


def sweep_csv(sweeps: dict) -> str:
    """Columns beta, norm, energy, ratio plus a trailer row of fitted exponents."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["beta", *SWEEP_QUANTITIES])
    betas = sweeps[SWEEP_QUANTITIES[0]].beta_values
    for i, b in enumerate(betas):
        w.writerow([repr(float(b))] + [_cell(sweeps[q].values[i]) for q in SWEEP_QUANTITIES])
    w.writerow(["exponent"] + [_cell(sweeps[q].fitted_exponent) for q in SWEEP_QUANTITIES])
    return buf.getvalue()


def parse_sweep_csv(text: str) -> dict:
    rows = list(csv.reader(io.StringIO(text)))
    header, body, trailer = rows[0], rows[1:-1], rows[-1]
    out = {"beta": [float(r[0]) for r in body]}
    for j, q in enumerate(header[1:], start=1):
        out[q] = [float(r[j]) if r[j] else None for r in body]
        out[f"{q}_exponent"] = float(trailer[j]) if trailer[j] else None
    return out
