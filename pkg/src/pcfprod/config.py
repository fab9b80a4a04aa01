"""Tolerances, switch points and grids, with a JSON config file loader.

Precedence is CLI flags > config file > the defaults defined here.  The
config file is a single JSON object; every key is optional::

    {
      "quadrature": {"rel_tol": 1e-13, "abs_tol": 0.0,
                     "max_subdivisions": 400, "scheme": "auto",
                     "truncation": "auto_tail_bound"},
      "series": {"max_terms": 200000, "target_tol": 1e-5,
                 "tail_strategy": "both"},
      "pcf": {"x_switch": 8.0, "overlap_band": [6.0, 10.0],
              "target_rel": 1e-11},
      "grid": {"z_values": ["0.25", "1+2i"], "x_values": [0, 0.5],
               "methods": ["tanh_integral", "oracle_direct"]},
      "threshold": 1e-8
    }
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

SCHEMES = ("auto", "gauss_kronrod", "double_exponential")
TAIL_STRATEGIES = ("none", "semiclassical_tail", "averaging_acceleration", "both")


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy and backend policy for the integral representations.

    ``truncation`` is ``"auto_tail_bound"`` (cut semi-infinite ranges where
    the analytic tail bound drops below the tolerance on the running
    value) or a positive float
    giving a fixed cut-off.  ``scheme="auto"`` lets each representation use
    its own default backend.
    """

    rel_tol: float = 1e-13
    abs_tol: float = 0.0
    max_subdivisions: int = 400
    truncation: str | float = "auto_tail_bound"
    scheme: str = "auto"

    def __post_init__(self):
        if not self.rel_tol >= 1e-14:
            raise ValueError("rel_tol must be >= 1e-14")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be >= 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.truncation != "auto_tail_bound":
            if not (isinstance(self.truncation, (int, float)) and self.truncation > 0):
                raise ValueError("truncation must be 'auto_tail_bound' or a positive float")

    def tolerance(self, scale=1.0):
        return max(self.abs_tol, self.rel_tol * abs(scale))


@dataclass(frozen=True)
class SeriesSpec:
    """Truncation and acceleration policy for the Hermite-function sums."""

    max_terms: int = 200_000
    target_tol: float = 1e-5
    tail_strategy: str = "both"

    def __post_init__(self):
        if self.max_terms < 10:
            raise ValueError("max_terms must be >= 10")
        if not self.target_tol >= 1e-12:
            raise ValueError("target_tol must be >= 1e-12")
        if self.tail_strategy not in TAIL_STRATEGIES:
            raise ValueError(f"unknown tail_strategy {self.tail_strategy!r}")

    @property
    def uses_tail(self):
        return self.tail_strategy in ("semiclassical_tail", "both")

    @property
    def uses_averaging(self):
        return self.tail_strategy in ("averaging_acceleration", "both")


@dataclass(frozen=True)
class PCFConfig:
    """Regime switch points for the reference D_nu(x) evaluator.

    ``x_switch`` separates the Kummer-series regime from the large-|x|
    expansion.  ``overlap_band`` is where both are checked against each
    other on the growing side (x < 0); on the decaying side the series
    cancels badly and that band is served by the continuation regime.
    """

    x_switch: float = 8.0
    overlap_band: tuple = (6.0, 10.0)
    target_rel: float = 1e-11
    kummer_max_w: float = 100.0

    def __post_init__(self):
        lo, hi = self.overlap_band
        if not (0 < lo < self.x_switch < hi):
            raise ValueError("overlap_band must bracket x_switch")


DEFAULT_Z_GRID = (0.25, 0.5, 1.0, 2.5, 5.0, 1 + 2j)
DEFAULT_X_GRID = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0)
DEFAULT_METHODS = ("tanh_integral", "finite_integral", "oracle_direct")


@dataclass(frozen=True)
class Config:
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    series: SeriesSpec = field(default_factory=SeriesSpec)
    pcf: PCFConfig = field(default_factory=PCFConfig)
    z_values: tuple = DEFAULT_Z_GRID
    x_values: tuple = DEFAULT_X_GRID
    methods: tuple = DEFAULT_METHODS
    threshold: float = 1e-8

    def __post_init__(self):
        if not (self.z_values and self.x_values and self.methods):
            raise ValueError("z_values, x_values and methods must be non-empty")
        for z in self.z_values:
            z = complex(z)
            if not (z.real > 0 and math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError(f"grid value z = {z!r} is outside Re z > 0")
        if not all(math.isfinite(float(x)) for x in self.x_values):
            raise ValueError("x_values must be finite")
        if not self.threshold > 0:
            raise ValueError("threshold must be positive")

    def echo(self):
        """JSON-serialisable view of the effective configuration."""
        return {
            "quadrature": dataclasses.asdict(self.quadrature),
            "series": dataclasses.asdict(self.series),
            "pcf": {**dataclasses.asdict(self.pcf), "overlap_band": list(self.pcf.overlap_band)},
            "grid": {
                "z_values": [format_complex(z) for z in self.z_values],
                "x_values": [float(x) for x in self.x_values],
                "methods": list(self.methods),
            },
            "threshold": self.threshold,
        }


DEFAULT_PCF = PCFConfig()


def parse_complex(text):
    """Parse ``RE``, ``RE+IMi``, ``RE-IMi`` or ``IMi`` into a complex number."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip()
    if not s or " " in s:
        raise ValueError(f"cannot parse complex value {text!r}")
    if s[-1] in "iIjJ":
        s = s[:-1] + "j"
        if s in ("j", "+j", "-j"):
            s = s.replace("j", "1j")
        elif s[-2] in "+-":
            s = s[:-1] + "1j"
    try:
        value = complex(s)
    except ValueError:
        raise ValueError(f"cannot parse complex value {text!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"non-finite complex value {text!r}")
    return value


def format_complex(z):
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _replace(obj, updates, name):
    known = {f.name for f in dataclasses.fields(obj)}
    unknown = set(updates) - known
    if unknown:
        raise ValueError(f"unknown {name} keys: {sorted(unknown)}")
    if "overlap_band" in updates:
        updates = {**updates, "overlap_band": tuple(updates["overlap_band"])}
    return dataclasses.replace(obj, **updates)


def load_config(path=None, base=None):
    """Read a JSON config file on top of ``base`` (defaults if omitted)."""
    cfg = base or Config()
    if path is None:
        return cfg
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    unknown = set(data) - {"quadrature", "series", "pcf", "grid", "threshold"}
    if unknown:
        raise ValueError(f"unknown config sections: {sorted(unknown)}")
    updates = {}
    if "quadrature" in data:
        updates["quadrature"] = _replace(cfg.quadrature, data["quadrature"], "quadrature")
    if "series" in data:
        updates["series"] = _replace(cfg.series, data["series"], "series")
    if "pcf" in data:
        updates["pcf"] = _replace(cfg.pcf, data["pcf"], "pcf")
    grid = data.get("grid", {})
    unknown = set(grid) - {"z_values", "x_values", "methods"}
    if unknown:
        raise ValueError(f"unknown grid keys: {sorted(unknown)}")
    if "z_values" in grid:
        updates["z_values"] = tuple(parse_complex(z) for z in grid["z_values"])
    if "x_values" in grid:
        updates["x_values"] = tuple(float(x) for x in grid["x_values"])
    if "methods" in grid:
        updates["methods"] = tuple(grid["methods"])
    if "threshold" in data:
        updates["threshold"] = float(data["threshold"])
    return dataclasses.replace(cfg, **updates)
