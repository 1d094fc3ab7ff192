"""JSON experiment configs, single-point checks and parameter sweeps."""

from __future__ import annotations

import copy
import csv
import dataclasses
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .binning import BinGrid
from .criteria import (
    bin_pair,
    check_inefficiency,
    check_prop1,
    check_prop2,
    check_pure,
    check_shannon,
    check_tsallis,
)
from .report import ConditionId, CriterionReport, format_number
from .states import AntisymCatPure, CoherentProduct, DephasedCat, QuadratureConfig, marginal_pair

FAMILIES = ("CoherentProduct", "DephasedCat", "AntisymCatPure")
SWEEP_VARIABLES = ("z", "t", "a", "eta", "bin_width")
GRID_CONDITIONS = {
    ConditionId.PROP2_HIST,
    ConditionId.PROP2_HIST_TWIN,
    ConditionId.PROP2_BINNED,
    ConditionId.PROP2_BINNED_TWIN,
    ConditionId.TSALLIS_BINNED,
    ConditionId.TSALLIS_BINNED_TWIN,
    ConditionId.INEFFICIENCY_SHANNON,
}
SUPPORTED = GRID_CONDITIONS | {ConditionId.PROP1, ConditionId.PROP1_TWIN, ConditionId.SHANNON_DIFF, ConditionId.PURE_STATE}
DEFAULT_PARAMS = {"t": 0.0, "eta": 1.0}


class ConfigError(ValueError):
    """Invalid experiment config; the message names the offending field."""


def _fail(where: str, msg: str):
    raise ConfigError(f"{where}: {msg}")


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        _fail(where, f"expected a finite number, got {value!r}")
    return float(value)


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        _fail(f"{where}.{key}", "missing")
    return obj[key]


def _complex(value, where: str) -> complex:
    if isinstance(value, list):
        if len(value) != 2:
            _fail(where, "complex values are [re, im]")
        return complex(_number(value[0], where), _number(value[1], where))
    return complex(_number(value, where))


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated config; dictionaries hold the normalized JSON fields."""

    state: dict
    config: dict = field(default_factory=dict)
    sweep: dict | None = None
    conditions: tuple = ()
    grids: dict | None = None
    params: dict = field(default_factory=dict)
    output: str = "sweep"

    @classmethod
    def from_dict(cls, raw: Any) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            _fail("config", "top level must be a JSON object")
        unknown = set(raw) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            _fail("config", f"unknown keys {sorted(unknown)}")
        raw = copy.deepcopy(raw)
        cfg = cls(
            state=_require(raw, "state", "config"),
            config=raw.get("config", {}),
            sweep=raw.get("sweep"),
            conditions=tuple(raw.get("conditions", ())),
            grids=raw.get("grids"),
            params={**DEFAULT_PARAMS, **raw.get("params", {})},
            output=str(raw.get("output", "sweep")),
        )
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(raw)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"{path}: {exc.strerror}") from None
        return cls.from_json(text)

    def to_dict(self) -> dict:
        out = {"state": self.state, "config": self.config}
        if self.sweep is not None:
            out["sweep"] = self.sweep
        out["conditions"] = list(self.conditions)
        if self.grids is not None:
            out["grids"] = self.grids
        out["params"] = self.params
        out["output"] = self.output
        return copy.deepcopy(out)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    # -- validation -----------------------------------------------------

    def validate(self) -> None:
        state = self.build_state(self.state.get("z") if isinstance(self.state, dict) else None)
        self.build_quadratures(state.n)
        if not self.conditions:
            _fail("conditions", "at least one condition is required")
        for k, name in enumerate(self.conditions):
            try:
                cid = ConditionId(name)
            except ValueError:
                _fail(f"conditions[{k}]", f"unknown condition {name!r}")
            if cid not in SUPPORTED:
                _fail(f"conditions[{k}]", f"{name} is not evaluated from a state")
            if cid in GRID_CONDITIONS and self.grids is None and not self._sweeps("bin_width"):
                _fail(f"conditions[{k}]", f"{name} needs grids")
            if cid is ConditionId.PURE_STATE and not state.is_pure:
                _fail(f"conditions[{k}]", "PureState needs a pure state")
        for key in ("t", "a", "eta"):
            if key in self.params:
                _number(self.params[key], f"params.{key}")
        if not 0.0 <= self.params["t"] <= 1.0:
            _fail("params.t", "must lie in [0, 1]")
        if "a" in self.params and self.params["a"] < 1:
            _fail("params.a", "must be >= 1")
        if not 0.0 <= self.params["eta"] <= 1.0:
            _fail("params.eta", "must lie in [0, 1]")
        if self.grids is not None:
            if not isinstance(self.grids, dict) or set(self.grids) != {"zeta", "xi"}:
                _fail("grids", "expected keys 'zeta' and 'xi'")
            for key in ("zeta", "xi"):
                _grid_spec(self.grids[key], f"grids.{key}")
        if self.sweep is not None:
            self._validate_sweep(state)

    def _sweeps(self, variable: str) -> bool:
        return isinstance(self.sweep, dict) and self.sweep.get("variable") == variable

    def _validate_sweep(self, state) -> None:
        s = self.sweep
        if not isinstance(s, dict):
            _fail("sweep", "must be an object")
        var = _require(s, "variable", "sweep")
        if var not in SWEEP_VARIABLES:
            _fail("sweep.variable", f"must be one of {SWEEP_VARIABLES}")
        lo, hi = _number(_require(s, "min", "sweep"), "sweep.min"), _number(_require(s, "max", "sweep"), "sweep.max")
        steps = _require(s, "steps", "sweep")
        if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
            _fail("sweep.steps", "must be a positive integer")
        if hi < lo or (steps > 1 and hi == lo):
            _fail("sweep", "need min < max (or min == max with one step)")
        ranges = {"t": (0.0, 1.0), "eta": (0.0, 1.0), "a": (1.0, math.inf), "bin_width": (1e-12, math.inf)}
        if var in ranges and not (ranges[var][0] <= lo and hi <= ranges[var][1]):
            _fail("sweep", f"{var} range must lie in {ranges[var]}")
        if var == "z" and isinstance(state, AntisymCatPure) and lo <= 0 <= hi:
            _fail("sweep", "AntisymCatPure is undefined at z = 0")
        for v in self.sweep_values():
            self.point(float(v))

    # -- construction ---------------------------------------------------

    def build_state(self, z=None):
        st = self.state
        if not isinstance(st, dict):
            _fail("state", "must be an object")
        family = _require(st, "family", "state")
        try:
            if family == "CoherentProduct":
                zs = z if z is not None else _require(st, "z", "state")
                if isinstance(zs, (int, float)):
                    n = int(_require(st, "n", "state"))
                    return CoherentProduct((complex(zs),) * n)
                if not isinstance(zs, list):
                    _fail("state.z", "expected a list of amplitudes")
                return CoherentProduct(tuple(_complex(v, f"state.z[{k}]") for k, v in enumerate(zs)))
            if family == "DephasedCat":
                zz = _number(z if z is not None else _require(st, "z", "state"), "state.z")
                return DephasedCat(int(_require(st, "n", "state")), zz, _number(_require(st, "c", "state"), "state.c"))
            if family == "AntisymCatPure":
                zz = _number(z if z is not None else _require(st, "z", "state"), "state.z")
                return AntisymCatPure(int(_require(st, "n", "state")), zz)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            _fail("state", str(exc))
        _fail("state.family", f"must be one of {FAMILIES}")

    def build_quadratures(self, n: int) -> QuadratureConfig:
        c = self.config
        if not isinstance(c, dict):
            _fail("config", "must be an object")
        preset = c.get("preset")
        try:
            if preset is None and not c:
                family = self.state.get("family")
                return QuadratureConfig.alternating(n) if family == "DephasedCat" else QuadratureConfig.all_plus(n)
            if preset == "alternating":
                return QuadratureConfig.alternating(n)
            if preset == "all_plus":
                return QuadratureConfig.all_plus(n)
            if preset is not None:
                _fail("config.preset", "must be 'alternating' or 'all_plus'")
            return QuadratureConfig(n, tuple(c.get("thetas", ())), tuple(c.get("r_signs", ())), tuple(c.get("s_signs", ())))
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            _fail("config", str(exc))

    def sweep_values(self) -> np.ndarray:
        if self.sweep is None:
            return np.array([])
        return np.linspace(self.sweep["min"], self.sweep["max"], self.sweep["steps"])

    def point(self, value: float | None = None) -> "Point":
        """Resolve state, quadratures, parameters and grids at one sweep value."""
        var = self.sweep["variable"] if (self.sweep is not None and value is not None) else None
        state = self.build_state(value if var == "z" else None)
        params = dict(self.params)
        if var in ("t", "a", "eta"):
            params[var] = value
        if var == "t":
            params.pop("a", None)
        if "a" in params:
            params["t"] = 1.0 - 1.0 / params["a"]
        elif params["t"] < 1:
            params["a"] = 1.0 / (1.0 - params["t"])
        elif ConditionId.PURE_STATE.value in self.conditions:
            _fail("params.t", "PureState needs t < 1")
        grids = self.grids
        if var == "bin_width":
            grids = {"zeta": {"width": value}, "xi": {"width": value}}
        return Point(state, self.build_quadratures(state.n), params, grids)


def _grid_spec(spec, where: str):
    if not isinstance(spec, dict):
        _fail(where, "must be an object")
    if "marks" in spec:
        try:
            return BinGrid([_number(m, f"{where}.marks") for m in spec["marks"]])
        except ValueError as exc:
            _fail(where, str(exc))
    if "width" in spec:
        if _number(spec["width"], f"{where}.width") <= 0:
            _fail(f"{where}.width", "must be > 0")
        return None
    try:
        lo, hi = _number(_require(spec, "min", where), f"{where}.min"), _number(_require(spec, "max", where), f"{where}.max")
        count = _require(spec, "count", where)
        if isinstance(count, bool) or not isinstance(count, int):
            _fail(f"{where}.count", "must be an integer")
        return BinGrid.uniform(lo, hi, count)
    except ConfigError:
        raise
    except ValueError as exc:
        _fail(where, str(exc))


def _make_grid(spec: dict, density) -> BinGrid:
    if "width" in spec:
        return BinGrid.covering(density, float(spec["width"]))
    return _grid_spec(spec, "grids")


@dataclass(frozen=True)
class Point:
    state: Any
    quadratures: QuadratureConfig
    params: dict
    grids: dict | None

    def evaluate(self, conditions) -> list[CriterionReport]:
        n, t = self.state.n, self.params["t"]
        pair = marginal_pair(self.state, self.quadratures)
        grids = binned = None
        if self.grids is not None:
            grids = (_make_grid(self.grids["zeta"], pair.W), _make_grid(self.grids["xi"], pair.U))
        out = []
        for name in conditions:
            cid = ConditionId(name)
            if cid in (ConditionId.PROP1, ConditionId.PROP1_TWIN):
                rep = check_prop1(pair, n, t, swapped=cid is ConditionId.PROP1_TWIN)
            elif cid is ConditionId.SHANNON_DIFF:
                rep = check_shannon(pair, n)
            elif cid is ConditionId.PURE_STATE:
                rep = check_pure(self.state, self.quadratures, self.params["a"])
            elif cid in (ConditionId.PROP2_HIST, ConditionId.PROP2_HIST_TWIN, ConditionId.PROP2_BINNED, ConditionId.PROP2_BINNED_TWIN):
                hist = cid in (ConditionId.PROP2_HIST, ConditionId.PROP2_HIST_TWIN)
                twin = cid in (ConditionId.PROP2_HIST_TWIN, ConditionId.PROP2_BINNED_TWIN)
                rep = check_prop2(pair, grids, n, t, use_histogram=hist, swapped=twin)
            else:
                if binned is None:
                    binned = bin_pair(pair, grids)
                if cid is ConditionId.INEFFICIENCY_SHANNON:
                    rep = check_inefficiency(binned, n, self.params["eta"])
                else:
                    rep = check_tsallis(binned, n, t, swapped=cid is ConditionId.TSALLIS_BINNED_TWIN)
            out.append(rep)
        return out


def run_check(config: ExperimentConfig) -> list[CriterionReport]:
    """Evaluate every requested condition at the config's base point."""
    return config.point().evaluate(config.conditions)


def sweep_rows(config: ExperimentConfig, threads: int = 1) -> tuple[list[str], list[list[str]]]:
    """Header and rows of a sweep, rows in sweep order whatever the thread count."""
    if config.sweep is None:
        raise ConfigError("sweep: missing")
    values = config.sweep_values()
    var = config.sweep["variable"]

    def one(v):
        reports = config.point(float(v)).evaluate(config.conditions)
        fields = {}
        for rep in reports:
            fields.update(rep.csv_fields())
        return fields

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(one, values))
    header = [var] + list(results[0])
    rows = [[format_number(float(v))] + list(r.values()) for v, r in zip(values, results)]
    return header, rows


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def run_sweep(config: ExperimentConfig, out: str | None = None, threads: int = 1) -> Path:
    header, rows = sweep_rows(config, threads)
    return write_csv(f"{out or config.output}.csv", header, rows)
