"""Scenario files: JSON documents describing one run of the driven-qubit model.

Example (the defaults)::

    {
      "model": {"omega0": 1.0, "Omega": 1.0, "epsilon": 0.3},
      "rates": {"gamma_plus": 0.1, "gamma_minus": 0.05, "gamma_zero": 0.05},
      "initial_state": {"kind": "thermal", "beta": 1.0, "thermal_basis": "bare"},
      "time": {"t_end": 30.0, "dt_output": 0.01},
      "integrator": {"dt": 0.001}
    }

``rates`` may instead be ``{"mode": "spectral", "z": {...}, "x": {...}}`` with
Ohmic bath blocks ``{"coupling", "beta", "cutoff", "amplitude"}``.  Initial
state kinds: thermal, maximally_mixed, ground, excited, bloch (with
``"vector": [x, y, z]``).  An optional ``"sweep"`` block holds
``{"param", "from", "to", "steps"}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .model import BathRates, InitialState, ModelParams, OhmicBath, SpectralModel, rates_from_spectra

SWEEP_PARAMS = ("gamma_plus", "gamma_zero")


class ConfigError(ValidationError):
    pass


@dataclass(frozen=True)
class TimeGrid:
    t_end: float = 30.0
    dt_output: float = 0.01

    @property
    def times(self) -> np.ndarray:
        n = int(round(self.t_end / self.dt_output))
        return self.dt_output * np.arange(n + 1)


@dataclass(frozen=True)
class SweepSpec:
    param: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise ConfigError(f"sweep param must be one of {SWEEP_PARAMS}, got {self.param!r}")
        if self.steps < 1:
            raise ConfigError("sweep steps must be >= 1")
        if not (self.start > 0 and self.stop > 0):
            raise ConfigError("sweep range must be positive")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class Scenario:
    model: ModelParams = field(default_factory=ModelParams)
    rates: BathRates | None = field(default_factory=lambda: BathRates(0.1, 0.05, 0.05))
    spectral: SpectralModel | None = None
    initial: dict = field(default_factory=lambda: {"kind": "thermal", "beta": 1.0,
                                                   "thermal_basis": "bare"})
    grid: TimeGrid = field(default_factory=TimeGrid)
    integrator_dt: float = 1e-3
    sweep: SweepSpec | None = None

    def bath_rates(self) -> BathRates:
        if self.rates is not None:
            return self.rates
        return rates_from_spectra(self.model, self.spectral)

    def initial_state(self) -> InitialState:
        return build_initial_state(self.model, self.initial)

    def with_rate(self, param: str, value: float) -> "Scenario":
        if self.rates is None:
            raise ConfigError("rate sweeps need direct rates, not a spectral model")
        return replace(self, rates=replace(self.rates, **{param: float(value)}, by_bath={}))


def build_initial_state(m: ModelParams, spec: dict) -> InitialState:
    kind = spec.get("kind")
    if kind == "thermal":
        return InitialState.thermal(m, float(spec.get("beta", 1.0)),
                                    spec.get("thermal_basis", "bare"))
    if kind == "maximally_mixed":
        return InitialState.maximally_mixed()
    if kind == "ground":
        return InitialState.ground()
    if kind == "excited":
        return InitialState.excited()
    if kind == "bloch":
        return InitialState.from_vector(spec["vector"])
    raise ConfigError(f"unknown initial state kind {kind!r}")


_SECTIONS = {
    "model": {"omega0", "Omega", "epsilon"},
    "rates": {"mode", "gamma_plus", "gamma_minus", "gamma_zero", "z", "x"},
    "initial_state": {"kind", "beta", "thermal_basis", "vector"},
    "time": {"t_end", "dt_output"},
    "integrator": {"dt"},
    "sweep": {"param", "from", "to", "steps"},
}
_BATH_KEYS = {"coupling", "beta", "cutoff", "amplitude"}


def _line_of(text: str | None, key: str) -> str:
    if not text:
        return ""
    for i, line in enumerate(text.splitlines(), start=1):
        if f'"{key}"' in line:
            return f"line {i}: "
    return ""


def _number(section: dict, key: str, default, where: str, text):
    value = section.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{_line_of(text, key)}{where}.{key} must be a number, got {value!r}")
    return float(value)


def parse_scenario(doc: dict, text: str | None = None) -> Scenario:
    """Build a Scenario from a decoded JSON document.

    ``text`` is the raw file contents, used only to point error messages at a line.
    """
    if not isinstance(doc, dict):
        raise ConfigError("scenario must be a JSON object")
    for key, value in doc.items():
        if key not in _SECTIONS:
            raise ConfigError(f"{_line_of(text, key)}unknown section {key!r}")
        if not isinstance(value, dict):
            raise ConfigError(f"{_line_of(text, key)}section {key!r} must be an object")
        extra = set(value) - _SECTIONS[key]
        if extra:
            bad = sorted(extra)[0]
            raise ConfigError(f"{_line_of(text, bad)}unknown key {key}.{bad}")

    try:
        md = doc.get("model", {})
        model = ModelParams(*(_number(md, k, d, "model", text)
                              for k, d in (("omega0", 1.0), ("Omega", 1.0), ("epsilon", 0.3))))

        rd = doc.get("rates", {})
        rates, spectral = None, None
        if rd.get("mode", "direct") == "spectral":
            baths = {}
            for j in ("z", "x"):
                bd = rd.get(j)
                if not isinstance(bd, dict) or set(bd) - _BATH_KEYS:
                    raise ConfigError(f"{_line_of(text, j)}rates.{j} must be an object with keys "
                                      f"{sorted(_BATH_KEYS)}")
                baths[j] = OhmicBath(_number(bd, "coupling", None, f"rates.{j}", text),
                                     _number(bd, "beta", None, f"rates.{j}", text),
                                     _number(bd, "cutoff", 10.0, f"rates.{j}", text),
                                     _number(bd, "amplitude", 1.0, f"rates.{j}", text))
            spectral = SpectralModel(**baths)
        elif rd.get("mode", "direct") == "direct":
            rates = BathRates(*(_number(rd, k, d, "rates", text) for k, d in
                                (("gamma_plus", 0.1), ("gamma_minus", 0.05), ("gamma_zero", 0.05))))
        else:
            raise ConfigError(f"{_line_of(text, 'mode')}rates.mode must be 'direct' or 'spectral'")

        initial = dict(doc.get("initial_state", {"kind": "thermal", "beta": 1.0}))
        initial.setdefault("kind", "thermal")
        if initial["kind"] == "thermal":
            initial["beta"] = _number(initial, "beta", 1.0, "initial_state", text)
            initial.setdefault("thermal_basis", "bare")
        build_initial_state(model, initial)

        td = doc.get("time", {})
        grid = TimeGrid(_number(td, "t_end", 30.0, "time", text),
                        _number(td, "dt_output", 0.01, "time", text))
        if not (grid.t_end > 0 and grid.dt_output > 0):
            raise ConfigError(f"{_line_of(text, 't_end')}time.t_end and time.dt_output must be positive")

        dt = _number(doc.get("integrator", {}), "dt", 1e-3, "integrator", text)

        sweep = None
        if "sweep" in doc:
            sd = doc["sweep"]
            steps = sd.get("steps")
            if not isinstance(steps, int) or isinstance(steps, bool):
                raise ConfigError(f"{_line_of(text, 'steps')}sweep.steps must be an integer")
            sweep = SweepSpec(sd.get("param"), _number(sd, "from", None, "sweep", text),
                              _number(sd, "to", None, "sweep", text), steps)
    except ConfigError:
        raise
    except (ValidationError, KeyError, TypeError) as exc:
        words = str(exc).split()
        where = _line_of(text, words[0]) if words else ""
        raise ConfigError(f"{where}invalid scenario: {exc}") from exc

    return Scenario(model, rates, spectral, initial, grid, dt, sweep)


def load_scenario(path) -> Scenario:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_scenario(doc, text)


def default_scenario() -> Scenario:
    """Resonant drive, epsilon = 0.3, rates (0.1, 0.05, 0.05), thermal start at beta omega0 = 1."""
    return Scenario()
