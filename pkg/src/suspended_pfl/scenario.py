"""YAML scenario files -> ScenarioConfig.

Every key is optional; an empty file is the nominal Case A run. Schema::

    name: case_a
    model: full                 # full | planar
    duration: 30.0              # s
    dt: 0.001                   # s
    seed: 0
    initial: {q: [...], dq: [...]}
    plant: {preset: nominal, m_l: 20.4, ...}       # ModelParams fields
    controller:
      mode: coupled             # coupled | standard
      params: {preset: nominal, ...}               # controller's own model
      K_py: [4230, 4230, 30]    # diagonal list, scalar or full matrix
      K_dy: ...; K_pc: ...; K_dc: ...
      y_ref: [...]; dy_ref: [...]; qc_ref: [...]; dqc_ref: [...]
    wind: {t_on: 10, t_off: 20, force: [8.1, 8.1]}   # or null
    noise: {accel_std: 1.0, relative_strength: 0.1, velocity_estimation: true,
            leak: 0.999, velocity_std: 0.0}          # or null
"""

from __future__ import annotations

import dataclasses
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .control import ControllerConfig
from .errors import ConfigValidationError, NonPositiveParameter, ParseError
from .model import ModelParams, default_params, uncertain_params
from .sim import DisturbanceProfile, NoiseConfig, ScenarioConfig

FIXTURES = ("case_a", "case_b", "wind_heavy_load", "uncertain_noise",
            "planar_standard", "planar_coupled")

PRESETS = {"nominal": default_params, "uncertain": uncertain_params}
_PARAM_KEYS = {"preset"} | {f.name for f in dataclasses.fields(ModelParams)}

SCHEMA: dict = {
    "name": None,
    "model": None,
    "duration": None,
    "dt": None,
    "seed": None,
    "initial": {"q": None, "dq": None},
    "plant": dict.fromkeys(_PARAM_KEYS),
    "controller": {
        "mode": None,
        "params": dict.fromkeys(_PARAM_KEYS),
        **dict.fromkeys(["K_py", "K_dy", "K_pc", "K_dc", "y_ref", "dy_ref", "qc_ref", "dqc_ref"]),
    },
    "wind": {"t_on": None, "t_off": None, "force": None},
    "noise": {"accel_std": None, "relative_strength": None, "velocity_estimation": None,
              "leak": None, "velocity_std": None},
}

PLANAR_Q0 = (0.2, 0.0)


def _check_keys(node, schema, path="") -> None:
    """Walk the composed YAML tree so unknown keys report their own line."""
    if node is None or schema is None:
        return
    if not isinstance(node, yaml.MappingNode):
        if isinstance(node, yaml.ScalarNode) and node.tag.endswith(":null"):
            return
        raise ParseError(f"'{path or '<root>'}' must be a mapping", node.start_mark.line + 1)
    for key_node, value_node in node.value:
        key = key_node.value
        if key not in schema:
            raise ParseError(f"unknown key '{path + key}'", key_node.start_mark.line + 1)
        _check_keys(value_node, schema[key], f"{path}{key}.")


def load_text(text: str, source: str = "<string>") -> ScenarioConfig:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        _check_keys(root, SCHEMA)
        data = yaml.safe_load(text) or {}
    except yaml.MarkedYAMLError as exc:
        line = exc.problem_mark.line + 1 if exc.problem_mark else None
        raise ParseError(f"{source}: {exc.problem}", line) from exc
    try:
        return from_dict(data)
    except NonPositiveParameter as exc:
        raise ConfigValidationError(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (ParseError, ConfigValidationError)):
            raise
        raise ConfigValidationError(str(exc)) from exc


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("suspended_pfl") / "scenarios" / f"{name}.yaml"))


def resolve(path_or_name) -> Path:
    """A file path, or the name of a shipped fixture when no such file exists."""
    p = Path(path_or_name)
    if p.exists():
        return p
    if str(path_or_name) in FIXTURES:
        return fixture_path(str(path_or_name))
    raise ParseError(f"no such scenario file: {path_or_name}")


def parse_scenario(path) -> ScenarioConfig:
    p = resolve(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {p}: {exc}") from exc
    cfg = load_text(text, str(p))
    if "name" not in (yaml.safe_load(text) or {}):
        cfg.name = p.stem
    return cfg


def _params(d: dict | None) -> ModelParams:
    d = dict(d or {})
    preset = d.pop("preset", "nominal")
    if preset not in PRESETS:
        raise ConfigValidationError(f"unknown parameter preset {preset!r}")
    base = PRESETS[preset]()
    return base.replace(**{k: float(v) for k, v in d.items()})


def _vec(v):
    return None if v is None else np.asarray(v, dtype=float).reshape(-1)


def from_dict(data: dict) -> ScenarioConfig:
    model = str(data.get("model", "full")).lower()
    if model not in ("full", "planar"):
        raise ConfigValidationError(f"model must be 'full' or 'planar', got {model!r}")
    c = data.get("controller") or {}
    gains = {k: c[k] for k in ("K_py", "K_dy", "K_pc", "K_dc") if c.get(k) is not None}
    refs = {k: _vec(c.get(k)) for k in ("y_ref", "dy_ref", "qc_ref", "dqc_ref")}
    controller = ControllerConfig(mode=str(c.get("mode", "coupled")).lower(), kind=model,
                                  params=_params(c.get("params")), **gains, **refs)

    init = data.get("initial") or {}
    q0 = init.get("q")
    if q0 is None:
        q0 = PLANAR_Q0 if model == "planar" else ScenarioConfig().q0
    wind = data.get("wind")
    if wind is not None:
        wind = DisturbanceProfile(**{k: v for k, v in wind.items() if v is not None})
    noise = data.get("noise")
    if noise is not None:
        noise = NoiseConfig(**{k: v for k, v in noise.items() if v is not None})

    cfg = ScenarioConfig(
        plant_params=_params(data.get("plant")),
        controller=controller,
        q0=q0,
        dq0=init.get("dq"),
        duration=float(data.get("duration", 30.0)),
        dt=float(data.get("dt", 0.001)),
        wind=wind,
        noise=noise,
        seed=int(data.get("seed", 0)),
        model=model,
        name=str(data.get("name", "case_a")),
    )
    cfg.validate()
    return cfg
