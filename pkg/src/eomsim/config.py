"""Parameter documents and run configuration.

A parameter document is a flat mapping in external units: frequencies and rates
as linear frequency in Hz (keys ending in ``_hz``), temperature in kelvin,
power in watts, detunings as multiples of the mechanical frequency. It is turned
into :class:`~eomsim.model_weak.WeakParams` or
:class:`~eomsim.model_strong.StrongParams` by :func:`resolve_params`.
"""

from dataclasses import dataclass, field
import json
import math

from .errors import ConfigError
from .model_strong import StrongParams
from .model_weak import WeakParams
from .units import drive_amplitude_from_power, hz

MODELS = ("weak", "strong")
COMMANDS = ("steady", "sweep", "figure", "validate")

_COMMON = {
    "omega_b_hz": 20e9,
    "kappa_b_hz": 1e6,
    "kappa_c_hz": 1e9,
    "kappa_x_hz": 100e6,
    "G0_hz": 10e6,
    "T_k": 1.0,
}

DEFAULTS = {
    "weak": {
        **_COMMON,
        "g_hz": 0.9e9,
        "omega_0_hz": 345e12,
        "delta_x_over_omega_b": -1.1,
        "delta_c_eff_over_omega_b": 0.9,
        "Omega_hz": 6e12,
        "power_w": None,
    },
    "strong": {
        **_COMMON,
        "g_hz": 13e9,
        "omega_x_hz": 345e12,
        "omega_c_hz": None,
        "delta_u_over_omega_b": 1.0,
        "omega_0_hz": None,
        "Omega_hz": None,
        "power_w": None,
        "target_Gl_hz": 0.6e9,
        "paper_approx": False,
    },
}

# key -> (constraint, nullable)
_RULES = {
    "omega_b_hz": ("> 0", False),
    "kappa_b_hz": ("> 0", False),
    "kappa_c_hz": ("> 0", False),
    "kappa_x_hz": ("> 0", False),
    "G0_hz": (">= 0", False),
    "T_k": (">= 0", False),
    "g_hz": ("> 0", False),
    "omega_0_hz": ("> 0", True),
    "omega_x_hz": ("> 0", False),
    "omega_c_hz": ("> 0", True),
    "delta_x_over_omega_b": ("real", False),
    "delta_c_eff_over_omega_b": ("real", False),
    "delta_u_over_omega_b": ("> 0", True),
    "Omega_hz": (">= 0", True),
    "power_w": (">= 0", True),
    "target_Gl_hz": (">= 0", True),
    "paper_approx": ("bool", False),
}

_DRIVE_KEYS = ("Omega_hz", "power_w", "target_Gl_hz")
_CAVITY_KEYS = ("omega_c_hz", "delta_u_over_omega_b")


def parameter_paths(model):
    _check_model(model)
    return sorted(DEFAULTS[model])


def _check_model(model):
    if model not in MODELS:
        raise ConfigError(f"model must be one of {', '.join(MODELS)}, got {model!r}")


def _check_value(key, value):
    rule, nullable = _RULES[key]
    if value is None:
        if nullable:
            return None
        raise ConfigError(f"{key} must not be null")
    if rule == "bool":
        if not isinstance(value, bool):
            raise ConfigError(f"{key} must be true or false")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite")
    if rule == "> 0" and not value > 0:
        raise ConfigError(f"{key} must be > 0")
    if rule == ">= 0" and not value >= 0:
        raise ConfigError(f"{key} must be >= 0")
    return value


def merge_params(model, *layers):
    """Overlay parameter layers on the model defaults, validating every key.

    Setting any drive key (``Omega_hz``, ``power_w``, ``target_Gl_hz``) in a layer
    clears the other drive keys inherited from below; likewise for the strong
    model's ``omega_c_hz`` / ``delta_u_over_omega_b`` pair.
    """
    _check_model(model)
    doc = dict(DEFAULTS[model])
    for layer in layers:
        for key, value in (layer or {}).items():
            if key not in doc:
                raise ConfigError(
                    f"unknown parameter {key!r} for the {model} model; valid: {', '.join(sorted(doc))}")
            for group in (_DRIVE_KEYS, _CAVITY_KEYS):
                if key in group and value is not None:
                    for other in group:
                        if other != key and other in doc:
                            doc[other] = None
            doc[key] = _check_value(key, value)
    return doc


def resolve_params(model, doc):
    """Turn a merged parameter document into model parameters (angular units)."""
    doc = merge_params(model, doc)
    w_b = hz(doc["omega_b_hz"])
    drive = [k for k in _DRIVE_KEYS if doc.get(k) is not None]
    if len(drive) != 1:
        raise ConfigError(f"exactly one drive key must be set, got {drive or 'none'}")
    common = dict(
        omega_b=w_b,
        kappa_x=hz(doc["kappa_x_hz"]),
        kappa_c=hz(doc["kappa_c_hz"]),
        kappa_b=hz(doc["kappa_b_hz"]),
        g=hz(doc["g_hz"]),
        G0=hz(doc["G0_hz"]),
        T=doc["T_k"],
    )
    if model == "weak":
        if drive[0] == "target_Gl_hz":
            raise ConfigError("target_Gl_hz is only available for the strong model")
        w0 = hz(doc["omega_0_hz"])
        if doc["power_w"] is not None:
            Omega = drive_amplitude_from_power(doc["power_w"], common["kappa_c"], w0)
        else:
            Omega = hz(doc["Omega_hz"])
        return WeakParams(
            delta_x=doc["delta_x_over_omega_b"] * w_b,
            delta_c_eff=doc["delta_c_eff_over_omega_b"] * w_b,
            Omega=Omega,
            omega_0=w0,
            **common,
        )

    w_x = hz(doc["omega_x_hz"])
    cavity = [k for k in _CAVITY_KEYS if doc.get(k) is not None]
    if len(cavity) != 1:
        raise ConfigError("exactly one of omega_c_hz and delta_u_over_omega_b must be set")
    if cavity[0] == "delta_u_over_omega_b":
        # drive at the midpoint: delta_u = -delta_l = sqrt((w_c - w_x)^2 + 4 g^2)/2
        d_u = doc["delta_u_over_omega_b"] * w_b
        if d_u < common["g"]:
            raise ConfigError(
                f"delta_u_over_omega_b must be >= g/omega_b = {common['g'] / w_b:.6g} under the midpoint rule")
        if doc["omega_0_hz"] is not None:
            raise ConfigError("delta_u_over_omega_b fixes the drive at the midpoint; omit omega_0_hz")
        w_c = w_x + 2.0 * math.sqrt(d_u**2 - common["g"] ** 2)
        w0 = None
    else:
        w_c = hz(doc["omega_c_hz"])
        w0 = hz(doc["omega_0_hz"]) if doc["omega_0_hz"] is not None else None
    w0_eff = w0 if w0 is not None else 0.5 * (w_x + w_c)
    Omega = target = None
    if drive[0] == "power_w":
        Omega = drive_amplitude_from_power(doc["power_w"], common["kappa_c"], w0_eff)
    elif drive[0] == "Omega_hz":
        Omega = hz(doc["Omega_hz"])
    else:
        target = hz(doc["target_Gl_hz"])
    return StrongParams(
        omega_x=w_x, omega_c=w_c, Omega=Omega, target_Gl=target, omega_0=w0,
        paper_approx=doc["paper_approx"], **common)


@dataclass
class AxisConfig:
    path: str
    min: float
    max: float
    count: int
    scale: str = "linear"


@dataclass
class RunConfig:
    command: str
    model: str = None
    params: dict = field(default_factory=dict)
    name: str = None
    axes: list = field(default_factory=list)
    observables: list = None
    overrides: dict = field(default_factory=dict)
    out: str = None
    plot: bool = False
    resolved: object = None  # SweepSpec for sweep/figure commands


_TOP_KEYS = {"command", "model", "params", "name", "axes", "observables", "overrides", "out", "plot"}


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def parse_config(text):
    """Parse and validate a JSON run configuration.

    Parameter keys may sit at the top level or under ``"params"``. For the
    ``figure`` command the named preset is expanded, so the returned config
    carries the preset's model, parameters and axes.
    """
    from .sweeps import figure_preset, SweepSpec  # sweeps imports this module

    data = _loads(text)
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    command = data.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"command must be one of {', '.join(COMMANDS)}, got {command!r}")

    params = dict(data.get("params") or {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    known_params = set(DEFAULTS["weak"]) | set(DEFAULTS["strong"])
    for key, value in data.items():
        if key in _TOP_KEYS:
            continue
        if key in known_params:
            if key in params:
                raise ConfigError(f"{key} given both at top level and under params")
            params[key] = value
        else:
            raise ConfigError(f"unknown key {key!r}")

    plot = data.get("plot", False)
    if not isinstance(plot, bool):
        raise ConfigError("plot must be true or false")
    out = data.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError("out must be a path string")
    overrides = data.get("overrides") or {}
    if not isinstance(overrides, dict):
        raise ConfigError("overrides must be an object")
    cfg = RunConfig(command=command, out=out, plot=plot, overrides=dict(overrides))

    if command == "validate":
        if params or data.get("model"):
            raise ConfigError("validate takes no model parameters")
        return cfg

    if command == "figure":
        if params:
            raise ConfigError("figure takes overrides, not params")
        spec = figure_preset(data.get("name"))
        spec = spec.with_overrides(overrides)
        cfg.name, cfg.model, cfg.params = spec.name, spec.model, dict(spec.fixed)
        cfg.axes = [AxisConfig(a.path, a.min, a.max, a.count, a.scale) for a in spec.axes]
        cfg.observables = spec.observables
        cfg.resolved = spec
        return cfg

    if overrides:
        raise ConfigError("overrides are only accepted by the figure command")
    model = data.get("model")
    _check_model(model)
    cfg.model = model
    merge_params(model, params)  # fail fast on bad keys/values
    cfg.params = params
    if command == "steady":
        if "axes" in data:
            raise ConfigError("steady evaluates a single point; remove axes")
        resolve_params(model, params)
        return cfg

    axes = data.get("axes")
    if not isinstance(axes, list) or not 1 <= len(axes) <= 2:
        raise ConfigError("sweep needs 'axes': a list of one or two axis objects")
    for a in axes:
        if not isinstance(a, dict):
            raise ConfigError("each axis must be an object")
        extra = set(a) - {"path", "min", "max", "count", "scale"}
        if extra:
            raise ConfigError(f"unknown axis key(s): {', '.join(sorted(extra))}")
        try:
            cfg.axes.append(AxisConfig(a["path"], a["min"], a["max"], a["count"], a.get("scale", "linear")))
        except KeyError as exc:
            raise ConfigError(f"axis missing {exc.args[0]!r}") from None
    cfg.observables = data.get("observables")
    cfg.name = data.get("name")
    if cfg.name is not None and not isinstance(cfg.name, str):
        raise ConfigError("name must be a string")
    cfg.resolved = SweepSpec.from_run_config(cfg)
    return cfg
