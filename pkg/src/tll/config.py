"""Run configuration: TOML schema, validation, and normalized emission.

A run file has up to six tables; every key has a default, so the minimal
valid config is an empty document.  Unknown tables or keys are rejected
with the offending dotted path.  emit() produces a normalized document
(fixed ordering, unit comments) that parses back to an equal RunConfig.
"""

import io
import math
from dataclasses import dataclass, fields

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import model, protocols
from .errors import ConfigError

PROTOCOL_KINDS = (
    "linear",
    "poly5",
    "inverse_poly",
    "constant",
    "sta_p4",
    "sta_p5",
    "accidental_constant",
    "accidental_linear",
)


@dataclass(eq=False)
class RunConfig:
    # [protocol]
    kind: str = "linear"
    alpha: float = 0.5
    tau_q: float = 1.0
    b_coeff: float = math.nan  # nan: derive from alpha for inverse_poly
    gamma0: float = 1.0
    gamma_f: float = 1.0
    gamma_dot0: float = 0.0
    v0: float = 1.0
    alpha_ramp: float = 1.0
    # [physics]
    v_f: float = 1.0
    beta0: float = math.inf
    rho0: float = 0.3183098861837907
    # [grid]
    length_l: float = 100.0
    r0: float = 1.0
    n_max: int = 0  # 0: choose automatically from the regulator tail
    nu: float = 1.0
    # [numerics]
    tol: float = 1e-10
    samples: int = 201
    method: str = "numeric"
    # [output]
    format: str = "csv"
    precision: int = 17
    trajectory_modes: tuple = ()
    # [sweep]
    sweep_tau_q: tuple = ()
    sweep_alpha: tuple = ()
    sweep_check: tuple = ()

    # field-wise equality that treats the nan sentinel (b_coeff unset) as
    # equal to itself, so loads(emit(cfg)) == cfg holds for every config
    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        for f in fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            if a == b:
                continue
            if (
                isinstance(a, float)
                and isinstance(b, float)
                and math.isnan(a)
                and math.isnan(b)
            ):
                continue
            return False
        return True


# section -> key -> (attribute, kind, comment); kind in
# {"str", "float", "int", "float_list", "int_list"}
_SCHEMA = {
    "protocol": {
        "kind": ("kind", "str", "|".join(PROTOCOL_KINDS)),
        "alpha": ("alpha", "float", "target coupling, velocity units"),
        "tau_q": ("tau_q", "float", "ramp duration, units r0/v_f"),
        "b_coeff": ("b_coeff", "float", "inverse_poly rate; nan derives it from alpha"),
        "gamma0": ("gamma0", "float", "initial scale factor"),
        "gamma_f": ("gamma_f", "float", "final scale factor (sta kinds)"),
        "gamma_dot0": ("gamma_dot0", "float", "initial scale velocity (accidental_constant)"),
        "v0": ("v0", "float", "lattice amplitude (accidental_constant)"),
        "alpha_ramp": ("alpha_ramp", "float", "lattice ramp slope (accidental_linear)"),
    },
    "physics": {
        "v_f": ("v_f", "float", "bare velocity"),
        "beta0": ("beta0", "float", "initial inverse temperature; inf = ground state"),
        "rho0": ("rho0", "float", "mean density (lattice protocols)"),
    },
    "grid": {
        "length_l": ("length_l", "float", "system size"),
        "r0": ("r0", "float", "regulator length"),
        "n_max": ("n_max", "int", "mode count; 0 = automatic"),
        "nu": ("nu", "float", "boundary-condition offset"),
    },
    "numerics": {
        "tol": ("tol", "float", "integrator relative tolerance"),
        "samples": ("samples", "int", "time samples per trajectory"),
        "method": ("method", "str", "numeric|airy"),
    },
    "output": {
        "format": ("format", "str", "csv|json"),
        "precision": ("precision", "int", "significant digits in csv"),
        "trajectory_modes": ("trajectory_modes", "int_list", "mode indices to emit; empty = all"),
    },
    "sweep": {
        "tau_q": ("sweep_tau_q", "float_list", "ramp durations"),
        "alpha": ("sweep_alpha", "float_list", "couplings; empty = [protocol.alpha]"),
        "check": ("sweep_check", "float_list", "tau_q values to cross-check numerically"),
    },
}


def _coerce(section, key, kind, value):
    path = "%s.%s" % (section, key)
    if kind == "str":
        if not isinstance(value, str):
            raise ConfigError("%s must be a string" % path, field=path)
        return value
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError("%s must be a number" % path, field=path)
        return float(value)
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError("%s must be an integer" % path, field=path)
        return value
    if not isinstance(value, list):
        raise ConfigError("%s must be an array" % path, field=path)
    out = []
    for i, item in enumerate(value):
        if isinstance(item, bool) or not isinstance(
            item, int if kind == "int_list" else (int, float)
        ):
            raise ConfigError(
                "%s[%d] has the wrong type" % (path, i), field=path
            )
        out.append(item if kind == "int_list" else float(item))
    return tuple(out)


def loads(text):
    """Parse a TOML document into a validated RunConfig."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError("invalid TOML: %s" % (e,)) from e
    cfg = RunConfig()
    for section, table in doc.items():
        if section not in _SCHEMA:
            raise ConfigError("unknown table [%s]" % section, field=section)
        if not isinstance(table, dict):
            raise ConfigError("[%s] must be a table" % section, field=section)
        for key, value in table.items():
            if key not in _SCHEMA[section]:
                raise ConfigError(
                    "unknown key %s.%s" % (section, key),
                    field="%s.%s" % (section, key),
                )
            attr, kind, _ = _SCHEMA[section][key]
            setattr(cfg, attr, _coerce(section, key, kind, value))
    _validate(cfg)
    return cfg


def load_config(path):
    with open(path, "rb") as fh:
        text = fh.read().decode("utf-8")
    return loads(text)


def _require(ok, path, message):
    if not ok:
        raise ConfigError("%s: %s" % (path, message), field=path)


def _validate(cfg):
    _require(cfg.kind in PROTOCOL_KINDS, "protocol.kind",
             "must be one of %s" % (", ".join(PROTOCOL_KINDS),))
    _require(cfg.tau_q > 0.0, "protocol.tau_q", "must be positive")
    _require(cfg.gamma0 > 0.0, "protocol.gamma0", "must be positive")
    _require(cfg.gamma_f > 0.0, "protocol.gamma_f", "must be positive")
    _require(cfg.v_f > 0.0, "physics.v_f", "must be positive")
    _require(cfg.beta0 > 0.0, "physics.beta0", "must be positive")
    _require(cfg.rho0 > 0.0, "physics.rho0", "must be positive")
    _require(cfg.length_l > 0.0, "grid.length_l", "must be positive")
    _require(cfg.r0 > 0.0, "grid.r0", "must be positive")
    _require(cfg.n_max >= 0, "grid.n_max", "must be nonnegative")
    _require(1e-12 <= cfg.tol <= 1e-4, "numerics.tol",
             "must lie in [1e-12, 1e-4]")
    _require(cfg.samples >= 2, "numerics.samples", "must be at least 2")
    _require(cfg.method in ("numeric", "airy"), "numerics.method",
             "must be numeric or airy")
    _require(cfg.format in ("csv", "json"), "output.format",
             "must be csv or json")
    _require(6 <= cfg.precision <= 17, "output.precision",
             "must lie in [6, 17]")
    _require(all(n >= 1 for n in cfg.trajectory_modes),
             "output.trajectory_modes", "mode indices start at 1")
    _require(all(t > 0 for t in cfg.sweep_tau_q), "sweep.tau_q",
             "durations must be positive")


def _fmt_value(v):
    if isinstance(v, str):
        return '"%s"' % v
    if isinstance(v, tuple):
        return "[%s]" % ", ".join(_fmt_value(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return repr(v)


def emit(cfg):
    """Normalized TOML text for a RunConfig; loads(emit(cfg)) == cfg."""
    out = io.StringIO()
    for section, table in _SCHEMA.items():
        out.write("[%s]\n" % section)
        for key, (attr, _, comment) in table.items():
            out.write(
                "%s = %s  # %s\n" % (key, _fmt_value(getattr(cfg, attr)), comment)
            )
        out.write("\n")
    return out.getvalue()


def build_grid(cfg):
    if cfg.n_max == 0:
        return model.ModeGrid.auto(cfg.length_l, cfg.r0, nu=cfg.nu)
    return model.ModeGrid(cfg.length_l, cfg.n_max, cfg.r0, nu=cfg.nu)


def build_schedule(cfg, alpha=None, tau_q=None):
    """CouplingSchedule for the ramp kinds (linear, poly5, inverse_poly,
    constant); alpha/tau_q override the config for sweeps."""
    a = cfg.alpha if alpha is None else alpha
    t = cfg.tau_q if tau_q is None else tau_q
    if cfg.kind == "linear":
        return protocols.linear_ramp(a, t, cfg.v_f)
    if cfg.kind == "poly5":
        return protocols.poly5_ramp(a, t, cfg.v_f)
    if cfg.kind == "constant":
        return protocols.constant_coupling(a, cfg.v_f, tau_q=t)
    if cfg.kind == "inverse_poly":
        b = cfg.b_coeff
        if math.isnan(b):
            b = protocols.inverse_poly_b(2.0 * math.pi * a, t, cfg.v_f)
        return protocols.inverse_poly_ramp(b, t, cfg.v_f)
    raise ConfigError(
        "protocol.kind %r is not a coupling ramp" % (cfg.kind,),
        field="protocol.kind",
    )


def build_gamma_schedule(cfg):
    if cfg.kind not in ("sta_p4", "sta_p5"):
        raise ConfigError(
            "protocol.kind %r is not a gamma schedule" % (cfg.kind,),
            field="protocol.kind",
        )
    return protocols.GammaSchedule(
        kind=cfg.kind[4:], gamma0=cfg.gamma0, gamma_f=cfg.gamma_f,
        tau_q=cfg.tau_q,
    )
