"""Command-line interface.

Subcommands:
  solve       energy balance of one ramp on a mode grid
  sweep       residual energy across ramp durations (and couplings)
  sta-design  shortcut trajectory table with its validity certificate
  accidental  lattice-driven protocols with free-evolution stopping times
  figure      run a bundled preset by id (fig2..fig8)

Exit codes: 0 success, 2 configuration or usage error, 3 solver failure
(singular or stiff trajectory, missing root, broken consistency), 4
instability (coupling beyond threshold or negative designed gap).

Output is deterministic: CSV uses LF newlines and fixed significant
digits; JSON is sorted by key.  Numbers that could not be computed are
written as empty CSV cells / JSON nulls.
"""

import functools
import json
import math
import sys
from importlib import resources

import click
import numpy as np

from . import __version__
from . import config as cfgmod
from . import observables, protocols
from ._backend import BACKEND
from .errors import (
    ConfigError,
    ConsistencyError,
    DomainError,
    IncompleteGridError,
    InstabilityError,
    LinearDependenceError,
    OverflowRangeError,
    RootNotFoundError,
    SingularityError,
    StiffnessError,
)

_RUNTIME_ERRORS = (
    SingularityError,
    StiffnessError,
    RootNotFoundError,
    ConsistencyError,
    IncompleteGridError,
    OverflowRangeError,
    LinearDependenceError,
)

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8")


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ConfigError, DomainError) as e:
            click.echo("error: %s" % (e,), err=True)
            sys.exit(2)
        except _RUNTIME_ERRORS as e:
            click.echo("error: %s" % (e,), err=True)
            sys.exit(3)
        except InstabilityError as e:
            click.echo("error: %s" % (e,), err=True)
            sys.exit(4)

    return wrapper


def _format_cell(value, precision):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return ""
    return "%.*g" % (precision, v)


def _write_text(out, text):
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _write_csv(out, header, rows, precision):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_cell(c, precision) for c in row))
    _write_text(out, "\n".join(lines) + "\n")


def _sanitize(obj):
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _write_json(out, doc):
    text = json.dumps(_sanitize(doc), sort_keys=True, indent=2) + "\n"
    _write_text(out, text)


def _rows_to_json(header, rows):
    return [dict(zip(header, row)) for row in rows]


def _load(config_path, fmt, tol):
    cfg = cfgmod.load_config(config_path)
    return _apply_overrides(cfg, fmt, tol)


def _apply_overrides(cfg, fmt, tol):
    if fmt is not None:
        cfg.format = fmt
    if tol is not None:
        if not (1e-12 <= tol <= 1e-4):
            raise ConfigError("--tol must lie in [1e-12, 1e-4]")
        cfg.tol = tol
    return cfg


def common_options(fn):
    fn = click.option(
        "--config",
        "config_path",
        type=click.Path(exists=True, dir_okay=False),
        required=True,
        help="run configuration (TOML)",
    )(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False), default=None,
                      help="output file (default: stdout)")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      default=None, help="override [output].format")(fn)
    fn = click.option("--tol", type=float, default=None,
                      help="override [numerics].tol")(fn)
    fn = click.option("--threads", type=int, default=1,
                      help="worker threads for per-mode solves")(fn)
    return fn


@click.group()
@click.version_option(version=__version__, message="%(prog)s %(version)s")
def main():
    """Exact finite-time dynamics of a driven one-dimensional quantum
    liquid: per-mode scale-factor equations, shortcut protocols, and
    residual-energy diagnostics."""


# ---------------------------------------------------------------- solve


_TRAJ_HEADER = ("mode", "p", "t", "gamma", "gamma_dot", "gamma_ddot")


def _run_solve(cfg, threads, emit_trajectories):
    if cfg.kind not in ("linear", "poly5", "inverse_poly", "constant"):
        raise ConfigError(
            "solve handles coupling ramps; use sta-design or accidental "
            "for kind %r" % (cfg.kind,),
            field="protocol.kind",
        )
    grid = cfgmod.build_grid(cfg)
    schedule = cfgmod.build_schedule(cfg)
    times = np.linspace(0.0, cfg.tau_q, cfg.samples)
    trajectories = None
    if cfg.kind != "constant" or emit_trajectories:
        trajectories = observables.solve_grid(
            schedule, grid, times=times, tol=cfg.tol, method=cfg.method,
            threads=threads,
        )
    report = observables.energy_report(
        schedule,
        grid,
        beta0=cfg.beta0,
        tol=cfg.tol,
        method=cfg.method,
        trajectories=None if cfg.kind == "constant" else trajectories,
        threads=threads,
    )
    doc = {
        "command": "solve",
        "backend": BACKEND,
        "report": report.to_json_dict(),
    }
    traj_rows = []
    if emit_trajectories:
        wanted = set(cfg.trajectory_modes) or None
        if wanted is not None and max(wanted) > grid.n_max:
            raise ConfigError(
                "output.trajectory_modes includes mode %d beyond n_max=%d"
                % (max(wanted), grid.n_max),
                field="output.trajectory_modes",
            )
        selected = [
            (i + 1, tr)
            for i, tr in enumerate(trajectories)
            if wanted is None or (i + 1) in wanted
        ]
        traj_rows = [
            (m, tr.p, t, tr.gamma[j], tr.gamma_dot[j], tr.gamma_ddot[j])
            for m, tr in selected
            for j, t in enumerate(tr.times)
        ]
        doc["trajectories"] = [
            {
                "mode": m,
                "p": tr.p,
                "times": tr.times,
                "gamma": tr.gamma,
                "gamma_dot": tr.gamma_dot,
                "gamma_ddot": tr.gamma_ddot,
            }
            for m, tr in selected
        ]
    return doc, traj_rows


def _emit_solve(cfg, doc, traj_rows, out, emit_trajectories):
    if cfg.format == "json":
        _write_json(out, doc)
        return
    _write_csv(
        out,
        observables.EnergyReport.csv_header().split(","),
        [[doc["report"][k] for k in observables.EnergyReport._FIELDS]],
        cfg.precision,
    )
    if emit_trajectories:
        if out is None:
            raise ConfigError(
                "--emit-trajectories with csv output requires --out"
            )
        _write_csv(out + ".traj.csv", _TRAJ_HEADER, traj_rows, cfg.precision)


@main.command()
@common_options
@click.option("--emit-trajectories", is_flag=True,
              help="also write per-mode trajectories")
@_guard
def solve(config_path, out, fmt, tol, threads, emit_trajectories):
    """Solve every grid mode of one ramp and report the energy balance."""
    cfg = _load(config_path, fmt, tol)
    doc, traj_rows = _run_solve(cfg, threads, emit_trajectories)
    _emit_solve(cfg, doc, traj_rows, out, emit_trajectories)


# ---------------------------------------------------------------- sweep


_SWEEP_HEADER = (
    "protocol",
    "alpha",
    "tau_q",
    "tau_ratio",
    "mean_energy",
    "adiabatic_energy",
    "sudden_energy",
    "residual",
    "pert_alpha2",
    "pert_exact",
    "status",
)

_SWEEP_INVPOLY_HEADER = (
    "protocol",
    "alpha",
    "tau_q",
    "b_coeff",
    "residual_closed",
    "residual_numeric",
    "rel_diff",
    "status",
)


def _sweep_row(cfg, alpha, tau_q):
    v_f, r0, length_l = cfg.v_f, cfg.r0, cfg.length_l
    schedule = cfgmod.build_schedule(cfg, alpha=alpha, tau_q=tau_q)
    if cfg.kind == "inverse_poly":
        closed = observables.residual_inverse_poly(
            schedule.b_coeff, v_f, r0, length_l
        )
        numeric = math.nan
        rel = math.nan
        if any(abs(tau_q - c) <= 1e-12 * max(1.0, c) for c in cfg.sweep_check):
            numeric = observables.residual_energy_continuum(
                schedule, r0, length_l, method="numeric", tol=cfg.tol,
                ir_cutoff=2.0 * math.pi / length_l,
            )
            rel = numeric / closed - 1.0
        return (cfg.kind, schedule.alpha, tau_q, schedule.b_coeff, closed,
                numeric, rel, "ok")
    method = "airy" if cfg.kind == "linear" else "numeric"
    residual = observables.residual_energy_continuum(
        schedule, r0, length_l, method=method, tol=cfg.tol
    )
    adiabatic = observables.adiabatic_energy(alpha, v_f, r0, length_l)
    sudden = observables.sudden_energy(alpha, v_f, r0, length_l)
    mean = adiabatic + residual
    tau0 = r0 / (2.0 * v_f)
    x = (tau_q / tau0) ** 2
    pert_alpha2 = observables.perturbative_residual_linear(
        alpha, tau_q, v_f, r0, length_l
    )
    pert_exact = (sudden - adiabatic) * math.log1p(x) / x
    return (cfg.kind, alpha, tau_q, tau_q / tau0, mean, adiabatic, sudden,
            residual, pert_alpha2, pert_exact, "ok")


def _run_sweep(cfg):
    if cfg.kind not in ("linear", "poly5", "inverse_poly"):
        raise ConfigError(
            "sweep handles ramp kinds, not %r" % (cfg.kind,),
            field="protocol.kind",
        )
    if not cfg.sweep_tau_q:
        raise ConfigError("sweep requires a [sweep].tau_q list",
                          field="sweep.tau_q")
    alphas = cfg.sweep_alpha or (cfg.alpha,)
    invpoly = cfg.kind == "inverse_poly"
    header = _SWEEP_INVPOLY_HEADER if invpoly else _SWEEP_HEADER
    rows = []
    failures = 0
    for alpha in alphas:
        for tau_q in cfg.sweep_tau_q:
            try:
                rows.append(_sweep_row(cfg, alpha, tau_q))
            except _RUNTIME_ERRORS + (InstabilityError,) as e:
                failures += 1
                nan = math.nan
                pad = (nan,) * (len(header) - 4)
                rows.append((cfg.kind, alpha, tau_q) + pad
                            + (type(e).__name__,))
    return header, rows, failures


def _emit_sweep(cfg, header, rows, out):
    if cfg.format == "json":
        _write_json(out, {
            "command": "sweep",
            "backend": BACKEND,
            "columns": list(header),
            "rows": _rows_to_json(header, rows),
        })
    else:
        _write_csv(out, header, rows, cfg.precision)


@main.command()
@common_options
@_guard
def sweep(config_path, out, fmt, tol, threads, **_):
    """Residual energy across the configured tau_q (and alpha) lists.

    For linear ramps each row carries the second-order slow-ramp
    prediction under two normalizations: pert_alpha2 uses the quadratic
    coupling scale, pert_exact anchors the same shape function to the
    exact sudden-minus-adiabatic gap.  Failed points are marked in the
    status column and the sweep continues (exit 3 at the end).
    """
    cfg = _load(config_path, fmt, tol)
    header, rows, failures = _run_sweep(cfg)
    _emit_sweep(cfg, header, rows, out)
    if failures:
        click.echo("error: %d sweep point(s) failed" % failures, err=True)
        sys.exit(3)


# ----------------------------------------------------------- sta-design


_STA_HEADER = (
    "t",
    "gamma",
    "gamma_dot",
    "gamma_ddot",
    "k",
    "v_s",
    "delta",
    "v0_lattice",
    "energy",
)


def _run_sta(cfg):
    gs = cfgmod.build_gamma_schedule(cfg)
    times = np.linspace(0.0, gs.tau_q, cfg.samples)
    rows = []
    delta_min = math.inf
    for t in times:
        g, gd, gdd = protocols.sta_gamma(gs, t)
        delta = protocols.sine_gordon_gap(g, gd, gdd, g, gd)
        delta_min = min(delta_min, delta)
        rows.append(
            (
                t,
                g,
                gd,
                gdd,
                g * g,
                cfg.v_f / (g * g),
                delta,
                protocols.lattice_potential_from_gamma(g, gdd, cfg.v_f,
                                                       cfg.rho0),
                observables.sg_mean_energy(g, gd, gdd, g, gd, cfg.v_f,
                                           cfg.r0, cfg.length_l),
            )
        )
    g0, gd0, gdd0 = protocols.sta_gamma(gs, 0.0)
    gf, gdf, gddf = protocols.sta_gamma(gs, gs.tau_q)
    energy_end = rows[-1][-1]
    target = (cfg.length_l / (2.0 * math.pi)) * (
        cfg.v_f / (gs.gamma_f ** 2)
    ) / (cfg.r0 ** 2)
    gap_tol = max(cfg.tol, 1e-12)
    certificate = {
        "gamma_start": g0,
        "gamma_end": gf,
        "gamma_start_dev": abs(g0 - gs.gamma0),
        "gamma_end_dev": abs(gf - gs.gamma_f),
        "rate_start": gd0,
        "rate_end": gdf,
        "curvature_start": gdd0,
        "curvature_end": gddf,
        "initial_rate_nonzero": gs.initial_rate_nonzero,
        "delta_min": delta_min,
        "gap_nonnegative": bool(delta_min >= -gap_tol),
        "energy_end": energy_end,
        "adiabatic_target": target,
        "energy_end_dev": abs(energy_end / target - 1.0),
        "endpoints_matched": bool(
            abs(g0 - gs.gamma0) <= 1e-12 * gs.gamma0
            and abs(gf - gs.gamma_f) <= 1e-12 * gs.gamma_f
            and abs(gdf) <= 1e-10
            and abs(gddf) <= 1e-8
        ),
        "energy_matched": bool(abs(energy_end / target - 1.0) <= 1e-8),
    }
    return rows, certificate


def _certificate_lines(c):
    yield "certificate:"
    for key in sorted(c):
        v = c[key]
        if isinstance(v, bool):
            yield "  %s: %s" % (key, "yes" if v else "no")
        elif isinstance(v, float):
            yield "  %s: %.17g" % (key, v)
        else:
            yield "  %s: %s" % (key, v)


def _emit_sta(cfg, rows, certificate, out):
    if cfg.format == "json":
        _write_json(out, {
            "command": "sta-design",
            "backend": BACKEND,
            "columns": list(_STA_HEADER),
            "rows": _rows_to_json(_STA_HEADER, rows),
            "certificate": certificate,
        })
    else:
        _write_csv(out, _STA_HEADER, rows, cfg.precision)
        for line in _certificate_lines(certificate):
            click.echo(line, err=True)


@main.command("sta-design")
@common_options
@_guard
def sta_design(config_path, out, fmt, tol, threads, **_):
    """Design table and validity certificate for a shortcut trajectory.

    Emits (t, gamma, K, effective velocity, designed gap, lattice
    amplitude, instantaneous energy) with the expansion point locked to
    the trajectory, then certifies endpoint matching, gap positivity,
    and the final energy against the adiabatic target.  A negative gap
    beyond tolerance exits with code 4.
    """
    cfg = _load(config_path, fmt, tol)
    rows, certificate = _run_sta(cfg)
    _emit_sta(cfg, rows, certificate, out)
    if not certificate["gap_nonnegative"]:
        click.echo("error: designed gap is negative beyond tolerance",
                   err=True)
        sys.exit(4)


# ----------------------------------------------------------- accidental


_ACC_HEADER = ("t", "gamma", "gamma_dot", "k")


def _run_accidental(cfg):
    if cfg.kind == "accidental_constant":
        proto = protocols.accidental_sta_constant(
            cfg.v0, cfg.rho0, cfg.v_f, cfg.gamma0, cfg.gamma_dot0
        )
        n0 = 0 if proto.t_n(0) >= 0.0 else 1
        t_end = proto.t_n(n0 + 1)
        summary = {
            "kind": cfg.kind,
            "w": proto.w,
            "stationary_times": [proto.t_n(n0 + k) for k in range(4)],
            "amplitude": proto.amplitude(),
            "k_at_stationary": proto.amplitude() ** 2,
            "end_curvature": proto.end_curvature(n0),
            "rate_residual": abs(proto.gamma_dot(proto.t_n(n0))),
        }
    elif cfg.kind == "accidental_linear":
        proto = protocols.accidental_sta_linear(
            cfg.alpha_ramp, cfg.rho0, cfg.v_f, cfg.gamma0
        )
        t_end = proto.tau_q
        summary = {
            "kind": cfg.kind,
            "ramp_slope": proto.d,
            "tau_q": proto.tau_q,
            "k_final": proto.k_parameter(proto.tau_q),
            "rate_residual": abs(proto.gamma_dot(proto.tau_q)),
        }
    else:
        raise ConfigError(
            "accidental handles accidental_constant / accidental_linear, "
            "not %r" % (cfg.kind,),
            field="protocol.kind",
        )
    times = np.linspace(0.0, t_end, cfg.samples)
    rows = [
        (t, proto.gamma(t), proto.gamma_dot(t), proto.gamma(t) ** 2)
        for t in times
    ]
    return rows, summary


def _emit_accidental(cfg, rows, summary, out):
    if cfg.format == "json":
        _write_json(out, {
            "command": "accidental",
            "backend": BACKEND,
            "columns": list(_ACC_HEADER),
            "rows": _rows_to_json(_ACC_HEADER, rows),
            "summary": summary,
        })
    else:
        _write_csv(out, _ACC_HEADER, rows, cfg.precision)
        for key in sorted(summary):
            v = summary[key]
            if isinstance(v, float):
                click.echo("%s: %.17g" % (key, v), err=True)
            else:
                click.echo("%s: %s" % (key, v), err=True)


@main.command()
@common_options
@_guard
def accidental(config_path, out, fmt, tol, threads, **_):
    """Lattice-driven protocols whose free evolution lands on a shortcut.

    accidental_constant: fixed lattice amplitude; reports the stationary
    times t_n where the scale-factor velocity vanishes and samples one
    arch of K(t).  accidental_linear: linearly ramped amplitude; finds
    the first stationary time tau_q and samples K(t) up to it.
    """
    cfg = _load(config_path, fmt, tol)
    rows, summary = _run_accidental(cfg)
    _emit_accidental(cfg, rows, summary, out)


# --------------------------------------------------------------- figure


_FIGURE_COMMANDS = {
    "fig2": "sta",
    "fig3": "accidental",
    "fig4": "solve",
    "fig5": "sta",
    "fig6": "sweep",
    "fig7": "timeseries",
    "fig8": "sweep",
}

_TIMESERIES_HEADER = (
    "tau_q", "t", "mean_energy", "adiabatic_energy", "sudden_energy",
)


def _run_timeseries(cfg, threads):
    grid = cfgmod.build_grid(cfg)
    rows = []
    for tau_q in cfg.sweep_tau_q or (cfg.tau_q,):
        schedule = cfgmod.build_schedule(cfg, tau_q=tau_q)
        times = np.linspace(0.0, tau_q, cfg.samples)
        trajs = observables.solve_grid(
            schedule, grid, times=times, tol=cfg.tol, method=cfg.method,
            threads=threads,
        )
        report = observables.energy_report(
            schedule, grid, beta0=cfg.beta0, tol=cfg.tol,
            trajectories=trajs,
        )
        for t in times:
            rows.append(
                (
                    tau_q,
                    t,
                    observables.mean_energy(trajs, grid, t, cfg.beta0),
                    report.adiabatic_energy,
                    report.sudden_energy,
                )
            )
    return rows


def load_preset(figure_id):
    """RunConfig of a bundled figure preset."""
    text = (
        resources.files("tll").joinpath("presets", figure_id + ".toml")
        .read_text(encoding="utf-8")
    )
    return cfgmod.loads(text)


@main.command()
@click.argument("figure_id", type=click.Choice(FIGURE_IDS))
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="output file (default: <id>.<format>)")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default=None)
@click.option("--tol", type=float, default=None)
@click.option("--threads", type=int, default=1)
@_guard
def figure(figure_id, out, fmt, tol, threads):
    """Reproduce a bundled preset end to end (fig2..fig8)."""
    cfg = _apply_overrides(load_preset(figure_id), fmt, tol)
    if out is None:
        out = "%s.%s" % (figure_id, cfg.format)
    role = _FIGURE_COMMANDS[figure_id]
    failures = 0
    gap_failed = False
    if role == "solve":
        emit_traj = bool(cfg.trajectory_modes)
        doc, traj_rows = _run_solve(cfg, threads, emit_traj)
        _emit_solve(cfg, doc, traj_rows, out, emit_traj)
    elif role == "sweep":
        header, rows, failures = _run_sweep(cfg)
        _emit_sweep(cfg, header, rows, out)
    elif role == "sta":
        rows, certificate = _run_sta(cfg)
        _emit_sta(cfg, rows, certificate, out)
        gap_failed = not certificate["gap_nonnegative"]
    elif role == "accidental":
        rows, summary = _run_accidental(cfg)
        _emit_accidental(cfg, rows, summary, out)
    else:
        rows = _run_timeseries(cfg, threads)
        if cfg.format == "json":
            _write_json(out, {
                "command": "figure-timeseries",
                "backend": BACKEND,
                "columns": list(_TIMESERIES_HEADER),
                "rows": _rows_to_json(_TIMESERIES_HEADER, rows),
            })
        else:
            _write_csv(out, _TIMESERIES_HEADER, rows, cfg.precision)
    click.echo("%s -> %s" % (figure_id, out), err=True)
    if failures:
        sys.exit(3)
    if gap_failed:
        sys.exit(4)


if __name__ == "__main__":
    main()
