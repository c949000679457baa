"""Per-mode auxiliary oscillator equation and its exact solution routes.

The scale factor gamma_p(t) of each mode obeys

    gamma'' + Omega^2(p, t) gamma = omega0p^2 / gamma^3,

with equilibrium initial conditions gamma(0) = gamma0, gamma'(0) = 0 for a
ramp switched on at t = 0.  Three routes are provided:

* direct adaptive integration (solve_ermakov_numeric), with a compiled fast
  path for the built-in coupling schedules;
* superposition of two homogeneous solutions via the nonlinear combination
  gamma = sqrt(u^2 + omega0p^2 v^2) (build_uv / pinney_combine), exact for
  any frequency profile with known homogeneous solutions;
* the closed Airy form for the linear ramp (solve_linear_ramp_airy) and the
  short-time perturbative series (perturbative_gamma).

gamma_ddot is always reported from the equation's right-hand side, never
from finite differences.
"""

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import _backend
from .errors import (
    ConsistencyError,
    DomainError,
    InstabilityError,
    LinearDependenceError,
    SingularityError,
    StiffnessError,
)
from .protocols import ScheduleFrequency

_TOL_MIN = 1e-12
_TOL_MAX = 1e-4


@dataclass
class ErmakovTrajectory:
    """Sampled solution of the auxiliary equation for one mode.

    notes carries route-specific diagnostics (solver statistics, series
    validity warnings); it never affects the numbers.
    """

    p: float
    omega0p: float
    times: np.ndarray
    gamma: np.ndarray
    gamma_dot: np.ndarray
    gamma_ddot: np.ndarray
    method: str
    notes: dict = field(default_factory=dict)

    def at(self, t):
        """(gamma, gamma_dot, gamma_ddot) at a stored sample time."""
        i = int(np.argmin(np.abs(self.times - t)))
        span = abs(self.times[-1] - self.times[0]) or 1.0
        if abs(self.times[i] - t) > 1e-9 * span:
            raise DomainError("t=%g is not a stored sample time" % (t,))
        return self.gamma[i], self.gamma_dot[i], self.gamma_ddot[i]

    def final(self):
        return self.gamma[-1], self.gamma_dot[-1], self.gamma_ddot[-1]

    def max_ermakov_residual(self, omega_sq):
        """max |gdd*g^3 + Omega^2*g^4 - omega0p^2| / omega0p^2 over samples."""
        w0sq = self.omega0p * self.omega0p
        worst = 0.0
        for i, t in enumerate(self.times):
            g = self.gamma[i]
            om2 = omega_sq(self.p, t)
            r = self.gamma_ddot[i] * g ** 3 + om2 * g ** 4 - w0sq
            worst = max(worst, abs(r) / w0sq)
        return worst


Homogeneous = namedtuple("Homogeneous", ["f", "df"])


@dataclass(frozen=True)
class HomogeneousPair:
    """Unit-Wronskian-normalized pair (u, v) of homogeneous solutions."""

    u: object
    udot: object
    v: object
    vdot: object

    def wronskian(self, t):
        return self.u(t) * self.vdot(t) - self.udot(t) * self.v(t)


def build_uv(r, s, gamma0, t0=0.0):
    """Recombine two independent homogeneous solutions into the (u, v) pair
    with u(t0) = gamma0, u'(t0) = 0, v(t0) = 0, v'(t0) = 1/gamma0.

    r and s are Homogeneous(f, df) solutions of x'' + Omega^2(t) x = 0.
    """
    if not (gamma0 > 0.0):
        raise DomainError("gamma0 must be positive")
    w = s.f(t0) * r.df(t0) - r.f(t0) * s.df(t0)
    if abs(w) <= 1e-12:
        raise LinearDependenceError(
            "homogeneous solutions are (numerically) linearly dependent: "
            "Wronskian %g" % (w,)
        )
    rd0, sd0 = r.df(t0), s.df(t0)
    r0, s0 = r.f(t0), s.f(t0)

    def u(t):
        return gamma0 * (rd0 * s.f(t) - sd0 * r.f(t)) / w

    def udot(t):
        return gamma0 * (rd0 * s.df(t) - sd0 * r.df(t)) / w

    def v(t):
        return (s0 * r.f(t) - r0 * s.f(t)) / (w * gamma0)

    def vdot(t):
        return (s0 * r.df(t) - r0 * s.df(t)) / (w * gamma0)

    return HomogeneousPair(u=u, udot=udot, v=v, vdot=vdot)


def pinney_combine(pair, omega0p):
    """Exact nonlinear superposition gamma = sqrt(u^2 + omega0p^2 v^2).

    Valid for a unit-Wronskian pair; returns a callable t -> (gamma,
    gamma_dot).  The radicand vanishes only if u and v share a zero, which
    a unit-Wronskian pair cannot; reaching that signals a broken input.
    """
    w0sq = omega0p * omega0p

    def gamma_of(t):
        uu, vv = pair.u(t), pair.v(t)
        rad = uu * uu + w0sq * vv * vv
        if rad <= 1e-300:
            raise ConsistencyError(
                "nonlinear superposition radicand vanished at t=%g; the "
                "homogeneous pair is not unit-Wronskian" % (t,)
            )
        g = math.sqrt(rad)
        gd = (uu * pair.udot(t) + w0sq * vv * pair.vdot(t)) / g
        return g, gd

    return gamma_of


def _validate_times(times):
    times = np.asarray(times, dtype=np.float64)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("times must be a non-empty 1-d array")
    if times.size > 1:
        d = np.diff(times)
        if not (np.all(d > 0.0) or np.all(d < 0.0)):
            raise DomainError("times must be strictly monotonic")
    return times


def solve_ermakov_numeric(
    omega_sq, p, gamma0, gamma_dot0, times, tol=1e-10, omega0p=None
):
    """Adaptively integrate the auxiliary equation for one mode.

    omega_sq is a callable (p, t) -> Omega^2.  ScheduleFrequency instances
    dispatch to the backend kernel; any other callable runs through the
    generic adaptive integrator.  Descending `times` integrate backwards.
    """
    if not (gamma0 > 0.0):
        raise DomainError("gamma0 must be positive")
    if not (_TOL_MIN <= tol <= _TOL_MAX):
        raise DomainError(
            "tol=%g outside the supported range [%g, %g]"
            % (tol, _TOL_MIN, _TOL_MAX)
        )
    times = _validate_times(times)
    if omega0p is None:
        if isinstance(omega_sq, ScheduleFrequency):
            # schedules quench out of the free equilibrium at v_f |p|; for
            # kind "constant" this is a sudden jump, not Omega(t0)
            omega0p = omega_sq.schedule.v_f * abs(p)
        else:
            w0sq = omega_sq(p, times[0])
            if not (w0sq > 0.0):
                raise InstabilityError(
                    "Omega^2 <= 0 at the initial time; pass omega0p "
                    "explicitly",
                    violated="Omega^2(p, t0) > 0",
                )
            omega0p = math.sqrt(w0sq)
    rtol = tol
    atol = tol * 1e-3
    if isinstance(omega_sq, ScheduleFrequency):
        s = omega_sq.schedule
        g, gd, gdd, nsteps, nfev = _backend.solve_schedule(
            s.kind_code,
            s.alpha,
            s.tau_q,
            s.b_coeff,
            s.v_f,
            p,
            omega0p,
            gamma0,
            gamma_dot0,
            times,
            rtol,
            atol,
        )
        notes = {"backend": _backend.BACKEND, "nfev": nfev, "tol": tol}
        if nsteps >= 0:
            notes["nsteps"] = nsteps
    else:
        g, gd, gdd, nfev = _solve_generic(
            omega_sq, p, gamma0, gamma_dot0, times, rtol, atol, omega0p
        )
        notes = {"backend": "generic", "nfev": nfev, "tol": tol}
    return ErmakovTrajectory(
        p=p,
        omega0p=omega0p,
        times=times,
        gamma=np.asarray(g),
        gamma_dot=np.asarray(gd),
        gamma_ddot=np.asarray(gdd),
        method="numeric",
        notes=notes,
    )


def _solve_generic(omega_sq, p, gamma0, gamma_dot0, times, rtol, atol, omega0p):
    w0sq = omega0p * omega0p

    def rhs(t, y):
        g = y[0]
        return (y[1], -omega_sq(p, t) * g + w0sq / (g * g * g))

    def hit_zero(t, y):
        return y[0]

    hit_zero.terminal = True
    hit_zero.direction = -1.0

    gamma = np.empty_like(times)
    gamma_dot = np.empty_like(times)
    gamma[0] = gamma0
    gamma_dot[0] = gamma_dot0
    nfev = 0
    if times.size > 1:
        sol = solve_ivp(
            rhs,
            (times[0], times[-1]),
            (gamma0, gamma_dot0),
            method="DOP853",
            t_eval=times,
            rtol=rtol,
            atol=atol,
            events=hit_zero,
        )
        nfev = int(sol.nfev)
        if sol.status == 1:
            t_hit = float(sol.t_events[0][0])
            raise SingularityError(
                "gamma reached zero at t = %.6g" % t_hit, time=t_hit
            )
        if not sol.success:
            raise StiffnessError(
                "adaptive integration failed: %s" % (sol.message,),
                time=float(sol.t[-1]) if sol.t.size else times[0],
            )
        gamma[:] = sol.y[0]
        gamma_dot[:] = sol.y[1]
        gamma[0] = gamma0
        gamma_dot[0] = gamma_dot0
    gamma_ddot = np.empty_like(times)
    for i, t in enumerate(times):
        g = gamma[i]
        gamma_ddot[i] = -omega_sq(p, t) * g + w0sq / (g * g * g)
    return gamma, gamma_dot, gamma_ddot, nfev


def solve_linear_ramp_airy(p, alpha, tau_q, v_f, gamma0, times):
    """Closed-form trajectory for the linear ramp via Airy superposition.

    The homogeneous equation x'' + (b + a t) x = 0 with a = 2 v_f alpha
    p^2/tau_q, b = (v_f p)^2 is solved by Ai and Bi of z(t) = -(a t + b)
    / ca^2, ca = cbrt(-a); the nonlinear combination then gives gamma
    exactly.  Requires b + a t > 0 over the requested window (otherwise
    the ramp has crossed the instability threshold).
    """
    if p == 0.0:
        raise DomainError("p must be nonzero")
    if alpha == 0.0:
        raise DomainError(
            "alpha=0 is a constant schedule; use solve_ermakov_numeric"
        )
    if not (tau_q > 0.0 and v_f > 0.0):
        raise DomainError("tau_q and v_f must be positive")
    if not (gamma0 > 0.0):
        raise DomainError("gamma0 must be positive")
    times = _validate_times(times)
    slack = 1e-12 * max(1.0, tau_q)
    if times.min() < -slack or times.max() > tau_q + slack:
        raise DomainError("times must lie within the ramp window [0, tau_q]")
    a = 2.0 * v_f * alpha * p * p / tau_q
    b = (v_f * p) ** 2
    omsq = b + a * np.asarray(times)
    if omsq.min() <= 0.0 or b + a * tau_q <= 0.0:
        raise InstabilityError(
            "linear ramp crosses Omega^2 = 0 inside the window",
            violated="v_f + 2*c(t) > 0",
        )
    ca = math.copysign(abs(a) ** (1.0 / 3.0), -a)
    ca2 = ca * ca
    z = -(b + a * times) / ca2
    z0 = -b / ca2
    quads = _backend.airy_many(np.concatenate(([z0], z)))
    ai0p, bi0p = quads[0, 1], quads[0, 3]
    ai0, bi0 = quads[0, 0], quads[0, 2]
    ai, aip, bi, bip = quads[1:, 0], quads[1:, 1], quads[1:, 2], quads[1:, 3]
    pi_g0 = math.pi * gamma0
    u = pi_g0 * (bi0p * ai - ai0p * bi)
    udot = pi_g0 * ca * (bi0p * aip - ai0p * bip)
    v = (math.pi / (gamma0 * ca)) * (ai0 * bi - bi0 * ai)
    vdot = (math.pi / gamma0) * (ai0 * bip - bi0 * aip)
    omega0p = v_f * abs(p)
    w0sq = omega0p * omega0p
    gamma = np.sqrt(u * u + w0sq * v * v)
    gamma_dot = (u * udot + w0sq * v * vdot) / gamma
    gamma_ddot = -omsq * gamma + w0sq / gamma ** 3
    return ErmakovTrajectory(
        p=p,
        omega0p=omega0p,
        times=times,
        gamma=gamma,
        gamma_dot=gamma_dot,
        gamma_ddot=gamma_ddot,
        method="airy",
        notes={"z0": z0, "ca": ca},
    )


def perturbative_gamma(omega0p, a, t):
    """Second-order small-ramp-rate series for the linear ramp.

    a = 2 v_f alpha p^2/tau_q is the ramp slope of Omega^2; the expansion
    is in a/omega0p^3 (dimensionless).  Returns gamma(t) for equilibrium
    initial conditions with gamma0 = 1.
    """
    if not (omega0p > 0.0):
        raise DomainError("omega0p must be positive")
    w = omega0p
    tw = t * w
    s2, c2 = math.sin(2.0 * tw), math.cos(2.0 * tw)
    g1 = (s2 - 2.0 * tw) / (8.0 * w ** 3)
    sin_tw = math.sin(tw)
    g2 = (
        -(9.0 + c2) * sin_tw * sin_tw
        + 2.0 * tw * (-s2 + tw * (5.0 + 2.0 * c2))
    ) / (64.0 * w ** 6)
    return 1.0 + a * g1 + a * a * g2


def perturbative_gamma_dot(omega0p, a, t):
    """Time derivative of perturbative_gamma (same expansion order)."""
    if not (omega0p > 0.0):
        raise DomainError("omega0p must be positive")
    w = omega0p
    tw = t * w
    s2, c2 = math.sin(2.0 * tw), math.cos(2.0 * tw)
    g1d = (c2 - 1.0) / (4.0 * w * w)
    g2d = (
        -8.0 * tw * tw * s2
        + 4.0 * tw * c2
        + 20.0 * tw
        - 10.0 * s2
        - math.sin(4.0 * tw)
    ) / (64.0 * w ** 5)
    return a * g1d + a * a * g2d


def solve_linear_ramp_perturbative(p, alpha, tau_q, v_f, times):
    """Series trajectory for the linear ramp (gamma0 = 1 equilibrium start).

    Accurate while |a * gamma1| stays small; the trajectory notes flag
    windows where the first-order term exceeds 0.1.
    """
    if p == 0.0:
        raise DomainError("p must be nonzero")
    if not (tau_q > 0.0 and v_f > 0.0):
        raise DomainError("tau_q and v_f must be positive")
    times = _validate_times(times)
    a = 2.0 * v_f * alpha * p * p / tau_q
    omega0p = v_f * abs(p)
    w0sq = omega0p * omega0p
    gamma = np.array([perturbative_gamma(omega0p, a, t) for t in times])
    gamma_dot = np.array(
        [perturbative_gamma_dot(omega0p, a, t) for t in times]
    )
    omsq = w0sq + a * times
    gamma_ddot = -omsq * gamma + w0sq / gamma ** 3
    notes = {"ramp_slope": a}
    first = np.abs(
        a
        * (np.sin(2.0 * omega0p * times) - 2.0 * omega0p * times)
        / (8.0 * omega0p ** 3)
    )
    if first.size and first.max() > 0.1:
        notes["series_warning"] = (
            "first-order term reaches %.3g > 0.1; series unreliable"
            % first.max()
        )
    return ErmakovTrajectory(
        p=p,
        omega0p=omega0p,
        times=times,
        gamma=gamma,
        gamma_dot=gamma_dot,
        gamma_ddot=gamma_ddot,
        method="perturbative",
        notes=notes,
    )
