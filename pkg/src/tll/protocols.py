"""Driving schedules: coupling ramps and gamma-trajectories.

Two families:

* CouplingSchedule: time-dependent interaction ramps (linear, smooth
  fifth-order polynomial, reverse-engineered inverse polynomial, constant)
  driving the per-mode auxiliary oscillator equation.
* GammaSchedule and the accidental protocols: prescribed gamma(t)
  trajectories for the gap-assisted and lattice-potential protocols.

All schedules are immutable, validated at construction, and report analytic
first (and where meaningful second) derivatives.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import (
    DomainError,
    InstabilityError,
    RootNotFoundError,
    SingularityError,
)

_KIND_CODES = {"constant": 0, "linear": 1, "poly5": 2, "inverse_poly": 3}


def _p5(s):
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s))


def _p5_prime(s):
    return 30.0 * s * s * (1.0 - s) * (1.0 - s)


def _p5_second(s):
    return 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s)


def _p4(s):
    return s * (2.0 + s * s * (s - 2.0))


def _p4_prime(s):
    return 4.0 * s * s * s - 6.0 * s * s + 2.0


def _p4_second(s):
    return 12.0 * s * (s - 1.0)


@dataclass(frozen=True)
class CouplingSchedule:
    """Interaction ramp c(t) = g(t)/(2*pi) in velocity units on [0, tau_q].

    kinds:
      linear       c(t) = alpha * t/tau_q
      poly5        c(t) = alpha * P5(t/tau_q), P5(s) = 10s^3 - 15s^4 + 6s^5
      inverse_poly c(t) = (v_f/2) * ((b_coeff*t + 1)^-4 - 1)
      constant     c(t) = alpha

    For inverse_poly, `alpha` records the target value c(tau_q) implied by
    b_coeff (used for reporting); the shape is controlled by b_coeff alone.
    """

    kind: str
    alpha: float
    tau_q: float
    v_f: float = 1.0
    b_coeff: float = 0.0

    def __post_init__(self):
        if self.kind not in _KIND_CODES:
            raise DomainError("unknown schedule kind %r" % (self.kind,))
        if not (self.v_f > 0.0):
            raise DomainError("v_f must be positive")
        if self.kind != "constant" and not (self.tau_q > 0.0):
            raise DomainError("tau_q must be positive, got %r" % (self.tau_q,))
        if self.kind == "inverse_poly":
            if self.b_coeff * self.tau_q + 1.0 <= 0.0:
                raise SingularityError(
                    "inverse_poly schedule hits (b*t+1) = 0 inside [0, tau_q]"
                )
        else:
            # ramp extremum is the endpoint for these monotone shapes
            if self.v_f + 2.0 * self.alpha <= 0.0:
                raise InstabilityError(
                    "schedule violates v_f + 2*c(t) > 0 at t=tau_q "
                    "(alpha=%g, v_f=%g)" % (self.alpha, self.v_f),
                    violated="v_f + 2*c(t) > 0",
                )

    @property
    def kind_code(self):
        return _KIND_CODES[self.kind]

    def final_value(self):
        t_end = self.tau_q if self.kind != "constant" else 0.0
        return coupling_at(self, t_end)[0]

    def initial_gamma_rate(self):
        """Scale-factor velocity at t = 0 prescribed by the protocol.

        Zero for ramps switched on from equilibrium; the reverse-engineered
        inverse_poly schedule instead requires the kick gamma_dot(0) = B so
        that gamma(t) = B t + 1 solves the auxiliary equation exactly.
        """
        return self.b_coeff if self.kind == "inverse_poly" else 0.0


def linear_ramp(alpha, tau_q, v_f=1.0):
    return CouplingSchedule(kind="linear", alpha=alpha, tau_q=tau_q, v_f=v_f)


def poly5_ramp(alpha, tau_q, v_f=1.0):
    return CouplingSchedule(kind="poly5", alpha=alpha, tau_q=tau_q, v_f=v_f)


def constant_coupling(value, v_f=1.0, tau_q=math.inf):
    return CouplingSchedule(kind="constant", alpha=value, tau_q=tau_q, v_f=v_f)


def inverse_poly_ramp(b_coeff, tau_q, v_f=1.0):
    w = b_coeff * tau_q + 1.0
    if w <= 0.0:
        raise SingularityError(
            "inverse_poly schedule hits (b*t+1) = 0 inside [0, tau_q]"
        )
    alpha = 0.5 * v_f * (w ** -4 - 1.0)
    return CouplingSchedule(
        kind="inverse_poly", alpha=alpha, tau_q=tau_q, v_f=v_f, b_coeff=b_coeff
    )


def coupling_at(s, t):
    """Evaluate (value, rate) of a CouplingSchedule at time t in [0, tau_q]."""
    slack = 1e-12 * max(1.0, abs(s.tau_q)) if s.tau_q != math.inf else 0.0
    if t < -slack or (s.tau_q != math.inf and t > s.tau_q + slack):
        raise DomainError(
            "t=%g outside the schedule domain [0, %g]" % (t, s.tau_q)
        )
    if s.kind == "constant":
        return s.alpha, 0.0
    if s.kind == "linear":
        return s.alpha * t / s.tau_q, s.alpha / s.tau_q
    if s.kind == "poly5":
        x = t / s.tau_q
        return s.alpha * _p5(x), s.alpha * _p5_prime(x) / s.tau_q
    w = s.b_coeff * t + 1.0
    value = 0.5 * s.v_f * (w ** -4 - 1.0)
    rate = -2.0 * s.v_f * s.b_coeff * w ** -5
    return value, rate


def inverse_poly_b(g_target, tau_q, v_f):
    """Ramp coefficient B reaching the coupling g_target at tau_q.

    Positive branch: B = (1/tau_q) * (-1 + (g_target/(pi*v_f) + 1)^(-1/4)),
    so the end value b*tau_q + 1 = (g_target/(pi*v_f) + 1)^(-1/4) stays
    positive.  g_target is the full coupling (2*pi times the velocity-units
    value); B -> 0 in the adiabatic limit tau_q -> inf.
    """
    if not (tau_q > 0.0):
        raise DomainError("tau_q must be positive")
    if not (g_target > -math.pi * v_f / 2.0):
        raise DomainError(
            "g_target must exceed -pi*v_f/2 for a real fourth root"
        )
    end = (g_target / (math.pi * v_f) + 1.0) ** -0.25
    if end <= 0.0:
        raise SingularityError("requested target makes b*tau_q + 1 <= 0")
    return (end - 1.0) / tau_q


class ScheduleFrequency:
    """Squared mode frequency Omega^2(p, t) implied by a coupling schedule.

    Callable as omega_sq(p, t); carries the schedule so the numeric solver
    can dispatch to the compiled kernel.
    """

    def __init__(self, schedule):
        self.schedule = schedule

    def __call__(self, p, t):
        value, _ = coupling_at(self.schedule, t)
        v = self.schedule.v_f
        return v * (v + 2.0 * value) * p * p


@dataclass(frozen=True)
class GammaSchedule:
    """Prescribed gamma(t) = gamma0 + (gamma_f - gamma0) * P(t/tau_q).

    kinds: "p5" (P5, all first and second derivatives vanish at both ends)
    and "p4" (P4(s) = s^4 - 2s^3 + 2s, vanishing curvature at both ends and
    vanishing final slope; note P4'(0) = 2, so the initial slope is NOT zero
    and the schedule starts with a kick -- see initial_rate_nonzero).

    Both polynomials are monotone on [0, 1], so gamma stays between the
    (positive) endpoints.
    """

    kind: str
    gamma0: float
    gamma_f: float
    tau_q: float

    def __post_init__(self):
        if self.kind not in ("p4", "p5"):
            raise DomainError("unknown gamma-schedule kind %r" % (self.kind,))
        if not (self.gamma0 > 0.0 and self.gamma_f > 0.0):
            raise DomainError("gamma endpoints must be positive")
        if not (self.tau_q > 0.0):
            raise DomainError("tau_q must be positive")

    @property
    def initial_rate_nonzero(self):
        return self.kind == "p4"


def sta_gamma(s, t):
    """Evaluate (gamma, gamma_dot, gamma_ddot) of a GammaSchedule at t."""
    slack = 1e-12 * max(1.0, s.tau_q)
    if t < -slack or t > s.tau_q + slack:
        raise DomainError("t=%g outside the schedule domain [0, %g]" % (t, s.tau_q))
    x = t / s.tau_q
    d = s.gamma_f - s.gamma0
    if s.kind == "p5":
        val, der, sec = _p5(x), _p5_prime(x), _p5_second(x)
    else:
        val, der, sec = _p4(x), _p4_prime(x), _p4_second(x)
    return (
        s.gamma0 + d * val,
        d * der / s.tau_q,
        d * sec / (s.tau_q * s.tau_q),
    )


def sta_gamma_arrays(s, times):
    """Vectorized sta_gamma over a time array."""
    out = np.empty((len(times), 3))
    for i, t in enumerate(times):
        out[i] = sta_gamma(s, t)
    return out[:, 0], out[:, 1], out[:, 2]


def sine_gordon_gap(gamma, gamma_dot, gamma_ddot, sigma, sigma_dot):
    """Instantaneous gap parameter of the quadratic phase potential.

    Delta(t) = (sigma/gamma)^2 * [(gdot/g)^2 - (gddot/g)/2 - (gdot/g)(sdot/s)].
    With sigma = gamma this reduces to -gamma_ddot/(2*gamma).
    """
    if not (gamma > 0.0 and sigma > 0.0):
        raise DomainError("gamma and sigma must be positive")
    r = gamma_dot / gamma
    return (sigma / gamma) ** 2 * (
        r * r - 0.5 * gamma_ddot / gamma - r * sigma_dot / sigma
    )


def sg_spectrum(p, gamma, gamma_ddot, v_f):
    """Gapped mode energy sqrt(p^2 c*^2 - sgn(gddot/g) (m* c*^2)^2).

    c* = v_f/gamma^2 is the effective velocity and m*c*^2 = sqrt(|gddot/g|)
    the rest energy.  A negative radicand (possible only for gddot/g > 0)
    signals breakdown of the gapless description.
    """
    if not (gamma > 0.0):
        raise DomainError("gamma must be positive")
    c_star = v_f / (gamma * gamma)
    ratio = gamma_ddot / gamma
    rest_sq = math.copysign(abs(ratio), ratio)  # sgn(r) * (m* c*^2)^2
    rad = p * p * c_star * c_star - rest_sq
    if rad < 0.0:
        raise InstabilityError(
            "imaginary spectrum at p=%g: gamma_ddot/gamma=%g > (p c*)^2"
            % (p, ratio),
            violated="p^2 c*^2 >= sgn(gddot/g) (m* c*^2)^2",
        )
    return math.sqrt(rad)


def lattice_potential_from_gamma(gamma, gamma_ddot, v_f, rho0):
    """Lattice amplitude V0(t) = -gamma_ddot/(4*pi*v_f*rho0*gamma)."""
    if not (gamma > 0.0):
        raise DomainError("gamma must be positive")
    if not (rho0 > 0.0):
        raise DomainError("rho0 must be positive")
    return -gamma_ddot / (4.0 * math.pi * v_f * rho0 * gamma)


class AccidentalConstantProtocol:
    """Forward evolution under a constant lattice amplitude.

    gamma(t) = gamma0*cos(w*t) + (gamma_dot0/w)*sin(w*t) with
    w = 4*pi*v_f*rho0*v0, and stationary times
    t_n = (arctan(gamma_dot0/(gamma0*w)) + n*pi)/w where gamma_dot vanishes.
    The curvature gamma_ddot(t_n) = -w^2*gamma(t_n) is generally nonzero;
    end_curvature reports it as the residual-diagnostic of the protocol.
    """

    def __init__(self, v0, rho0, v_f, gamma0, gamma_dot0):
        if not (v0 > 0.0):
            raise DomainError("v0 must be positive for an oscillatory solution")
        if not (rho0 > 0.0 and v_f > 0.0):
            raise DomainError("rho0 and v_f must be positive")
        if not (gamma0 > 0.0):
            raise DomainError("gamma0 must be positive")
        self.v0 = v0
        self.rho0 = rho0
        self.v_f = v_f
        self.gamma0 = gamma0
        self.gamma_dot0 = gamma_dot0
        self.w = 4.0 * math.pi * v_f * rho0 * v0

    def gamma(self, t):
        w = self.w
        return self.gamma0 * math.cos(w * t) + (self.gamma_dot0 / w) * math.sin(w * t)

    def gamma_dot(self, t):
        w = self.w
        return -self.gamma0 * w * math.sin(w * t) + self.gamma_dot0 * math.cos(w * t)

    def gamma_ddot(self, t):
        return -self.w * self.w * self.gamma(t)

    def t_n(self, n):
        return (math.atan(self.gamma_dot0 / (self.gamma0 * self.w)) + n * math.pi) / self.w

    def amplitude(self):
        """gamma at every stationary time: sqrt(gamma0^2 + (gamma_dot0/w)^2)."""
        return math.hypot(self.gamma0, self.gamma_dot0 / self.w)

    def end_curvature(self, n=0):
        t = self.t_n(n)
        return self.gamma_ddot(t) / self.gamma(t)


def accidental_sta_constant(v0, rho0, v_f, gamma0, gamma_dot0):
    return AccidentalConstantProtocol(v0, rho0, v_f, gamma0, gamma_dot0)


class AccidentalLinearProtocol:
    """Forward evolution under a linearly ramped lattice amplitude.

    Solves gamma_ddot + d*t*gamma = 0 with d = 4*pi*v_f*alpha_ramp*rho0 and
    gamma_dot(0) = 0 in closed Airy form on y(t) = cbrt(-d)*t, then locates
    the first positive stationary time tau_q (gamma_dot = 0) by bracketing
    and bisection.  gamma may cross zero before tau_q; only K = gamma^2 is
    physical for this protocol.
    """

    def __init__(self, alpha_ramp, rho0, v_f, gamma0):
        if not (alpha_ramp > 0.0):
            raise DomainError("alpha_ramp must be positive")
        if not (rho0 > 0.0 and v_f > 0.0):
            raise DomainError("rho0 and v_f must be positive")
        if not (gamma0 > 0.0):
            raise DomainError("gamma0 must be positive")
        self.alpha_ramp = alpha_ramp
        self.rho0 = rho0
        self.v_f = v_f
        self.gamma0 = gamma0
        self.d = 4.0 * math.pi * v_f * alpha_ramp * rho0
        self._cy = -self.d ** (1.0 / 3.0)  # real cube root of -d
        q0 = _backend.airy_kernel(0.0)
        self._aip0 = q0[1]
        self._bip0 = q0[3]
        self.tau_q = self._find_stationary_time()

    def y(self, t):
        return self._cy * t

    def gamma(self, t):
        q = _backend.airy_kernel(self.y(t))
        return math.pi * self.gamma0 * (self._bip0 * q[0] - self._aip0 * q[2])

    def gamma_dot(self, t):
        q = _backend.airy_kernel(self.y(t))
        return math.pi * self.gamma0 * self._cy * (
            self._bip0 * q[1] - self._aip0 * q[3]
        )

    def gamma_ddot(self, t):
        return -self.d * t * self.gamma(t)

    def k_parameter(self, t):
        return self.gamma(t) ** 2

    def _find_stationary_time(self):
        # time scale of the first oscillation: first Airy zero at |y| = 2.338
        t_scale = 2.3381074104597670 / abs(self._cy)
        n_per = 64
        step = t_scale / n_per
        t_lo = step * 1e-3  # skip the built-in stationary point at t = 0
        f_lo = self.gamma_dot(t_lo)
        t = t_lo
        t_max = 10.0 * t_scale
        bracket = None
        while t < t_max:
            t_next = t + step
            f_next = self.gamma_dot(t_next)
            if f_lo == 0.0:
                bracket = (t, t)
                break
            if f_lo * f_next < 0.0:
                bracket = (t, t_next)
                break
            t, f_lo = t_next, f_next
        if bracket is None:
            raise RootNotFoundError(
                "no stationary point of gamma_dot within 10 oscillation "
                "scales (%g)" % (t_max,)
            )
        lo, hi = bracket
        if lo != hi:
            f_lo = self.gamma_dot(lo)
            while hi - lo > 1e-12 * max(1.0, hi):
                mid = 0.5 * (lo + hi)
                f_mid = self.gamma_dot(mid)
                if f_mid == 0.0:
                    lo = hi = mid
                    break
                if f_lo * f_mid < 0.0:
                    hi = mid
                else:
                    lo, f_lo = mid, f_mid
        root = 0.5 * (lo + hi)
        # Newton polish: gamma_ddot is analytic and nonzero at the root
        for _ in range(3):
            g2 = self.gamma_ddot(root)
            if g2 == 0.0:
                break
            root -= self.gamma_dot(root) / g2
        return root


def accidental_sta_linear(alpha_ramp, rho0, v_f, gamma0):
    return AccidentalLinearProtocol(alpha_ramp, rho0, v_f, gamma0)
