"""Mode energies, regularized sums, and closed-form references.

The instantaneous energy of one mode follows from the auxiliary scale
factor gamma_p(t):

    e_p = [ (Omega^2 g^2 + gdot^2)/(2 w0p) + w0p/(2 g^2) ] * (n_B + 1/2)

with w0p = v_f |p| and n_B the initial thermal occupation.  On a solution
of the auxiliary equation this equals the equivalent form
w0p/g^2 - (gddot*g - gdot^2)/(2 w0p) times the same occupation factor;
mode_energy cross-checks the two when given redundant inputs.  By the
AM-GM inequality the bracket is bounded below by Omega(t), so per-mode
residuals above the adiabatic reference are nonnegative exactly.

Extensive quantities use the exponential regulator exp(-r0 p) and are
reported for system size length_l; grid sums run in ascending momentum
with compensated accumulation so results are bit-stable across thread
counts.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _backend, ermakov, model, specfun
from .errors import ConsistencyError, DomainError, IncompleteGridError
from .protocols import ScheduleFrequency

_GL16_NODES = None
_GL16_WEIGHTS = None


def _gl16():
    global _GL16_NODES, _GL16_WEIGHTS
    if _GL16_NODES is None:
        x, w = np.polynomial.legendre.leggauss(16)
        _GL16_NODES, _GL16_WEIGHTS = x, w
    return _GL16_NODES, _GL16_WEIGHTS


def mode_energy(gamma, gamma_dot, gamma_ddot, omega0p, omega_sq=None, n_b=0.0):
    """Instantaneous energy of one mode.

    Either gamma_ddot or omega_sq (the instantaneous squared frequency)
    may be omitted; the auxiliary equation supplies the missing one.  When
    both are given the two energy forms are cross-checked to 1e-10
    relative and a ConsistencyError reports any mismatch.
    """
    if not (gamma > 0.0):
        raise DomainError("gamma must be positive")
    if not (omega0p > 0.0):
        raise DomainError("omega0p must be positive")
    if n_b < 0.0:
        raise DomainError("n_b must be nonnegative")
    g2 = gamma * gamma
    w0sq = omega0p * omega0p
    if omega_sq is None and gamma_ddot is None:
        raise DomainError("need at least one of gamma_ddot, omega_sq")
    if omega_sq is None:
        omega_sq = w0sq / (g2 * g2) - gamma_ddot / gamma
    elif gamma_ddot is None:
        gamma_ddot = -omega_sq * gamma + w0sq / (gamma * g2)
    bracket_a = (omega_sq * g2 + gamma_dot * gamma_dot) / (2.0 * omega0p) + (
        omega0p / (2.0 * g2)
    )
    bracket_b = omega0p / g2 - (gamma_ddot * gamma - gamma_dot * gamma_dot) / (
        2.0 * omega0p
    )
    scale = max(abs(bracket_a), abs(bracket_b), omega0p)
    if abs(bracket_a - bracket_b) > 1e-10 * scale:
        raise ConsistencyError(
            "energy forms disagree (%.17g vs %.17g); gamma_ddot and "
            "omega_sq are not related by the auxiliary equation"
            % (bracket_a, bracket_b)
        )
    return bracket_a * (n_b + 0.5)


def mean_energy(trajectories, grid, t, beta0=math.inf):
    """Regularized total energy 2 * sum_p e_p(t) exp(-r0 p) at time t.

    trajectories must cover every grid momentum (matched to 1e-12
    relative); the sum runs in ascending momentum with compensated
    accumulation.
    """
    by_p = list(trajectories)
    momenta = grid.momenta
    terms = np.empty(momenta.size)
    for i, p in enumerate(momenta):
        tr = None
        for cand in by_p:
            if abs(cand.p - p) <= 1e-12 * max(abs(p), 1.0):
                tr = cand
                break
        if tr is None:
            raise IncompleteGridError(
                "no trajectory for grid momentum p=%.17g (mode %d)"
                % (p, i + 1)
            )
        g, gd, gdd = tr.at(t)
        n_b = model.bose_occupation(tr.omega0p, beta0)
        e_p = mode_energy(g, gd, gdd, tr.omega0p, n_b=n_b)
        terms[i] = 2.0 * e_p * math.exp(-grid.r0 * p)
    return _backend.compensated_sum(terms)


def adiabatic_energy(alpha, v_f, r0, length_l):
    """Ground-state energy after an infinitely slow ramp to coupling alpha.

    (L/2pi) * sqrt(v_f (v_f + 2 alpha)) / r0^2 in the continuum limit of
    the regulated sum.
    """
    rad = v_f * (v_f + 2.0 * alpha)
    if rad <= 0.0:
        raise DomainError("final coupling beyond the stability threshold")
    return (length_l / (2.0 * math.pi)) * math.sqrt(rad) / (r0 * r0)


def sudden_energy(alpha, v_f, r0, length_l):
    """Energy right after an instantaneous jump to coupling alpha:
    (L/2pi) (v_f + alpha)/r0^2."""
    if v_f + 2.0 * alpha <= 0.0:
        raise DomainError("final coupling beyond the stability threshold")
    return (length_l / (2.0 * math.pi)) * (v_f + alpha) / (r0 * r0)


def solve_grid(schedule, grid, times=None, tol=1e-10, method="numeric",
               threads=1):
    """Solve the auxiliary equation for every grid mode of a schedule.

    method "numeric" works for every schedule kind; "airy" uses the exact
    linear-ramp solution and rejects other kinds.  Returns trajectories in
    ascending momentum order.
    """
    if method not in ("numeric", "airy"):
        raise DomainError("unknown method %r" % (method,))
    if method == "airy" and schedule.kind != "linear":
        raise DomainError("the airy route only applies to linear schedules")
    if times is None:
        times = np.array([0.0, schedule.tau_q])
    times = np.asarray(times, dtype=np.float64)
    freq = ScheduleFrequency(schedule)

    gd0 = schedule.initial_gamma_rate()

    def run(p):
        if method == "airy":
            return ermakov.solve_linear_ramp_airy(
                p, schedule.alpha, schedule.tau_q, schedule.v_f, 1.0, times
            )
        return ermakov.solve_ermakov_numeric(freq, p, 1.0, gd0, times, tol=tol)

    momenta = grid.momenta
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, momenta))
    return [run(p) for p in momenta]


@dataclass
class EnergyReport:
    """Energy balance of one protocol run at its final time."""

    mean_energy: float
    adiabatic_energy: float
    sudden_energy: float
    residual: float
    tau_q: float
    protocol: str
    alpha: float
    v_f: float
    length_l: float
    r0: float
    n_max: int
    beta0: float
    notes: dict = field(default_factory=dict)

    _FIELDS = (
        "protocol",
        "alpha",
        "v_f",
        "tau_q",
        "length_l",
        "r0",
        "n_max",
        "beta0",
        "mean_energy",
        "adiabatic_energy",
        "sudden_energy",
        "residual",
    )

    def to_json_dict(self):
        out = {k: getattr(self, k) for k in self._FIELDS}
        if self.notes:
            out["notes"] = dict(self.notes)
        return out

    @classmethod
    def csv_header(cls):
        return ",".join(cls._FIELDS)

    def to_csv_row(self, precision=17):
        cells = []
        for k in self._FIELDS:
            v = getattr(self, k)
            if isinstance(v, str):
                cells.append(v)
            elif isinstance(v, int):
                cells.append(str(v))
            else:
                cells.append("%.*g" % (precision, v))
        return ",".join(cells)


def energy_report(schedule, grid, beta0=math.inf, tol=1e-10,
                  method="numeric", trajectories=None, threads=1):
    """Mean, adiabatic, and sudden energies of a schedule on a mode grid.

    The adiabatic and sudden references are evaluated on the same grid with
    the same regulator as the mean, so the residual mean - adiabatic is a
    sum of exactly nonnegative per-mode terms.
    """
    t_end = schedule.tau_q if schedule.kind != "constant" else 0.0
    if trajectories is None:
        if schedule.kind == "constant":
            trajectories = _constant_snapshot(schedule, grid)
        else:
            trajectories = solve_grid(
                schedule, grid, tol=tol, method=method, threads=threads
            )
    mean = mean_energy(trajectories, grid, t_end, beta0)
    c_f = schedule.final_value()
    v = schedule.v_f
    momenta = grid.momenta
    ad_terms = np.empty(momenta.size)
    sd_terms = np.empty(momenta.size)
    for i, p in enumerate(momenta):
        w0p = v * p
        n_b = model.bose_occupation(w0p, beta0)
        omega_f = math.sqrt(v * (v + 2.0 * c_f)) * p
        weight = 2.0 * math.exp(-grid.r0 * p) * (n_b + 0.5)
        ad_terms[i] = weight * omega_f
        bracket_sudden = omega_f * omega_f / (2.0 * w0p) + 0.5 * w0p
        sd_terms[i] = weight * bracket_sudden
    adiabatic = _backend.compensated_sum(ad_terms)
    sudden = _backend.compensated_sum(sd_terms)
    return EnergyReport(
        mean_energy=mean,
        adiabatic_energy=adiabatic,
        sudden_energy=sudden,
        residual=mean - adiabatic,
        tau_q=schedule.tau_q,
        protocol=schedule.kind,
        alpha=schedule.alpha,
        v_f=schedule.v_f,
        length_l=grid.length_l,
        r0=grid.r0,
        n_max=grid.n_max,
        beta0=beta0,
    )


def _constant_snapshot(schedule, grid):
    """Sudden-quench trajectories: gamma frozen at 1 at t = 0+."""
    out = []
    t0 = np.array([0.0])
    v = schedule.v_f
    for p in grid.momenta:
        w0p = v * p
        om2 = v * (v + 2.0 * schedule.alpha) * p * p
        gdd = -om2 + w0p * w0p
        out.append(
            ermakov.ErmakovTrajectory(
                p=p,
                omega0p=w0p,
                times=t0,
                gamma=np.array([1.0]),
                gamma_dot=np.array([0.0]),
                gamma_ddot=np.array([gdd]),
                method="numeric",
                notes={"snapshot": "sudden"},
            )
        )
    return out


def _airy_final_energy_batch(schedule, ps):
    """Vectorized final-time mode energies for a linear ramp (T = 0)."""
    v = schedule.v_f
    tau_q = schedule.tau_q
    a = 2.0 * v * schedule.alpha * ps * ps / tau_q
    b = (v * ps) ** 2
    ca = np.copysign(np.abs(a) ** (1.0 / 3.0), -a)
    ca2 = ca * ca
    z0 = -b / ca2
    zf = -(b + a * tau_q) / ca2
    quads = _backend.airy_many(np.concatenate((z0, zf)))
    n = ps.size
    ai0, ai0p = quads[:n, 0], quads[:n, 1]
    bi0, bi0p = quads[:n, 2], quads[:n, 3]
    ai, aip = quads[n:, 0], quads[n:, 1]
    bi, bip = quads[n:, 2], quads[n:, 3]
    g0 = 1.0
    u = math.pi * g0 * (bi0p * ai - ai0p * bi)
    udot = math.pi * g0 * ca * (bi0p * aip - ai0p * bip)
    vv = (math.pi / (g0 * ca)) * (ai0 * bi - bi0 * ai)
    vvdot = (math.pi / g0) * (ai0 * bip - bi0 * aip)
    w0 = v * ps
    w0sq = w0 * w0
    gamma = np.sqrt(u * u + w0sq * vv * vv)
    gamma_dot = (u * udot + w0sq * vv * vvdot) / gamma
    om_f_sq = b + a * tau_q
    bracket = (om_f_sq * gamma * gamma + gamma_dot * gamma_dot) / (
        2.0 * w0
    ) + w0 / (2.0 * gamma * gamma)
    return 0.5 * bracket


def residual_energy_continuum(schedule, r0, length_l, method="airy",
                              tol=1e-10, p_max=None, ir_cutoff=0.0):
    """Residual energy in the continuum: (L/pi) * integral over p > 0 of
    (e_p(tau_q) - Omega_f(p)/2) exp(-r0 p) dp at zero temperature.

    Panel-wise 16-point Gauss-Legendre quadrature; the panel width tracks
    the fastest oscillation scale of the final-state energy density,
    ~ v_f tau_q in momentum.  ir_cutoff is 0 for scaling-law comparisons
    and 2 pi/L when the closed form keeps the discrete infrared edge.
    """
    if p_max is None:
        p_max = 40.0 / r0
    if not (p_max > ir_cutoff >= 0.0):
        raise DomainError("need p_max > ir_cutoff >= 0")
    if method not in ("airy", "numeric"):
        raise DomainError("unknown method %r" % (method,))
    if method == "airy" and schedule.kind != "linear":
        raise DomainError("the airy route only applies to linear schedules")
    v = schedule.v_f
    c_f = schedule.final_value()
    kappa = math.sqrt(max(1.0, 1.0 + 2.0 * c_f / v))
    h = min((p_max - ir_cutoff) / 64.0, 2.0 / (v * schedule.tau_q * kappa))
    n_panels = max(64, int(math.ceil((p_max - ir_cutoff) / h)))
    edges = np.linspace(ir_cutoff, p_max, n_panels + 1)
    nodes, weights = _gl16()
    half = 0.5 * (edges[1] - edges[0])
    mids = 0.5 * (edges[:-1] + edges[1:])
    ps = (mids[:, None] + half * nodes[None, :]).ravel()
    coeffs = np.broadcast_to(weights * half, (n_panels, 16)).ravel()
    omega_f_slope = math.sqrt(v * (v + 2.0 * c_f))
    if method == "airy":
        e_p = _airy_final_energy_batch(schedule, ps)
    else:
        t_end = np.array([0.0, schedule.tau_q])
        freq = ScheduleFrequency(schedule)
        gd0 = schedule.initial_gamma_rate()
        e_p = np.empty(ps.size)
        for i, p in enumerate(ps):
            tr = ermakov.solve_ermakov_numeric(
                freq, p, 1.0, gd0, t_end, tol=tol
            )
            g, gd, gdd = tr.final()
            e_p[i] = mode_energy(g, gd, gdd, tr.omega0p)
    density = (e_p - 0.5 * omega_f_slope * ps) * np.exp(-r0 * ps)
    return (length_l / math.pi) * _backend.compensated_sum(coeffs * density)


def e_gs_perturbative(alpha, v_f, r0, length_l):
    """Small-coupling reference scale (L/2pi) alpha^2/(2 v_f r0^2)."""
    return (length_l / (2.0 * math.pi)) * alpha * alpha / (2.0 * v_f * r0 * r0)


def perturbative_residual_linear(alpha, tau_q, v_f, r0, length_l):
    """Residual energy of the slow linear ramp at second order in alpha:

        dQ = E_gs * ln(1 + (tau_q/tau0)^2) / (tau_q/tau0)^2,

    with tau0 = r0/(2 v_f) the regulator time and E_gs the alpha^2
    reference scale.  Interpolates the sudden plateau E_gs and the
    long-time decay 2 E_gs (tau0/tau_q)^2 ln(tau_q/tau0).
    """
    if not (tau_q > 0.0):
        raise DomainError("tau_q must be positive")
    tau0 = r0 / (2.0 * v_f)
    x = (tau_q / tau0) ** 2
    return e_gs_perturbative(alpha, v_f, r0, length_l) * math.log1p(x) / x


def perturbative_residual_short_time(alpha, tau_q, v_f, r0, length_l):
    """Leading short-ramp behavior E_gs * (1 - (tau_q/tau0)^2 / 2)."""
    tau0 = r0 / (2.0 * v_f)
    x = (tau_q / tau0) ** 2
    return e_gs_perturbative(alpha, v_f, r0, length_l) * (1.0 - 0.5 * x)


def perturbative_residual_long_time(alpha, tau_q, v_f, r0, length_l):
    """Slow-ramp tail 2 E_gs (tau0/tau_q)^2 ln(tau_q/tau0)."""
    if not (tau_q > 0.0):
        raise DomainError("tau_q must be positive")
    tau0 = r0 / (2.0 * v_f)
    return (
        2.0
        * e_gs_perturbative(alpha, v_f, r0, length_l)
        * (tau0 / tau_q) ** 2
        * math.log(tau_q / tau0)
    )


def perturbative_validity(alpha, v_f):
    """True when the second-order series is trustworthy (|alpha| < v_f/4)."""
    return abs(alpha) < 0.25 * v_f


def residual_inverse_poly(b, v_f, r0, length_l):
    """Exact residual of the reverse-engineered ramp, keeping the discrete
    infrared edge p >= 2 pi/L:

        dQ = (B^2/2) (L/2pi) (1/v_f) Gamma(0, 2 pi r0/L).

    Each mode ends with e_p - Omega_f/2 = B^2/(4 w0p) exactly.
    """
    if not (v_f > 0.0 and r0 > 0.0 and length_l > 0.0):
        raise DomainError("v_f, r0, length_l must be positive")
    x = 2.0 * math.pi * r0 / length_l
    return (
        0.5 * b * b * (length_l / (2.0 * math.pi)) / v_f * specfun.gamma0(x)
    )


def sg_mean_energy(gamma, gamma_dot, gamma_ddot, sigma, sigma_dot,
                   v_f, r0, length_l):
    """Instantaneous energy of the gap-assisted protocol state.

    (L/2pi) { v_f/(sigma^2 r0^2) - (sigma^2/v_f) [ (gddot/g)/2
      + (gdot/g)(sdot/s) - (3/2)(gdot/g)^2 ] Gamma(0, 2 pi r0/L) }.

    For a stationary endpoint (gdot = gddot = 0) this is exactly the
    adiabatic value (L/2pi) v_f/(sigma^2 r0^2).
    """
    if not (gamma > 0.0 and sigma > 0.0):
        raise DomainError("gamma and sigma must be positive")
    r = gamma_dot / gamma
    bracket = 0.5 * gamma_ddot / gamma + r * sigma_dot / sigma - 1.5 * r * r
    x = 2.0 * math.pi * r0 / length_l
    return (length_l / (2.0 * math.pi)) * (
        v_f / (sigma * sigma * r0 * r0)
        - (sigma * sigma / v_f) * bracket * specfun.gamma0(x)
    )


def adiabatic_time_bound(alpha, length_l, v_f, n=1):
    """Ramp time below which mode n cannot follow adiabatically:
    L*alpha/(n*pi*v_f^2)."""
    if n < 1:
        raise DomainError("n must be a positive mode index")
    return length_l * alpha / (n * math.pi * v_f * v_f)
