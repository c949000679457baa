"""Pure-Python/NumPy implementations of the hot kernels.

This module mirrors the API of the compiled extension `tll._fastcore` and is
selected automatically when the extension is unavailable (see `tll._backend`).
Everything here favors clarity over speed; accuracy targets are identical to
the compiled path.

Kernels:
  - airy_kernel / airy_many: Airy quadruple (Ai, Ai', Bi, Bi') via a
    double-double Maclaurin series for |z| <= 9 and Poincare-type asymptotic
    expansions beyond, with double-double phase reduction on the negative axis.
  - e1_kernel: exponential integral E1 (power series / modified Lentz
    continued fraction).
  - solve_schedule: per-mode Ermakov integration for the built-in coupling
    schedules (delegates to scipy's DOP853).
  - compensated_sum: error-free ordered accumulation.
"""

import math

import numpy as np
from scipy.integrate import solve_ivp

from ._ddmath import (
    dd_add,
    dd_div,
    dd_div_d,
    dd_mul,
    dd_mul_d,
    dd_sqrt,
    two_prod,
)
from .errors import DomainError, OverflowRangeError, SingularityError, StiffnessError

BACKEND_NAME = "pure"

# Maclaurin anchors Ai(0), Ai'(0), Bi(0), Bi'(0) as double-double pairs.
# The series region cancels ~e^{2 zeta(9)} ~ 4e15 of the partial sums, so the
# anchors must carry more than double precision.
_AI0 = (0.3550280538878172, 2.05233632436212e-17)
_AIP0 = (-0.2588194037928068, 2.522243111610832e-17)
_BI0 = (0.6149266274460007, 5.0899207794891416e-17)
_BIP0 = (0.4482883573538264, -2.5363237774417305e-17)

_PI_QUARTER = (0.7853981633974483, 3.061616997868383e-17)
_TWO_PI = (6.283185307179586, 2.4492935982947064e-16)
_SQRT_PI = 1.7724538509055160273

# crossover between Maclaurin series and asymptotic expansions; at |z| = 9 the
# asymptotic remainder ~ e^(-2*zeta) ~ 2e-16 while the double-double series
# still has ~15 spare digits, so both sides beat the 1e-11 target
_SERIES_RADIUS = 9.0
_Z_LIMIT = 1.0e4
_EXP_LIMIT = 708.0  # exp() overflow guard for the Bi branch

_EULER_GAMMA = 0.5772156649015328606

_N_ASY = 46


def _asymptotic_tables():
    u = [1.0]
    v = [1.0]
    for k in range(1, _N_ASY + 1):
        uk = u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        u.append(uk)
        v.append(-uk * (6 * k + 1) / (6 * k - 1.0))
    return u, v


_U_COEF, _V_COEF = _asymptotic_tables()


def _airy_series(z):
    # four interleaved Maclaurin series (f, f', g, g') in double-double
    z3 = two_prod(z, z)
    z3 = dd_mul_d(z3[0], z3[1], z)

    tf = (1.0, 0.0)
    tg = (z, 0.0)
    tfp = dd_div_d(*two_prod(z, z), 2.0)
    tgp = (1.0, 0.0)
    sf, sg, sfp, sgp = tf, tg, tfp, tgp

    for i in range(0, 120):
        tf = dd_mul(tf[0], tf[1], z3[0], z3[1])
        tf = dd_div_d(tf[0], tf[1], (3 * i + 2.0) * (3 * i + 3.0))
        tg = dd_mul(tg[0], tg[1], z3[0], z3[1])
        tg = dd_div_d(tg[0], tg[1], (3 * i + 3.0) * (3 * i + 4.0))
        tfp = dd_mul(tfp[0], tfp[1], z3[0], z3[1])
        tfp = dd_div_d(tfp[0], tfp[1], (3 * i + 3.0) * (3 * i + 5.0))
        tgp = dd_mul(tgp[0], tgp[1], z3[0], z3[1])
        tgp = dd_div_d(tgp[0], tgp[1], (3 * i + 1.0) * (3 * i + 3.0))

        sf = dd_add(sf[0], sf[1], tf[0], tf[1])
        sg = dd_add(sg[0], sg[1], tg[0], tg[1])
        sfp = dd_add(sfp[0], sfp[1], tfp[0], tfp[1])
        sgp = dd_add(sgp[0], sgp[1], tgp[0], tgp[1])

        bound = 1e-35 * (abs(sf[0]) + abs(sg[0]) + 1e-300)
        if (
            abs(tf[0]) < bound
            and abs(tg[0]) < bound
            and abs(tfp[0]) < bound
            and abs(tgp[0]) < bound
        ):
            break

    def combine(ca, cb, sa, sb):
        xa = dd_mul(ca[0], ca[1], sa[0], sa[1])
        xb = dd_mul(cb[0], cb[1], sb[0], sb[1])
        r = dd_add(xa[0], xa[1], xb[0], xb[1])
        return r[0] + r[1]

    ai = combine(_AI0, _AIP0, sf, sg)
    aip = combine(_AI0, _AIP0, sfp, sgp)
    bi = combine(_BI0, _BIP0, sf, sg)
    bip = combine(_BI0, _BIP0, sfp, sgp)
    return ai, aip, bi, bip


def _zeta_dd(x):
    # zeta = (2/3) x^(3/2), kept in double-double for phase accuracy
    s = dd_sqrt(x, 0.0)
    w = dd_mul(s[0], s[1], x, 0.0)
    w = dd_mul_d(w[0], w[1], 2.0)
    return dd_div_d(w[0], w[1], 3.0)


def _airy_asym_pos(z):
    ze = _zeta_dd(z)
    s4 = z ** 0.25
    if ze[0] > _EXP_LIMIT:
        exponent10 = (ze[0] - math.log(_SQRT_PI * s4)) / math.log(10.0)
        raise OverflowRangeError(
            "Bi(%g) overflows double precision (about 1e%+.0f)" % (z, exponent10),
            exponent10=exponent10,
        )
    inv = dd_div(1.0, 0.0, ze[0], ze[1])
    rz = inv[0] + inv[1]

    p = q = pv = qv = 1.0
    term = 1.0
    for k in range(1, _N_ASY + 1):
        nterm = term * (_U_COEF[k] / _U_COEF[k - 1]) * rz
        if abs(nterm) >= abs(term):
            break
        term = nterm
        sign = -1.0 if k % 2 else 1.0
        vk = _V_COEF[k] / _U_COEF[k]
        p += sign * term
        q += term
        pv += sign * term * vk
        qv += term * vk
        if abs(term) < 1e-18:
            break

    emz = math.exp(-ze[0]) * (1.0 - ze[1])
    epz = math.exp(ze[0]) * (1.0 + ze[1])
    ai = emz * p / (2.0 * _SQRT_PI * s4)
    aip = -emz * pv * s4 / (2.0 * _SQRT_PI)
    bi = epz * q / (_SQRT_PI * s4)
    bip = epz * qv * s4 / _SQRT_PI
    return ai, aip, bi, bip


def _airy_asym_neg(z):
    x = -z
    ze = _zeta_dd(x)
    # theta = zeta - pi/4 reduced mod 2*pi in double-double; the raw phase can
    # reach ~7e5 rad at the domain edge, far beyond double resolution
    th = dd_add(ze[0], ze[1], -_PI_QUARTER[0], -_PI_QUARTER[1])
    n = math.floor(th[0] / _TWO_PI[0] + 0.5)
    m = dd_mul_d(_TWO_PI[0], _TWO_PI[1], n)
    th = dd_add(th[0], th[1], -m[0], -m[1])
    ch = math.cos(th[0])
    sh = math.sin(th[0])
    c = ch - th[1] * sh
    s = sh + th[1] * ch

    inv = dd_div(1.0, 0.0, ze[0], ze[1])
    rz = inv[0] + inv[1]
    rz2 = rz * rz

    # paired even/odd asymptotic sums
    ae = 1.0
    ao = _U_COEF[1] * rz
    ce = 1.0
    co = _V_COEF[1] * rz
    pw = 1.0
    last = 1.0
    for k in range(1, _N_ASY // 2):
        pw *= rz2
        ue = _U_COEF[2 * k] * pw
        if abs(ue) >= abs(last):
            break
        last = ue
        sign = -1.0 if k % 2 else 1.0
        ae += sign * ue
        ao += sign * _U_COEF[2 * k + 1] * pw * rz
        ce += sign * _V_COEF[2 * k] * pw
        co += sign * _V_COEF[2 * k + 1] * pw * rz
        if abs(ue) < 1e-18:
            break

    x4 = x ** 0.25
    amp = 1.0 / (_SQRT_PI * x4)
    damp = x4 / _SQRT_PI
    ai = amp * (c * ae + s * ao)
    bi = amp * (-s * ae + c * ao)
    aip = damp * (s * ce - c * co)
    bip = damp * (c * ce + s * co)
    return ai, aip, bi, bip


def airy_kernel(z):
    """Return (Ai, Ai', Bi, Bi') at a real argument."""
    if not math.isfinite(z):
        raise DomainError("airy argument must be finite, got %r" % (z,))
    if abs(z) > _Z_LIMIT:
        raise DomainError(
            "airy argument magnitude %g exceeds the supported range %g" % (z, _Z_LIMIT)
        )
    if abs(z) <= _SERIES_RADIUS:
        return _airy_series(z)
    if z > 0.0:
        return _airy_asym_pos(z)
    return _airy_asym_neg(z)


def airy_many(z):
    """Vectorized airy_kernel; z is a 1-D float array, returns an (n, 4) array."""
    z = np.ascontiguousarray(z, dtype=np.float64)
    out = np.empty((z.size, 4))
    for i in range(z.size):
        out[i] = airy_kernel(z[i])
    return out


def e1_kernel(x):
    """Exponential integral E1(x) = Gamma(0, x) for x > 0."""
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError("E1 requires a finite argument > 0, got %r" % (x,))
    if x < 1.0:
        # alternating power series around the log singularity
        acc = -_EULER_GAMMA - math.log(x)
        s = 1.0
        k = 1
        while k < 60:
            s *= x / k
            contrib = s / k if k % 2 else -s / k
            acc += contrib
            if abs(contrib) < 1e-18 * abs(acc):
                break
            k += 1
        return acc
    # modified Lentz on the standard continued fraction
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 300):
        a = -float(i) * i
        b += 2.0
        d = a * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + a / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def _coupling_value(kind, alpha, tau_q, b_coeff, v_f, t):
    if kind == 0:
        return alpha
    if kind == 1:
        return alpha * t / tau_q
    if kind == 2:
        s = t / tau_q
        return alpha * s * s * s * (10.0 + s * (-15.0 + 6.0 * s))
    if kind == 3:
        w = b_coeff * t + 1.0
        return 0.5 * v_f * (1.0 / w ** 4 - 1.0)
    raise ValueError("unknown schedule kind %r" % (kind,))


def solve_schedule(
    kind,
    alpha,
    tau_q,
    b_coeff,
    v_f,
    p,
    omega0p,
    gamma0,
    gamma_dot0,
    times,
    rtol,
    atol,
):
    """Integrate the per-mode auxiliary oscillator equation on `times`.

    times is strictly monotonic (either direction) and times[0] is the
    initial time.  Returns (gamma, gamma_dot, gamma_ddot, nsteps, nfev);
    nsteps is -1 here (the delegated integrator does not expose it).
    """
    times = np.asarray(times, dtype=np.float64)
    p2 = p * p
    w0sq = omega0p * omega0p

    def rhs(t, y):
        csch = _coupling_value(kind, alpha, tau_q, b_coeff, v_f, t)
        om2 = v_f * (v_f + 2.0 * csch) * p2
        g = y[0]
        return (y[1], -om2 * g + w0sq / (g * g * g))

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
            dense_output=False,
        )
        nfev = int(sol.nfev)
        if sol.status == 1:
            t_hit = float(sol.t_events[0][0])
            raise SingularityError(
                "gamma reached zero at t = %.6g" % t_hit, time=t_hit
            )
        if not sol.success:
            raise StiffnessError(sol.message, time=float(sol.t[-1]) if sol.t.size else times[0])
        gamma = sol.y[0].copy()
        gamma_dot = sol.y[1].copy()
        gamma[0] = gamma0
        gamma_dot[0] = gamma_dot0

    if np.any(gamma <= 0.0):
        i = int(np.argmax(gamma <= 0.0))
        raise SingularityError(
            "gamma reached zero at t = %.6g" % times[i], time=float(times[i])
        )

    csch = np.array(
        [_coupling_value(kind, alpha, tau_q, b_coeff, v_f, t) for t in times]
    )
    om2 = v_f * (v_f + 2.0 * csch) * p2
    gamma_ddot = -om2 * gamma + w0sq / gamma ** 3
    return gamma, gamma_dot, gamma_ddot, -1, nfev


def compensated_sum(values):
    """Deterministic compensated sum in the given (fixed) order."""
    return math.fsum(values)
