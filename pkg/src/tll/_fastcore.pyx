# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: Airy quadruple, exponential integral, per-mode Ermakov
RK45 integration, and compensated summation.

Mirrors tll._purekernels exactly (same algorithms, same accuracy targets);
see that module for the commentary.  Selection happens in tll._backend.
"""

from libc.math cimport cos, exp, fabs, floor, isfinite, log, pow, sin, sqrt

import numpy as np

from tll.errors import DomainError, OverflowRangeError, SingularityError, StiffnessError

BACKEND_NAME = "compiled"

DEF N_ASY = 46

cdef double SPLITTER = 134217729.0

cdef double AI0_H = 0.3550280538878172
cdef double AI0_L = 2.05233632436212e-17
cdef double AIP0_H = -0.2588194037928068
cdef double AIP0_L = 2.522243111610832e-17
cdef double BI0_H = 0.6149266274460007
cdef double BI0_L = 5.0899207794891416e-17
cdef double BIP0_H = 0.4482883573538264
cdef double BIP0_L = -2.5363237774417305e-17

cdef double PI_Q_H = 0.7853981633974483
cdef double PI_Q_L = 3.061616997868383e-17
cdef double TWO_PI_H = 6.283185307179586
cdef double TWO_PI_L = 2.4492935982947064e-16
cdef double SQRT_PI = 1.7724538509055160273

cdef double SERIES_RADIUS = 9.0
cdef double Z_LIMIT = 1.0e4
cdef double EXP_LIMIT = 708.0
cdef double EULER_GAMMA = 0.5772156649015328606

cdef double[N_ASY + 1] U_COEF
cdef double[N_ASY + 1] V_COEF


def _init_tables():
    cdef int k
    U_COEF[0] = 1.0
    V_COEF[0] = 1.0
    for k in range(1, N_ASY + 1):
        U_COEF[k] = (
            U_COEF[k - 1]
            * (6 * k - 5)
            * (6 * k - 3)
            * (6 * k - 1)
            / (216.0 * k * (2 * k - 1))
        )
        V_COEF[k] = -U_COEF[k] * (6 * k + 1) / (6 * k - 1.0)


_init_tables()


# ---------------------------------------------------------------- double-double

cdef inline void _two_sum(double a, double b, double* s, double* e) nogil:
    cdef double t = a + b
    cdef double bb = t - a
    s[0] = t
    e[0] = (a - (t - bb)) + (b - bb)


cdef inline void _quick_two_sum(double a, double b, double* s, double* e) nogil:
    cdef double t = a + b
    s[0] = t
    e[0] = b - (t - a)


cdef inline void _two_prod(double a, double b, double* p, double* e) nogil:
    cdef double t = a * b
    cdef double ta = SPLITTER * a
    cdef double ahi = ta - (ta - a)
    cdef double alo = a - ahi
    cdef double tb = SPLITTER * b
    cdef double bhi = tb - (tb - b)
    cdef double blo = b - bhi
    p[0] = t
    e[0] = ((ahi * bhi - t) + ahi * blo + alo * bhi) + alo * blo


cdef inline void _dd_add(double xh, double xl, double yh, double yl,
                         double* rh, double* rl) nogil:
    cdef double s, e, t, f
    _two_sum(xh, yh, &s, &e)
    _two_sum(xl, yl, &t, &f)
    e += t
    _quick_two_sum(s, e, &s, &e)
    e += f
    _quick_two_sum(s, e, rh, rl)


cdef inline void _dd_mul(double xh, double xl, double yh, double yl,
                         double* rh, double* rl) nogil:
    cdef double p, e
    _two_prod(xh, yh, &p, &e)
    e += xh * yl + xl * yh
    _quick_two_sum(p, e, rh, rl)


cdef inline void _dd_mul_d(double xh, double xl, double y,
                           double* rh, double* rl) nogil:
    cdef double p, e
    _two_prod(xh, y, &p, &e)
    e += xl * y
    _quick_two_sum(p, e, rh, rl)


cdef inline void _dd_div_d(double xh, double xl, double y,
                           double* rh, double* rl) nogil:
    cdef double q = xh / y
    cdef double p, e
    _two_prod(q, y, &p, &e)
    cdef double r = ((xh - p) - e + xl) / y
    _quick_two_sum(q, r, rh, rl)


cdef inline void _dd_div(double xh, double xl, double yh, double yl,
                         double* rh, double* rl) nogil:
    cdef double q1 = xh / yh
    cdef double ph, pl, ah, al, q2, q3, s, t
    _dd_mul_d(yh, yl, q1, &ph, &pl)
    _dd_add(xh, xl, -ph, -pl, &ah, &al)
    q2 = ah / yh
    _dd_mul_d(yh, yl, q2, &ph, &pl)
    _dd_add(ah, al, -ph, -pl, &ah, &al)
    q3 = ah / yh
    _quick_two_sum(q1, q2, &s, &t)
    _two_sum(s, q3, &s, &q3)
    rh[0] = s
    rl[0] = t + q3


cdef inline void _dd_sqrt(double xh, double xl, double* rh, double* rl) nogil:
    cdef double r = sqrt(xh)
    cdef double p, e
    _two_prod(r, r, &p, &e)
    cdef double d = ((xh - p) - e + xl) / (2.0 * r)
    _quick_two_sum(r, d, rh, rl)


# ---------------------------------------------------------------------- airy

cdef int _airy_series(double z, double* out) nogil:
    cdef double z3h, z3l
    cdef double tfh, tfl, tgh, tgl, tph, tpl, tqh, tql
    cdef double sfh, sfl, sgh, sgl, sph, spl, sqh, sql
    cdef double xh, xl, yh, yl, bound
    cdef int i

    _two_prod(z, z, &z3h, &z3l)
    _dd_mul_d(z3h, z3l, z, &z3h, &z3l)

    tfh = 1.0; tfl = 0.0
    tgh = z; tgl = 0.0
    _two_prod(z, z, &tph, &tpl)
    _dd_div_d(tph, tpl, 2.0, &tph, &tpl)
    tqh = 1.0; tql = 0.0
    sfh = tfh; sfl = tfl
    sgh = tgh; sgl = tgl
    sph = tph; spl = tpl
    sqh = tqh; sql = tql

    for i in range(120):
        _dd_mul(tfh, tfl, z3h, z3l, &tfh, &tfl)
        _dd_div_d(tfh, tfl, (3 * i + 2.0) * (3 * i + 3.0), &tfh, &tfl)
        _dd_mul(tgh, tgl, z3h, z3l, &tgh, &tgl)
        _dd_div_d(tgh, tgl, (3 * i + 3.0) * (3 * i + 4.0), &tgh, &tgl)
        _dd_mul(tph, tpl, z3h, z3l, &tph, &tpl)
        _dd_div_d(tph, tpl, (3 * i + 3.0) * (3 * i + 5.0), &tph, &tpl)
        _dd_mul(tqh, tql, z3h, z3l, &tqh, &tql)
        _dd_div_d(tqh, tql, (3 * i + 1.0) * (3 * i + 3.0), &tqh, &tql)

        _dd_add(sfh, sfl, tfh, tfl, &sfh, &sfl)
        _dd_add(sgh, sgl, tgh, tgl, &sgh, &sgl)
        _dd_add(sph, spl, tph, tpl, &sph, &spl)
        _dd_add(sqh, sql, tqh, tql, &sqh, &sql)

        bound = 1e-35 * (fabs(sfh) + fabs(sgh) + 1e-300)
        if (
            fabs(tfh) < bound
            and fabs(tgh) < bound
            and fabs(tph) < bound
            and fabs(tqh) < bound
        ):
            break

    _dd_mul(AI0_H, AI0_L, sfh, sfl, &xh, &xl)
    _dd_mul(AIP0_H, AIP0_L, sgh, sgl, &yh, &yl)
    _dd_add(xh, xl, yh, yl, &xh, &xl)
    out[0] = xh + xl

    _dd_mul(AI0_H, AI0_L, sph, spl, &xh, &xl)
    _dd_mul(AIP0_H, AIP0_L, sqh, sql, &yh, &yl)
    _dd_add(xh, xl, yh, yl, &xh, &xl)
    out[1] = xh + xl

    _dd_mul(BI0_H, BI0_L, sfh, sfl, &xh, &xl)
    _dd_mul(BIP0_H, BIP0_L, sgh, sgl, &yh, &yl)
    _dd_add(xh, xl, yh, yl, &xh, &xl)
    out[2] = xh + xl

    _dd_mul(BI0_H, BI0_L, sph, spl, &xh, &xl)
    _dd_mul(BIP0_H, BIP0_L, sqh, sql, &yh, &yl)
    _dd_add(xh, xl, yh, yl, &xh, &xl)
    out[3] = xh + xl
    return 0


cdef inline void _zeta_dd(double x, double* zh, double* zl) nogil:
    cdef double sh, sl, wh, wl
    _dd_sqrt(x, 0.0, &sh, &sl)
    _dd_mul(sh, sl, x, 0.0, &wh, &wl)
    _dd_mul_d(wh, wl, 2.0, &wh, &wl)
    _dd_div_d(wh, wl, 3.0, zh, zl)


cdef int _airy_asym_pos(double z, double* out) nogil:
    cdef double zeh, zel, ih, il, rz, s4
    cdef double p, q, pv, qv, term, nterm, sign, vk, emz, epz
    cdef int k

    _zeta_dd(z, &zeh, &zel)
    s4 = pow(z, 0.25)
    if zeh > EXP_LIMIT:
        out[0] = (zeh - log(SQRT_PI * s4)) / log(10.0)
        return 3
    _dd_div(1.0, 0.0, zeh, zel, &ih, &il)
    rz = ih + il

    p = 1.0; q = 1.0; pv = 1.0; qv = 1.0
    term = 1.0
    for k in range(1, N_ASY + 1):
        nterm = term * (U_COEF[k] / U_COEF[k - 1]) * rz
        if fabs(nterm) >= fabs(term):
            break
        term = nterm
        sign = -1.0 if k % 2 else 1.0
        vk = V_COEF[k] / U_COEF[k]
        p += sign * term
        q += term
        pv += sign * term * vk
        qv += term * vk
        if fabs(term) < 1e-18:
            break

    emz = exp(-zeh) * (1.0 - zel)
    epz = exp(zeh) * (1.0 + zel)
    out[0] = emz * p / (2.0 * SQRT_PI * s4)
    out[1] = -emz * pv * s4 / (2.0 * SQRT_PI)
    out[2] = epz * q / (SQRT_PI * s4)
    out[3] = epz * qv * s4 / SQRT_PI
    return 0


cdef int _airy_asym_neg(double z, double* out) nogil:
    cdef double x = -z
    cdef double zeh, zel, th, tl, mh, ml, n, ch, sh, c, s
    cdef double ih, il, rz, rz2, ae, ao, ce, co, pw, last, ue, sign
    cdef double x4, amp, damp
    cdef int k

    _zeta_dd(x, &zeh, &zel)
    _dd_add(zeh, zel, -PI_Q_H, -PI_Q_L, &th, &tl)
    n = floor(th / TWO_PI_H + 0.5)
    _dd_mul_d(TWO_PI_H, TWO_PI_L, n, &mh, &ml)
    _dd_add(th, tl, -mh, -ml, &th, &tl)
    ch = cos(th)
    sh = sin(th)
    c = ch - tl * sh
    s = sh + tl * ch

    _dd_div(1.0, 0.0, zeh, zel, &ih, &il)
    rz = ih + il
    rz2 = rz * rz

    ae = 1.0
    ao = U_COEF[1] * rz
    ce = 1.0
    co = V_COEF[1] * rz
    pw = 1.0
    last = 1.0
    for k in range(1, N_ASY // 2):
        pw *= rz2
        ue = U_COEF[2 * k] * pw
        if fabs(ue) >= fabs(last):
            break
        last = ue
        sign = -1.0 if k % 2 else 1.0
        ae += sign * ue
        ao += sign * U_COEF[2 * k + 1] * pw * rz
        ce += sign * V_COEF[2 * k] * pw
        co += sign * V_COEF[2 * k + 1] * pw * rz
        if fabs(ue) < 1e-18:
            break

    x4 = pow(x, 0.25)
    amp = 1.0 / (SQRT_PI * x4)
    damp = x4 / SQRT_PI
    out[0] = amp * (c * ae + s * ao)
    out[2] = amp * (-s * ae + c * ao)
    out[1] = damp * (s * ce - c * co)
    out[3] = damp * (c * ce + s * co)
    return 0


cdef int _airy_core(double z, double* out) nogil:
    if not isfinite(z):
        return 1
    if fabs(z) > Z_LIMIT:
        return 2
    if fabs(z) <= SERIES_RADIUS:
        return _airy_series(z, out)
    if z > 0.0:
        return _airy_asym_pos(z, out)
    return _airy_asym_neg(z, out)


cdef void _raise_airy(int status, double z, double* out):
    if status == 1:
        raise DomainError("airy argument must be finite, got %r" % (z,))
    if status == 2:
        raise DomainError(
            "airy argument magnitude %g exceeds the supported range %g"
            % (z, Z_LIMIT)
        )
    if status == 3:
        raise OverflowRangeError(
            "Bi(%g) overflows double precision (about 1e%+.0f)" % (z, out[0]),
            exponent10=out[0],
        )


def airy_kernel(double z):
    """Return (Ai, Ai', Bi, Bi') at a real argument."""
    cdef double out[4]
    cdef int status
    with nogil:
        status = _airy_core(z, out)
    if status != 0:
        _raise_airy(status, z, out)
    return out[0], out[1], out[2], out[3]


def airy_many(z):
    """Vectorized airy_kernel; returns an (n, 4) array."""
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t n = zv.shape[0]
    out_arr = np.empty((n, 4))
    cdef double[:, ::1] ov = out_arr
    cdef Py_ssize_t i
    cdef int status = 0
    cdef Py_ssize_t bad = -1
    with nogil:
        for i in range(n):
            status = _airy_core(zv[i], &ov[i, 0])
            if status != 0:
                bad = i
                break
    if status != 0:
        _raise_airy(status, zv[bad], &ov[bad, 0])
    return out_arr


# ------------------------------------------------------------------------ E1

cdef double _e1_core(double x) nogil:
    cdef double acc, s, contrib, tiny, b, c, d, h, a, delta
    cdef int k, i
    if x < 1.0:
        acc = -EULER_GAMMA - log(x)
        s = 1.0
        k = 1
        while k < 60:
            s *= x / k
            contrib = s / k if k % 2 else -s / k
            acc += contrib
            if fabs(contrib) < 1e-18 * fabs(acc):
                break
            k += 1
        return acc
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 300):
        a = -(<double> i) * i
        b += 2.0
        d = a * d + b
        if fabs(d) < tiny:
            d = tiny
        c = b + a / c
        if fabs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < 1e-16:
            break
    return h * exp(-x)


def e1_kernel(double x):
    """Exponential integral E1(x) = Gamma(0, x) for x > 0."""
    if not (x > 0.0) or not isfinite(x):
        raise DomainError("E1 requires a finite argument > 0, got %r" % (x,))
    cdef double r
    with nogil:
        r = _e1_core(x)
    return r


# ------------------------------------------------------------------- ermakov

cdef inline double _coupling(int kind, double alpha, double tau_q, double bco,
                             double v_f, double t) nogil:
    cdef double s, w
    if kind == 0:
        return alpha
    if kind == 1:
        return alpha * t / tau_q
    if kind == 2:
        s = t / tau_q
        return alpha * s * s * s * (10.0 + s * (-15.0 + 6.0 * s))
    w = bco * t + 1.0
    w = w * w
    w = w * w
    return 0.5 * v_f * (1.0 / w - 1.0)


cdef inline void _rhs(int kind, double alpha, double tau_q, double bco,
                      double v_f, double p2, double w0sq,
                      double t, double g, double gd,
                      double* dg, double* dgd) nogil:
    cdef double c = _coupling(kind, alpha, tau_q, bco, v_f, t)
    cdef double om2 = v_f * (v_f + 2.0 * c) * p2
    dg[0] = gd
    dgd[0] = -om2 * g + w0sq / (g * g * g)


cdef int _rk45_schedule(int kind, double alpha, double tau_q, double bco,
                        double v_f, double p, double omega0p,
                        double g0, double gd0,
                        double[::1] times, double rtol, double atol,
                        double[::1] og, double[::1] ogd, double[::1] ogdd,
                        long* out_nsteps, long* out_nfev,
                        double* fail_t) nogil:
    # Dormand-Prince 5(4), FSAL; samples are hit exactly by clamping the step.
    cdef double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0
    cdef double a21 = 1.0 / 5.0
    cdef double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0
    cdef double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0
    cdef double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0
    cdef double a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0
    cdef double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0
    cdef double a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0
    cdef double a65 = -5103.0 / 18656.0
    cdef double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0
    cdef double b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0
    cdef double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0
    cdef double e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0

    cdef Py_ssize_t n = times.shape[0]
    cdef double t = times[0]
    cdef double tend = times[n - 1]
    cdef double dirn = 1.0 if tend >= t else -1.0
    cdef double p2 = p * p
    cdef double w0sq = omega0p * omega0p

    cdef double yg = g0, yd = gd0
    cdef double k1g, k1d, k2g, k2d, k3g, k3d, k4g, k4d
    cdef double k5g, k5d, k6g, k6d, k7g, k7d
    cdef double y5g, y5d, tg, td
    cdef long nfev = 0, nsteps = 0
    cdef Py_ssize_t idx = 1
    cdef double target, h_try, errg, errd, scg, scd, errn, fac, h_new
    cdef double om0, span, h_ctrl, maxfac, t_new
    cdef bint clamped, bad
    cdef int nreject_gamma = 0

    _rhs(kind, alpha, tau_q, bco, v_f, p2, w0sq, t, yg, yd, &k1g, &k1d)
    nfev += 1
    og[0] = yg
    ogd[0] = yd
    ogdd[0] = k1d
    if n == 1:
        out_nsteps[0] = 0
        out_nfev[0] = nfev
        return 0

    om0 = sqrt(fabs(v_f * (v_f + 2.0 * _coupling(kind, alpha, tau_q, bco, v_f, t)) * p2))
    span = fabs(tend - t)
    h_ctrl = 0.1 / (om0 if om0 > 1e-8 else 1e-8)
    if h_ctrl > span:
        h_ctrl = span
    if h_ctrl < span * 1e-12:
        h_ctrl = span * 1e-12
    h_ctrl *= dirn
    maxfac = 5.0

    while idx < n:
        target = times[idx]
        h_try = h_ctrl
        clamped = False
        if (t + h_try - target) * dirn >= 0.0:
            h_try = target - t
            clamped = True
        if fabs(h_try) < 1e-14 * (1.0 if fabs(t) < 1.0 else fabs(t)):
            fail_t[0] = t
            out_nsteps[0] = nsteps
            out_nfev[0] = nfev
            return 3 if nreject_gamma > 0 else 4

        _rhs(kind, alpha, tau_q, bco, v_f, p2, w0sq, t + c2 * h_try,
             yg + h_try * a21 * k1g,
             yd + h_try * a21 * k1d, &k2g, &k2d)
        _rhs(kind, alpha, tau_q, bco, v_f, p2, w0sq, t + c3 * h_try,
             yg + h_try * (a31 * k1g + a32 * k2g),
             yd + h_try * (a31 * k1d + a32 * k2d), &k3g, &k3d)
        _rhs(kind, alpha, tau_q, bco, v_f, p2, w0sq, t + c4 * h_try,
             yg + h_try * (a41 * k1g + a42 * k2g + a43 * k3g),
             yd + h_try * (a41 * k1d + a42 * k2d + a43 * k3d), &k4g, &k4d)
        _rhs(kind, alpha, tau_q, bco, v_f, p2, w0sq, t + c5 * h_try,
             yg + h_try * (a51 * k1g + a52 * k2g + a53 * k3g + a54 * k4g),
             yd + h_try * (a51 * k1d + a52 * k2d + a53 * k3d + a54 * k4d),
             &k5g, &k5d)
        _rhs(kind, alpha, tau_q, bco, v_f, p2, w0sq, t + h_try,
             yg + h_try * (a61 * k1g + a62 * k2g + a63 * k3g + a64 * k4g + a65 * k5g),
             yd + h_try * (a61 * k1d + a62 * k2d + a63 * k3d + a64 * k4d + a65 * k5d),
             &k6g, &k6d)
        y5g = yg + h_try * (b1 * k1g + b3 * k3g + b4 * k4g + b5 * k5g + b6 * k6g)
        y5d = yd + h_try * (b1 * k1d + b3 * k3d + b4 * k4d + b5 * k5d + b6 * k6d)
        _rhs(kind, alpha, tau_q, bco, v_f, p2, w0sq, t + h_try, y5g, y5d,
             &k7g, &k7d)
        nfev += 6

        bad = (y5g <= 0.0) or (not isfinite(y5g)) or (not isfinite(y5d))
        errg = h_try * (e1 * k1g + e3 * k3g + e4 * k4g + e5 * k5g + e6 * k6g + e7 * k7g)
        errd = h_try * (e1 * k1d + e3 * k3d + e4 * k4d + e5 * k5d + e6 * k6d + e7 * k7d)
        scg = atol + rtol * (fabs(yg) if fabs(yg) > fabs(y5g) else fabs(y5g))
        scd = atol + rtol * (fabs(yd) if fabs(yd) > fabs(y5d) else fabs(y5d))
        tg = errg / scg
        td = errd / scd
        errn = sqrt(0.5 * (tg * tg + td * td))

        if bad or errn != errn or errn > 1.0:
            if bad:
                nreject_gamma += 1
                fac = 0.5
            else:
                nreject_gamma = 0
                fac = 0.9 * pow(errn, -0.2)
                if fac < 0.2:
                    fac = 0.2
                if fac > 1.0:
                    fac = 1.0
            h_ctrl = h_try * fac
            maxfac = 1.0
            continue

        nreject_gamma = 0
        nsteps += 1
        t_new = target if clamped else t + h_try
        yg = y5g
        yd = y5d
        k1g = k7g
        k1d = k7d
        t = t_new
        if clamped:
            og[idx] = yg
            ogd[idx] = yd
            ogdd[idx] = k1d
            idx += 1

        if errn == 0.0:
            fac = maxfac
        else:
            fac = 0.9 * pow(errn, -0.2)
            if fac < 0.2:
                fac = 0.2
            if fac > maxfac:
                fac = maxfac
        h_new = h_try * fac
        if clamped:
            if fabs(h_new) > fabs(h_ctrl):
                h_ctrl = h_new
        else:
            h_ctrl = h_new
        maxfac = 5.0

    out_nsteps[0] = nsteps
    out_nfev[0] = nfev
    return 0


def solve_schedule(int kind, double alpha, double tau_q, double b_coeff,
                   double v_f, double p, double omega0p,
                   double gamma0, double gamma_dot0,
                   times, double rtol, double atol):
    """Integrate the per-mode auxiliary oscillator equation on `times`.

    Same contract as tll._purekernels.solve_schedule.
    """
    cdef double[::1] tv = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t n = tv.shape[0]
    g = np.empty(n)
    gd = np.empty(n)
    gdd = np.empty(n)
    cdef double[::1] gv = g
    cdef double[::1] gdv = gd
    cdef double[::1] gddv = gdd
    cdef long nsteps = 0, nfev = 0
    cdef double fail_t = 0.0
    cdef int status
    with nogil:
        status = _rk45_schedule(kind, alpha, tau_q, b_coeff, v_f, p, omega0p,
                                gamma0, gamma_dot0, tv, rtol, atol,
                                gv, gdv, gddv, &nsteps, &nfev, &fail_t)
    if status == 3:
        raise SingularityError(
            "gamma reached zero at t = %.6g" % fail_t, time=fail_t
        )
    if status == 4:
        raise StiffnessError(
            "step size underflow at t = %.6g" % fail_t, time=fail_t
        )
    return g, gd, gdd, nsteps, nfev


# ----------------------------------------------------------------- summation

def compensated_sum(values):
    """Neumaier-compensated sum in the given (fixed) order."""
    cdef double[::1] xs = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t i, n = xs.shape[0]
    cdef double s = 0.0, comp = 0.0, t, x
    with nogil:
        for i in range(n):
            x = xs[i]
            t = s + x
            if fabs(s) >= fabs(x):
                comp += (s - t) + x
            else:
                comp += (x - t) + s
            s = t
    return s + comp
