"""Double-double (~31 significant digits) helpers for the pure backend.

Minimal error-free-transformation toolkit: a value is an unevaluated pair
(hi, lo) with |lo| <= ulp(hi)/2.  Only the handful of operations the Airy
kernel needs are provided.  No special handling of inf/nan: callers screen
their inputs first.
"""

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd_add(xh, xl, yh, yl):
    s, e = two_sum(xh, yh)
    t, f = two_sum(xl, yl)
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


def dd_add_d(xh, xl, y):
    s, e = two_sum(xh, y)
    e += xl
    return quick_two_sum(s, e)


def dd_mul(xh, xl, yh, yl):
    p, e = two_prod(xh, yh)
    e += xh * yl + xl * yh
    return quick_two_sum(p, e)


def dd_mul_d(xh, xl, y):
    p, e = two_prod(xh, y)
    e += xl * y
    return quick_two_sum(p, e)


def dd_div_d(xh, xl, y):
    q = xh / y
    p, e = two_prod(q, y)
    r = ((xh - p) - e + xl) / y
    return quick_two_sum(q, r)


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    p, e = dd_mul_d(yh, yl, q1)
    rh, rl = dd_add(xh, xl, -p, -e)
    q2 = rh / yh
    p, e = dd_mul_d(yh, yl, q2)
    rh, rl = dd_add(rh, rl, -p, -e)
    q3 = rh / yh
    s, t = quick_two_sum(q1, q2)
    return dd_add_d(s, t, q3)


def dd_sqrt(xh, xl):
    # one Newton correction on the double estimate; xh > 0 assumed
    r = xh ** 0.5
    p, e = two_prod(r, r)
    d = ((xh - p) - e + xl) / (2.0 * r)
    return quick_two_sum(r, d)
