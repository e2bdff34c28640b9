"""Hot numeric kernels, in two flavours.

Every function here exists twice: a scalar/loop version compiled with
numba when available, and a vectorized pure-numpy fallback.  The names
without suffix are the dispatched ones; ``_np``/``_nb`` variants stay
importable so the benchmark can time both.

Conventions baked in once, used everywhere downstream:

  * principal square root: arg in (-pi, pi], so the negative real axis
    maps to the positive imaginary axis;
  * for a spectral parameter lam off [0, inf), k = psqrt(lam),
    a = psqrt(-k), b = psqrt(k); both a and b have positive real part;
  * fourth-order resolvent kernels are assembled from the second-order
    ones as (G_k - G_{-k})/(2k), with a truncated-series branch when
    max(|a|,|b|) * distance < SERIES_SWITCH to dodge cancellation.

K0 (Macdonald function) for Re z > 0: ascending series for |z| < 2,
exp-weighted generalized Gauss-Laguerre quadrature of
e^{-z} * int_0^inf e^{-u} u^{-1/2} (u+2z)^{-1/2} du for |z| >= 2.
Both regimes hold ~1e-15 relative accuracy over the right half-plane.
"""
import math
import cmath

import numpy as np
from scipy.special import roots_genlaguerre

from ._backend import USE_NUMBA, NUMBA_AVAILABLE

SERIES_SWITCH = 1e-4
EULER = 0.5772156649015328606
C1 = 1.0 / (2.0 * math.sqrt(2.0))            # d=1 pointwise constant
C3 = 1.0 / (4.0 * math.sqrt(2.0) * math.pi)  # d=3 pointwise constant
INV8PI = 1.0 / (8.0 * math.pi)

_LAG_U, _LAG_W = roots_genlaguerre(80, -0.5)
_LAG_U = np.ascontiguousarray(_LAG_U)
_LAG_W = np.ascontiguousarray(_LAG_W)


# --------------------------------------------------------------------
# scalar implementations (plain python; njit-compiled below when available)
# --------------------------------------------------------------------

def psqrt_py(z):
    re = z.real
    im = z.imag
    if im == 0.0:
        if re >= 0.0:
            return complex(math.sqrt(re), 0.0)
        return complex(0.0, math.sqrt(-re))
    m = math.hypot(re, im)
    s = math.sqrt(m)
    half = 0.5 * math.atan2(im, re)
    return complex(s * math.cos(half), s * math.sin(half))


def k0_py(z):
    az = abs(z)
    if az < 2.0:
        w = z * z * 0.25
        i0 = 1.0 + 0.0j
        term = 1.0 + 0.0j
        s = 0.0 + 0.0j
        h = 0.0
        for n in range(1, 19):
            term = term * w / (n * n)
            h += 1.0 / n
            i0 += term
            s += term * h
        return -(cmath.log(0.5 * z) + EULER) * i0 + s
    acc = 0.0 + 0.0j
    tz = 2.0 * z
    for i in range(_LAG_U.shape[0]):
        acc += _LAG_W[i] / cmath.sqrt(_LAG_U[i] + tz)
    return cmath.exp(-z) * acc


def i0_py(z):
    # ascending series; intended for |z| <= ~35 (checked by callers)
    w = z * z * 0.25
    acc = 1.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(1, 60):
        term = term * w / (n * n)
        acc += term
        if abs(term) < 1e-18 * abs(acc):
            break
    return acc


def green1_py(k, a, b, r):
    # exact formula is cancellation-safe for all r in d=1
    return (cmath.exp(-a * r) / (2.0 * a) - cmath.exp(-b * r) / (2.0 * b)) / (2.0 * k)


def green3_py(k, a, b, r):
    scale = max(abs(a), abs(b)) * r
    if scale >= SERIES_SWITCH:
        return (cmath.exp(-a * r) - cmath.exp(-b * r)) / (8.0 * math.pi * k * r)
    # sum_{n>=1} (-1)^n r^{n-1} (a^n - b^n) / n!
    acc = 0.0 + 0.0j
    apow = 1.0 + 0.0j
    bpow = 1.0 + 0.0j
    rpow = 1.0
    fact = 1.0
    sign = -1.0
    for n in range(1, 8):
        apow *= a
        bpow *= b
        fact *= n
        acc += sign * rpow * (apow - bpow) / fact
        rpow *= r
        sign = -sign
    return acc * INV8PI / k


def green2_py(k, a, b, r):
    scale = max(abs(a), abs(b)) * r
    if scale >= SERIES_SWITCH:
        return (k0_py(a * r) - k0_py(b * r)) / (4.0 * math.pi * k)
    # K0(ar) - K0(br) with the log singularities cancelled analytically:
    #   -[ln(a) I0(ar) - ln(b) I0(br)] - (ln(r/2)+EULER)(I0(ar)-I0(br))
    #   + (S(ar) - S(br)),   S(z) = sum H_n (z^2/4)^n / (n!)^2
    la = cmath.log(a)
    lb = cmath.log(b)
    q = 0.25 * r * r
    i0a = 1.0 + 0.0j
    i0b = 1.0 + 0.0j
    d_i = 0.0 + 0.0j
    d_s = 0.0 + 0.0j
    kp = 1.0 + 0.0j
    qp = 1.0
    fact2 = 1.0
    h = 0.0
    for n in range(1, 5):
        kp *= k
        qp *= q
        fact2 *= n * n
        h += 1.0 / n
        c = qp / fact2
        mk = kp if n % 2 == 0 else -kp
        i0a += mk * c          # (-k)^n branch
        i0b += kp * c
        if n % 2 == 1:
            d_i += -2.0 * kp * c
            d_s += -2.0 * h * kp * c
    diff = -(la * i0a - lb * i0b)
    if r > 0.0:
        diff += -(math.log(0.5 * r) + EULER) * d_i + d_s
    return diff / (4.0 * math.pi * k)


def swave3_py(k, a, b, r, rp):
    u = abs(r - rp)
    v = r + rp
    scale = max(abs(a), abs(b)) * v
    if scale >= SERIES_SWITCH:
        fa = (cmath.exp(-a * u) - cmath.exp(-a * v)) / (2.0 * a)
        fb = (cmath.exp(-b * u) - cmath.exp(-b * v)) / (2.0 * b)
        return (fa - fb) / (2.0 * k)
    # sum_{m>=2} (-1)^m (a^{m-1} - b^{m-1})(u^m - v^m) / (4 k m!)
    acc = 0.0 + 0.0j
    apow = a
    bpow = b
    upow = u * u
    vpow = v * v
    fact = 2.0
    sign = 1.0
    for m in range(2, 10):
        acc += sign * (apow - bpow) * (upow - vpow) / fact
        apow *= a
        bpow *= b
        upow *= u
        vpow *= v
        fact *= m + 1
        sign = -sign
    return acc / (4.0 * k)


def swave2_py(k, a, b, r, rp):
    lo = r if r < rp else rp
    hi = r + rp - lo
    ha = i0_py(a * lo) * k0_py(a * hi)
    hb = i0_py(b * lo) * k0_py(b * hi)
    return math.sqrt(r * rp) * (ha - hb) / (2.0 * k)


# --------------------------------------------------------------------
# pure-numpy vectorized fallbacks
# --------------------------------------------------------------------

def psqrt_np(z):
    z = np.asarray(z, dtype=np.complex128)
    th = np.arctan2(z.imag, z.real)
    neg_axis = (z.imag == 0.0) & (z.real < 0.0)
    if np.any(neg_axis):
        th = np.where(neg_axis, np.pi, th)
    s = np.sqrt(np.abs(z))
    return s * np.exp(0.5j * th)


def k0_np(z):
    z = np.asarray(z, dtype=np.complex128)
    flat = z.ravel()
    out = np.empty(flat.shape, dtype=np.complex128)
    small = np.abs(flat) < 2.0
    zs = flat[small]
    if zs.size:
        w = zs * zs * 0.25
        i0 = np.ones_like(zs)
        term = np.ones_like(zs)
        s = np.zeros_like(zs)
        h = 0.0
        for n in range(1, 19):
            term = term * w / (n * n)
            h += 1.0 / n
            i0 += term
            s += term * h
        out[small] = -(np.log(0.5 * zs) + EULER) * i0 + s
    zl = flat[~small]
    if zl.size:
        out[~small] = np.exp(-zl) * np.sum(
            _LAG_W[:, None] / np.sqrt(_LAG_U[:, None] + 2.0 * zl[None, :]), axis=0
        )
    return out.reshape(z.shape)


def i0_np(z):
    z = np.asarray(z, dtype=np.complex128)
    w = z * z * 0.25
    acc = np.ones_like(z)
    term = np.ones_like(z)
    for n in range(1, 60):
        term = term * w / (n * n)
        acc = acc + term
        if np.all(np.abs(term) < 1e-18 * np.abs(acc)):
            break
    return acc


def green1_np(k, a, b, r):
    r = np.asarray(r, dtype=np.float64)
    return (np.exp(-a * r) / (2.0 * a) - np.exp(-b * r) / (2.0 * b)) / (2.0 * k)


def green3_np(k, a, b, r):
    r = np.asarray(r, dtype=np.float64)
    flat = r.ravel()
    out = np.empty(flat.shape, dtype=np.complex128)
    small = max(abs(a), abs(b)) * flat < SERIES_SWITCH
    rg = flat[~small]
    if rg.size:
        out[~small] = (np.exp(-a * rg) - np.exp(-b * rg)) / (8.0 * np.pi * k * rg)
    rs = flat[small]
    if rs.size:
        acc = np.zeros(rs.shape, dtype=np.complex128)
        apow = 1.0 + 0.0j
        bpow = 1.0 + 0.0j
        rpow = np.ones_like(rs)
        fact = 1.0
        sign = -1.0
        for n in range(1, 8):
            apow *= a
            bpow *= b
            fact *= n
            acc += sign * rpow * ((apow - bpow) / fact)
            rpow = rpow * rs
            sign = -sign
        out[small] = acc * (INV8PI / k)
    return out.reshape(r.shape)


def green2_np(k, a, b, r):
    r = np.asarray(r, dtype=np.float64)
    flat = r.ravel()
    out = np.empty(flat.shape, dtype=np.complex128)
    small = max(abs(a), abs(b)) * flat < SERIES_SWITCH
    rg = flat[~small]
    if rg.size:
        out[~small] = (k0_np(a * rg) - k0_np(b * rg)) / (4.0 * np.pi * k)
    rs = flat[small]
    if rs.size:
        la = cmath.log(a)
        lb = cmath.log(b)
        q = 0.25 * rs * rs
        i0a = np.ones(rs.shape, dtype=np.complex128)
        i0b = np.ones(rs.shape, dtype=np.complex128)
        d_i = np.zeros(rs.shape, dtype=np.complex128)
        d_s = np.zeros(rs.shape, dtype=np.complex128)
        kp = 1.0 + 0.0j
        qp = np.ones_like(q)
        fact2 = 1.0
        h = 0.0
        for n in range(1, 5):
            kp *= k
            qp = qp * q
            fact2 *= n * n
            h += 1.0 / n
            c = qp / fact2
            mk = kp if n % 2 == 0 else -kp
            i0a += mk * c
            i0b += kp * c
            if n % 2 == 1:
                d_i += -2.0 * kp * c
                d_s += -2.0 * h * kp * c
        diff = -(la * i0a - lb * i0b)
        pos = rs > 0.0
        logterm = np.zeros(rs.shape, dtype=np.complex128)
        logterm[pos] = -(np.log(0.5 * rs[pos]) + EULER) * d_i[pos] + d_s[pos]
        out[small] = (diff + logterm) / (4.0 * np.pi * k)
    return out.reshape(r.shape)


def green_matrix_1d_np(k, a, b, x):
    r = np.abs(x[:, None] - x[None, :])
    return green1_np(k, a, b, r)


def swave3_matrix_np(k, a, b, r):
    u = np.abs(r[:, None] - r[None, :])
    v = r[:, None] + r[None, :]
    out = np.empty(u.shape, dtype=np.complex128)
    small = max(abs(a), abs(b)) * v < SERIES_SWITCH
    big = ~small
    if np.any(big):
        ub, vb = u[big], v[big]
        fa = (np.exp(-a * ub) - np.exp(-a * vb)) / (2.0 * a)
        fb = (np.exp(-b * ub) - np.exp(-b * vb)) / (2.0 * b)
        out[big] = (fa - fb) / (2.0 * k)
    if np.any(small):
        us, vs = u[small], v[small]
        acc = np.zeros(us.shape, dtype=np.complex128)
        apow = a
        bpow = b
        upow = us * us
        vpow = vs * vs
        fact = 2.0
        sign = 1.0
        for m in range(2, 10):
            acc += sign * ((apow - bpow) / fact) * (upow - vpow)
            apow *= a
            bpow *= b
            upow = upow * us
            vpow = vpow * vs
            fact *= m + 1
            sign = -sign
        out[small] = acc / (4.0 * k)
    return out


def swave2_matrix_np(k, a, b, r):
    lo = np.minimum(r[:, None], r[None, :])
    hi = np.maximum(r[:, None], r[None, :])
    ha = i0_np(a * lo) * k0_np(a * hi)
    hb = i0_np(b * lo) * k0_np(b * hi)
    w = np.sqrt(r[:, None] * r[None, :])
    return w * (ha - hb) / (2.0 * k)


def _spectral_triplet_np(lam):
    k = psqrt_np(lam)
    return k, psqrt_np(-k), psqrt_np(k)


def bound_ratio_batch_np(d, lam, r):
    lam = np.asarray(lam, dtype=np.complex128)
    r = np.asarray(r, dtype=np.float64)
    k, a, b = _spectral_triplet_np(lam)
    ak = np.abs(k)
    if d == 1:
        g = (np.exp(-a * r) / (2.0 * a) - np.exp(-b * r) / (2.0 * b)) / (2.0 * k)
        return np.abs(g) / (C1 / ak ** 1.5)
    if d == 3:
        g = np.empty(lam.shape, dtype=np.complex128)
        small = np.maximum(np.abs(a), np.abs(b)) * r < SERIES_SWITCH
        big = ~small
        if np.any(big):
            rb = r[big]
            g[big] = (np.exp(-a[big] * rb) - np.exp(-b[big] * rb)) / (
                8.0 * np.pi * k[big] * rb
            )
        if np.any(small):
            rs, as_, bs = r[small], a[small], b[small]
            acc = np.zeros(rs.shape, dtype=np.complex128)
            apow = np.ones_like(as_)
            bpow = np.ones_like(bs)
            rpow = np.ones_like(rs)
            fact = 1.0
            sign = -1.0
            for n in range(1, 8):
                apow = apow * as_
                bpow = bpow * bs
                fact *= n
                acc += sign * rpow * (apow - bpow) / fact
                rpow = rpow * rs
                sign = -sign
            g[small] = acc * INV8PI / k[small]
        return np.abs(g) / (C3 / np.sqrt(ak))
    raise ValueError("bound ratio batch supports d in {1,3}")


def res_sin_np(p, q):
    s = p + q
    return np.exp(-2.0 * p) + np.exp(-2.0 * q) + 2.0 * np.exp(-s) * np.sin(s) - 2.0


def res_cos3d_np(p, q):
    s = p + q
    return (
        np.exp(-2.0 * p)
        + np.exp(-2.0 * q)
        - 2.0 * np.exp(-s) * np.cos(s)
        - 2.0 * (p * p + q * q)
    )


def res_cos_np(p, q):
    s = p + q
    return np.exp(-2.0 * p) + np.exp(-2.0 * q) - 2.0 * np.exp(-s) * np.cos(s) - 2.0


def phi_deriv_np(p0, q):
    s = p0 + q
    e = np.exp(-s)
    return -2.0 * np.exp(-2.0 * q) + 2.0 * e * np.cos(s) + 2.0 * e * np.sin(s) - 4.0 * q


_NP_IMPLS = {
    "psqrt": psqrt_np,
    "k0_arr": k0_np,
    "i0_arr": i0_np,
    "green1_arr": green1_np,
    "green2_arr": green2_np,
    "green3_arr": green3_np,
    "green_matrix_1d": green_matrix_1d_np,
    "swave3_matrix": swave3_matrix_np,
    "swave2_matrix": swave2_matrix_np,
    "bound_ratio_batch": bound_ratio_batch_np,
    "res_sin_arr": res_sin_np,
    "res_cos3d_arr": res_cos3d_np,
    "res_cos_arr": res_cos_np,
    "phi_deriv_arr": phi_deriv_np,
}


# --------------------------------------------------------------------
# numba versions
# --------------------------------------------------------------------

if NUMBA_AVAILABLE:
    from numba import njit

    psqrt_nb = njit(cache=True)(psqrt_py)
    k0_nb = njit(cache=True)(k0_py)
    i0_nb = njit(cache=True)(i0_py)
    green1_nb = njit(cache=True)(green1_py)
    green3_nb = njit(cache=True)(green3_py)
    green2_nb = njit(cache=True)(green2_py)
    swave3_nb = njit(cache=True)(swave3_py)
    swave2_nb = njit(cache=True)(swave2_py)

    @njit(cache=True)
    def k0_arr_nb(z):
        flat = z.ravel()
        out = np.empty(flat.shape, dtype=np.complex128)
        for i in range(flat.shape[0]):
            out[i] = k0_nb(flat[i])
        return out.reshape(z.shape)

    @njit(cache=True)
    def i0_arr_nb(z):
        flat = z.ravel()
        out = np.empty(flat.shape, dtype=np.complex128)
        for i in range(flat.shape[0]):
            out[i] = i0_nb(flat[i])
        return out.reshape(z.shape)

    @njit(cache=True)
    def green1_arr_nb(k, a, b, r):
        flat = r.ravel()
        out = np.empty(flat.shape, dtype=np.complex128)
        for i in range(flat.shape[0]):
            out[i] = green1_nb(k, a, b, flat[i])
        return out.reshape(r.shape)

    @njit(cache=True)
    def green2_arr_nb(k, a, b, r):
        flat = r.ravel()
        out = np.empty(flat.shape, dtype=np.complex128)
        for i in range(flat.shape[0]):
            out[i] = green2_nb(k, a, b, flat[i])
        return out.reshape(r.shape)

    @njit(cache=True)
    def green3_arr_nb(k, a, b, r):
        flat = r.ravel()
        out = np.empty(flat.shape, dtype=np.complex128)
        for i in range(flat.shape[0]):
            out[i] = green3_nb(k, a, b, flat[i])
        return out.reshape(r.shape)

    @njit(cache=True)
    def green_matrix_1d_nb(k, a, b, x):
        n = x.shape[0]
        out = np.empty((n, n), dtype=np.complex128)
        for i in range(n):
            for j in range(i, n):
                g = green1_nb(k, a, b, abs(x[i] - x[j]))
                out[i, j] = g
                out[j, i] = g
        return out

    @njit(cache=True)
    def swave3_matrix_nb(k, a, b, r):
        n = r.shape[0]
        out = np.empty((n, n), dtype=np.complex128)
        for i in range(n):
            for j in range(i, n):
                g = swave3_nb(k, a, b, r[i], r[j])
                out[i, j] = g
                out[j, i] = g
        return out

    @njit(cache=True)
    def swave2_matrix_nb(k, a, b, r):
        n = r.shape[0]
        out = np.empty((n, n), dtype=np.complex128)
        for i in range(n):
            for j in range(i, n):
                g = swave2_nb(k, a, b, r[i], r[j])
                out[i, j] = g
                out[j, i] = g
        return out

    @njit(cache=True)
    def bound_ratio_batch_nb(d, lam, r):
        n = lam.shape[0]
        out = np.empty(n, dtype=np.float64)
        for i in range(n):
            k = psqrt_nb(lam[i])
            a = psqrt_nb(-k)
            b = psqrt_nb(k)
            ak = abs(k)
            if d == 1:
                g = green1_nb(k, a, b, r[i])
                out[i] = abs(g) / (C1 / ak ** 1.5)
            else:
                g = green3_nb(k, a, b, r[i])
                out[i] = abs(g) / (C3 / math.sqrt(ak))
        return out

    @njit(cache=True)
    def res_sin_nb(p, q):
        out = np.empty(p.shape[0], dtype=np.float64)
        for i in range(p.shape[0]):
            s = p[i] + q[i]
            out[i] = (
                math.exp(-2.0 * p[i])
                + math.exp(-2.0 * q[i])
                + 2.0 * math.exp(-s) * math.sin(s)
                - 2.0
            )
        return out

    @njit(cache=True)
    def res_cos3d_nb(p, q):
        out = np.empty(p.shape[0], dtype=np.float64)
        for i in range(p.shape[0]):
            s = p[i] + q[i]
            out[i] = (
                math.exp(-2.0 * p[i])
                + math.exp(-2.0 * q[i])
                - 2.0 * math.exp(-s) * math.cos(s)
                - 2.0 * (p[i] * p[i] + q[i] * q[i])
            )
        return out

    @njit(cache=True)
    def res_cos_nb(p, q):
        out = np.empty(p.shape[0], dtype=np.float64)
        for i in range(p.shape[0]):
            s = p[i] + q[i]
            out[i] = (
                math.exp(-2.0 * p[i])
                + math.exp(-2.0 * q[i])
                - 2.0 * math.exp(-s) * math.cos(s)
                - 2.0
            )
        return out

    @njit(cache=True)
    def phi_deriv_nb(p0, q):
        out = np.empty(q.shape[0], dtype=np.float64)
        for i in range(q.shape[0]):
            s = p0[i] + q[i]
            e = math.exp(-s)
            out[i] = (
                -2.0 * math.exp(-2.0 * q[i])
                + 2.0 * e * math.cos(s)
                + 2.0 * e * math.sin(s)
                - 4.0 * q[i]
            )
        return out

    def _bound_ratio_dispatch_nb(d, lam, r):
        lam = np.ascontiguousarray(np.asarray(lam, dtype=np.complex128).ravel())
        r = np.ascontiguousarray(np.asarray(r, dtype=np.float64).ravel())
        return bound_ratio_batch_nb(d, lam, r)

    def _as_float_pair(f_nb):
        def wrapped(p, q):
            p = np.ascontiguousarray(np.asarray(p, dtype=np.float64).ravel())
            q = np.ascontiguousarray(np.asarray(q, dtype=np.float64).ravel())
            return f_nb(p, q)
        return wrapped

    _NB_IMPLS = {
        "psqrt": psqrt_np,  # branch fixes are cheap; batch psqrt stays numpy
        "k0_arr": lambda z: k0_arr_nb(np.asarray(z, dtype=np.complex128)),
        "i0_arr": lambda z: i0_arr_nb(np.asarray(z, dtype=np.complex128)),
        "green1_arr": lambda k, a, b, r: green1_arr_nb(
            k, a, b, np.asarray(r, dtype=np.float64)
        ),
        "green2_arr": lambda k, a, b, r: green2_arr_nb(
            k, a, b, np.asarray(r, dtype=np.float64)
        ),
        "green3_arr": lambda k, a, b, r: green3_arr_nb(
            k, a, b, np.asarray(r, dtype=np.float64)
        ),
        "green_matrix_1d": green_matrix_1d_nb,
        "swave3_matrix": swave3_matrix_nb,
        "swave2_matrix": swave2_matrix_nb,
        "bound_ratio_batch": _bound_ratio_dispatch_nb,
        "res_sin_arr": _as_float_pair(res_sin_nb),
        "res_cos3d_arr": _as_float_pair(res_cos3d_nb),
        "res_cos_arr": _as_float_pair(res_cos_nb),
        "phi_deriv_arr": _as_float_pair(phi_deriv_nb),
    }
else:
    _NB_IMPLS = {}

_ACTIVE = _NB_IMPLS if USE_NUMBA else _NP_IMPLS

psqrt = _ACTIVE["psqrt"]
k0_arr = _ACTIVE["k0_arr"]
i0_arr = _ACTIVE["i0_arr"]
green1_arr = _ACTIVE["green1_arr"]
green2_arr = _ACTIVE["green2_arr"]
green3_arr = _ACTIVE["green3_arr"]
green_matrix_1d = _ACTIVE["green_matrix_1d"]
swave3_matrix = _ACTIVE["swave3_matrix"]
swave2_matrix = _ACTIVE["swave2_matrix"]
bound_ratio_batch = _ACTIVE["bound_ratio_batch"]
res_sin_arr = _ACTIVE["res_sin_arr"]
res_cos3d_arr = _ACTIVE["res_cos3d_arr"]
res_cos_arr = _ACTIVE["res_cos_arr"]
phi_deriv_arr = _ACTIVE["phi_deriv_arr"]
