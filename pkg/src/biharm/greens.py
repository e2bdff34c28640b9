"""Second- and fourth-order resolvent kernels in d = 1, 2, 3.

The fourth-order kernel is the split (G_k - G_{-k})/(2k) of two
second-order kernels.  Near the diagonal that difference cancels
catastrophically, so evaluation switches to truncated series once
max(|sqrt(k)|, |sqrt(-k)|) * r < 1e-4; the two regimes agree to
~1e-10 relative at the crossover.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .branch import SpectralPoint, spectral_point
from .errors import (DiagonalSingularity, LambdaOnPositiveAxis, MissingC2,
                     StencilTouchesDiagonal)

__all__ = [
    "GreenValue", "laplace_green", "biharmonic_green", "green_bound",
    "bound_ratio", "pde_residual", "C2Estimate", "estimate_c2",
]

C1 = _kernels.C1
C3 = _kernels.C3


@dataclass(frozen=True)
class GreenValue:
    value: complex
    regime: str  # "generic" or "diagonal_series"


def laplace_green(d: int, k, r: float) -> complex:
    """Kernel of (-Delta - k)^{-1} at separation r, for k off [0, inf)."""
    k = complex(k)
    if k.imag == 0.0 and k.real >= 0.0:
        raise LambdaOnPositiveAxis(f"k={k} lies on [0, inf)")
    if r < 0:
        raise ValueError("separation r must be >= 0")
    root = _kernels.psqrt_py(-k)
    if d == 1:
        return cmath.exp(-root * r) / (2.0 * root)
    if r == 0.0:
        raise DiagonalSingularity(f"d={d} second-order kernel diverges at r=0")
    if d == 2:
        return _kernels.k0_py(root * r) / (2.0 * math.pi)
    if d == 3:
        return cmath.exp(-root * r) / (4.0 * math.pi * r)
    raise ValueError(f"dimension {d} not supported")


def biharmonic_green(d: int, sp: SpectralPoint, r: float) -> GreenValue:
    """Fourth-order resolvent kernel; finite at r=0 for d = 1, 2, 3."""
    if r < 0:
        raise ValueError("separation r must be >= 0")
    k, a, b = sp.k, sp.sqrt_neg_k, sp.sqrt_k
    series = max(abs(a), abs(b)) * r < _kernels.SERIES_SWITCH
    if d == 1:
        return GreenValue(_kernels.green1_py(k, a, b, r), "generic")
    if d == 2:
        return GreenValue(_kernels.green2_py(k, a, b, r),
                          "diagonal_series" if series else "generic")
    if d == 3:
        return GreenValue(_kernels.green3_py(k, a, b, r),
                          "diagonal_series" if series else "generic")
    raise ValueError(f"dimension {d} not supported")


def green_bound(d: int, sp: SpectralPoint, c2_estimate: float | None = None) -> float:
    """Pointwise kernel bound c_d / |k|^{2-d/2}.

    c_1 = 1/(2 sqrt 2) and c_3 = 1/(4 sqrt 2 pi) are sharp; d=2 needs a
    numerically estimated constant (see :func:`estimate_c2`).
    """
    ak = sp.abs_k
    if d == 1:
        return C1 / ak ** 1.5
    if d == 3:
        return C3 / math.sqrt(ak)
    if d == 2:
        if c2_estimate is None:
            raise MissingC2("d=2 bound needs a caller-supplied c2 estimate")
        return c2_estimate / ak
    raise ValueError(f"dimension {d} not supported")


def bound_ratio(d: int, sp: SpectralPoint, r: float,
                c2_estimate: float | None = None) -> float:
    """|kernel| / bound; stays <= 1 (+ fp slack) for d in {1,3}."""
    g = biharmonic_green(d, sp, r).value
    return abs(g) / green_bound(d, sp, c2_estimate)


def bound_ratio_samples(d: int, lams, rs) -> np.ndarray:
    """Vectorized bound ratios for d in {1,3} (hot path, batch form)."""
    return _kernels.bound_ratio_batch(d, lams, rs)


def _green1_longdouble(sp: SpectralPoint, r):
    """d=1 kernel in extended precision (for the stencil check only).

    A fourth difference at h ~ 5e-3 amplifies double-precision rounding
    of the five kernel values past the O(h^2) truncation term, so the
    stencil is formed in clongdouble; the formula is identical.
    """
    a = np.clongdouble(sp.sqrt_neg_k)
    b = np.clongdouble(sp.sqrt_k)
    k = np.clongdouble(sp.k)
    r = np.longdouble(r)
    return (np.exp(-a * r) / (2 * a) - np.exp(-b * r) / (2 * b)) / (2 * k)


def pde_residual(d: int, sp: SpectralPoint, r: float, h: float) -> float:
    """Relative residual of the fourth-derivative equation at one point.

    Centred fourth-difference stencil, O(h^2) accurate; validates that
    the d=1 kernel solves f'''' = lambda f away from the diagonal.
    """
    if d != 1:
        raise ValueError("pde residual check implemented for d=1 only")
    if not r > 10.0 * h:
        raise StencilTouchesDiagonal(f"need r > 10h, got r={r}, h={h}")
    f = [_green1_longdouble(sp, r + j * h) for j in (-2, -1, 0, 1, 2)]
    center = complex(f[2])
    prod = biharmonic_green(1, sp, r).value
    if abs(prod - center) > 1e-12 * abs(center):
        raise AssertionError("extended-precision kernel disagrees with production path")
    h = np.longdouble(h)
    d4 = (f[0] - 4.0 * f[1] + 6.0 * f[2] - 4.0 * f[3] + f[4]) / h ** 4
    lf = np.clongdouble(sp.lam) * f[2]
    return float(abs(complex(d4 - lf)) / abs(complex(lf)))


@dataclass(frozen=True)
class C2Estimate:
    value: float
    arg_lambda: float
    scaled_r: float
    levels: int
    history: tuple

    def __float__(self):
        return self.value


def estimate_c2(arg_grid: int = 64, radius_grid: int = 64,
                refinement_levels: int = 3, s_max: float = 40.0) -> C2Estimate:
    """Estimate the d=2 pointwise constant as a scan supremum.

    Scaling r -> |k|^{1/2} r reduces the supremum of |k| |G(r)| to the
    slice |k| = 1, so the scan runs over (arg lambda, scaled r) in
    [-pi, pi] x [0, s_max] with dyadic refinement around the running
    maximizer.  The value is monotone nondecreasing in refinement.
    """
    if arg_grid < 64 or radius_grid < 64:
        raise ValueError("grids must be >= 64")

    def scan(args, ss, best):
        for th in args:
            if th == 0.0:  # on the essential spectrum; skip the exact axis
                continue
            sp = spectral_point(complex(math.cos(th), math.sin(th)))
            vals = np.abs(_kernels.green2_arr(sp.k, sp.sqrt_neg_k, sp.sqrt_k,
                                              np.asarray(ss)))
            i = int(np.argmax(vals))
            if vals[i] > best[0]:
                best = (float(vals[i]), float(th), float(ss[i]))
        return best

    args = np.linspace(-math.pi, math.pi, arg_grid)
    ss = np.linspace(0.0, s_max, radius_grid)
    best = scan(args, ss, (-1.0, 0.0, 0.0))
    history = [best[0]]
    dth = args[1] - args[0]
    ds = ss[1] - ss[0]
    for _ in range(refinement_levels):
        dth *= 0.5
        ds *= 0.5
        args = np.linspace(best[1] - 2 * dth, best[1] + 2 * dth, 9)
        args = args[(args > -math.pi - 1e-12) & (args <= math.pi + 1e-12)]
        lo = max(0.0, best[2] - 2 * ds)
        ss = np.linspace(lo, best[2] + 2 * ds, 9)
        best = scan(args, ss, best)
        history.append(best[0])
    return C2Estimate(value=best[0], arg_lambda=best[1], scaled_r=best[2],
                      levels=refinement_levels, history=tuple(history))
