"""Point-spectrum candidates as zeros of lam -> det(I + K_lam).

A rectangular scan flags local minima of log|det| as seeds, Muller's
derivative-free iteration polishes them (the determinant is only
available pointwise through LU), and candidates pass a hard residual
gate before they count.  Everything is deterministic for a fixed
configuration.
"""
import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .bs import assemble, fredholm_det
from .errors import (DivergedOutOfRegion, EmptySpectrum, NoConvergence)
from .potentials import Potential, default_quadrature, l1_norm
from .quadrature import Quadrature

__all__ = [
    "ScanRegion", "EigenvalueCandidate", "DetScan", "det_scan", "refine",
    "locate", "WeakCouplingFit", "weak_coupling_fit", "muller",
    "ACCEPT_LOG_RESIDUAL",
]

ACCEPT_LOG_RESIDUAL = math.log(1e-8)


@dataclass(frozen=True)
class ScanRegion:
    re_range: tuple
    im_range: tuple
    grid: tuple = (16, 16)
    eps_shift: float = 1e-6

    def __post_init__(self):
        if self.grid[0] < 8 or self.grid[1] < 8:
            raise ValueError("scan grid must be at least 8x8")
        touches_axis = (self.re_range[1] >= 0.0
                        and self.im_range[0] <= 0.0 <= self.im_range[1])
        if touches_axis and not self.eps_shift > 0:
            raise ValueError("region touches [0, inf): eps_shift must be > 0")

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_range[0] + self.re_range[1]),
                       0.5 * (self.im_range[0] + self.im_range[1]))

    @property
    def radius(self) -> float:
        return math.hypot(self.re_range[1] - self.re_range[0],
                          self.im_range[1] - self.im_range[0])

    def contains(self, lam: complex, slack: float = 0.0) -> bool:
        return (self.re_range[0] - slack <= lam.real <= self.re_range[1] + slack
                and self.im_range[0] - slack <= lam.imag <= self.im_range[1] + slack)

    @staticmethod
    def disk(radius: float, center: complex = 0j, grid=(16, 16),
             eps_shift: float = 1e-6) -> "ScanRegion":
        return ScanRegion(
            re_range=(center.real - radius, center.real + radius),
            im_range=(center.imag - radius, center.imag + radius),
            grid=grid, eps_shift=eps_shift)


@dataclass(frozen=True)
class EigenvalueCandidate:
    lam: complex
    residual_log_abs_det: float
    refine_iters: int
    enclosure_report: list = field(default_factory=list)
    label: str = "interior"

    @property
    def accepted(self) -> bool:
        return self.residual_log_abs_det <= ACCEPT_LOG_RESIDUAL


@dataclass(frozen=True)
class DetScan:
    lams: np.ndarray       # (ny, nx)
    log_abs_det: np.ndarray
    seeds: list            # local minima, best first


def _det_at(V, lam, quad):
    return fredholm_det(assemble(V, lam, quad))


def _shifted(lam: complex, eps_shift: float) -> complex:
    if lam.imag == 0.0 and lam.real >= 0.0:
        return complex(lam.real, eps_shift)
    return lam


def det_scan(V: Potential, region: ScanRegion,
             quad: Quadrature | None = None) -> DetScan:
    """Evaluate log|det(I+K)| on the region grid and flag local minima."""
    quad = quad or default_quadrature(V)
    nx, ny = region.grid
    res = np.linspace(region.re_range[0], region.re_range[1], nx)
    ims = np.linspace(region.im_range[0], region.im_range[1], ny)
    lams = np.empty((ny, nx), dtype=np.complex128)
    vals = np.empty((ny, nx), dtype=np.float64)
    for j, im in enumerate(ims):
        for i, re in enumerate(res):
            lam = _shifted(complex(re, im), region.eps_shift)
            lams[j, i] = lam
            vals[j, i] = _det_at(V, lam, quad).log_abs
    seeds = []
    for j in range(ny):
        for i in range(nx):
            v = vals[j, i]
            neigh = vals[max(j - 1, 0):j + 2, max(i - 1, 0):i + 2]
            if v <= np.min(neigh):
                seeds.append((v, lams[j, i]))
    seeds.sort(key=lambda t: t[0])
    return DetScan(lams=lams, log_abs_det=vals,
                   seeds=[lam for _, lam in seeds])


def muller(f, seed: complex, scale: float, tol: float = 1e-10,
           max_iter: int = 100, out_of_range=None):
    """Muller's three-point complex root iteration on f.

    Returns (root, iterations).  ``out_of_range(x)`` aborts divergent
    runs; f only needs to be defined pointwise.
    """
    h = 1e-3 * max(abs(seed), scale)
    xs = [seed + h, seed - h * (0.5 + 0.8j), seed]
    fs = [f(x) for x in xs]
    for it in range(1, max_iter + 1):
        x0, x1, x2 = xs
        f0, f1, f2 = fs
        if x2 == x1 or x1 == x0:
            x2 = x2 + h * 1e-3
            fs[2] = f(x2)
            xs = [x0, x1, x2]
            continue
        q = (x2 - x1) / (x1 - x0)
        A = q * f2 - q * (1 + q) * f1 + q * q * f0
        B = (2 * q + 1) * f2 - (1 + q) * (1 + q) * f1 + q * q * f0
        C = (1 + q) * f2
        disc = cmath.sqrt(B * B - 4 * A * C)
        den = B + disc if abs(B + disc) >= abs(B - disc) else B - disc
        if den == 0:
            den = complex(1e-300, 0)
        dx = -(x2 - x1) * 2 * C / den
        x3 = x2 + dx
        if out_of_range is not None and out_of_range(x3):
            raise DivergedOutOfRegion(f"iterate left the region at {x3}")
        if abs(dx) <= tol * max(1.0, abs(x3)):
            return x3, it
        xs = [x1, x2, x3]
        fs = [f1, f2, f(x3)]
    raise NoConvergence(f"muller: no convergence from seed {seed}")


def refine(V: Potential, seed_lambda: complex, quad: Quadrature | None = None,
           region: ScanRegion | None = None) -> EigenvalueCandidate:
    """Polish a scan seed into a candidate; the residual gate decides
    acceptance (check ``.accepted``)."""
    quad = quad or default_quadrature(V)
    eps_shift = region.eps_shift if region is not None else 1e-9

    def f(lam):
        lam = _shifted(lam, eps_shift)
        d = _det_at(V, lam, quad)
        if d.singular:
            return 0.0 + 0.0j
        # overflow-safe complex value: magnitudes here are O(1) because
        # zeros are what the iteration walks into
        m = min(d.log_abs, 200.0)
        return cmath.exp(complex(m, d.arg))

    scale = abs(seed_lambda) if seed_lambda else 1e-3
    out = None
    if region is not None:
        c, rad = region.center, max(region.radius, 1e-12)
        out = lambda x: abs(x - c) > 2.0 * rad
    root, iters = muller(f, seed_lambda, scale, out_of_range=out)
    root = _shifted(root, eps_shift)
    resid = _det_at(V, root, quad).log_abs
    label = "interior"
    if abs(root.imag) <= 10 * eps_shift and root.real >= 0:
        label = "candidate (one-sided principle only)"
    return EigenvalueCandidate(lam=root, residual_log_abs_det=resid,
                               refine_iters=iters, label=label)


def locate(V: Potential, region: ScanRegion,
           quad: Quadrature | None = None, max_seeds: int = 12,
           dedupe_rel: float = 1e-6) -> list:
    """Scan, refine, dedupe; accepted candidates sorted by (re, im)."""
    quad = quad or default_quadrature(V)
    scan = det_scan(V, region, quad)
    found = []
    for seed in scan.seeds[:max_seeds]:
        try:
            cand = refine(V, seed, quad, region)
        except (NoConvergence, DivergedOutOfRegion):
            continue
        if not cand.accepted:
            continue
        if not region.contains(cand.lam, slack=1e-9 * (1 + abs(cand.lam))):
            continue
        found.append(cand)
    deduped = []
    for cand in sorted(found, key=lambda c: c.residual_log_abs_det):
        dup = any(abs(cand.lam - kept.lam) <= dedupe_rel * max(1e-300, abs(kept.lam))
                  for kept in deduped)
        if not dup:
            deduped.append(cand)
    return sorted(deduped, key=lambda c: (c.lam.real, c.lam.imag))


@dataclass(frozen=True)
class WeakCouplingFit:
    exponent: float
    constant: float
    betas: tuple
    eigenvalues: tuple


def _real_det(V, lam, quad):
    d = _det_at(V, lam, quad)
    return math.exp(min(d.log_abs, 200.0)) * math.cos(d.arg)


def weak_coupling_fit(V: Potential, betas, quad: Quadrature | None = None,
                      disk_constant: float | None = None) -> WeakCouplingFit:
    """Ground-state scaling of beta*V for small beta >= 0.

    V must be real-valued, nonpositive, d in {1, 2, 3} (d=2/3 radial).
    For each beta the negative real eigenvalue is bracketed by a sign
    change of the (real) determinant on a log grid inside the expected
    containment disk, then polished by Brent.  The log-log fit returns
    the rate and the constant exp(intercept).
    """
    from .potentials import scale_amplitude

    quad = quad or default_quadrature(V)
    vals = V.profile(quad.nodes)
    if np.max(np.abs(vals.imag)) > 0 or np.max(vals.real) > 1e-14:
        raise ValueError("weak-coupling study needs a real nonpositive potential")
    d = V.dimension
    power = 4.0 / (4.0 - d)
    if disk_constant is None:
        disk_constant = {1: 0.25, 2: 1.0 / 64.0, 3: 0.25 / (4 * math.pi) ** 4}[d]
    l1 = l1_norm(V, quad)
    lams = []
    for beta in betas:
        Vb = scale_amplitude(V, beta)
        r_max = 2.0 * disk_constant * (beta * l1) ** power
        grid = -np.geomspace(r_max, r_max * 1e-6, 40)
        f = lambda s: _real_det(Vb, s, quad)
        prev_s, prev_f = grid[0], f(grid[0])
        bracket = None
        for s in grid[1:]:
            cur = f(s)
            if prev_f == 0.0:
                bracket = (prev_s, prev_s)
                break
            if cur == 0.0 or (cur < 0) != (prev_f < 0):
                bracket = (prev_s, s)
                break
            prev_s, prev_f = s, cur
        if bracket is None:
            raise EmptySpectrum(f"no negative eigenvalue for beta={beta}")
        if bracket[0] == bracket[1]:
            lam = bracket[0]
        else:
            lam = brentq(f, bracket[0], bracket[1], xtol=1e-16 * r_max,
                         rtol=8.9e-16)
        lams.append(lam)
    x = np.log(np.asarray(betas, dtype=float))
    y = np.log(np.abs(np.asarray(lams)))
    slope, intercept = np.polyfit(x, y, 1)
    return WeakCouplingFit(exponent=float(slope),
                           constant=float(math.exp(intercept)),
                           betas=tuple(betas), eigenvalues=tuple(lams))
