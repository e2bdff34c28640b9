"""Point-interaction models: closed-form spectra and narrow-well solves.

The 1D model with coupling alpha has (at most) one eigenvalue
lambda = (1/4) alpha^{4/3} e^{-i pi/3}, present exactly when
Re alpha < |Im alpha|; the radial 3D model with coupling 4 pi alpha has
lambda = -(1/4) alpha^4 when Re alpha < -|Im alpha|.  For |alpha| = 1
those eigenvalues sit on the boundary circle of the L1 enclosure disk,
which is what makes the disk radius sharp.

The narrow-well counterparts solve the explicit interface matching
problem: four (resp. two) decaying/regular exponential branches glued
with full C^3 continuity, the eigenvalue being a zero of the matching
determinant, found with the same Muller machinery the kernel scans use.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoRootInRegion, WrongDimension
from .locator import DivergedOutOfRegion, NoConvergence, muller

__all__ = [
    "DeltaSpectrum", "exact_1d", "exact_3d", "delta_eps_1d", "delta_eps_3d",
    "boundary_sweep", "quartic_root",
]


@dataclass(frozen=True)
class DeltaSpectrum:
    alpha: complex
    dimension: int
    eigenvalue: complex | None
    k: complex | None

    @property
    def empty(self) -> bool:
        return self.eigenvalue is None


def exact_1d(alpha) -> DeltaSpectrum:
    """Closed-form 1D point-interaction spectrum.

    The cube root of 2^{-3/2} alpha e^{-i pi/4} is selected in the open
    first quadrant (Re k > 0, Im k > 0); the other two cube roots
    violate that convention throughout the admissible sector.
    """
    alpha = complex(alpha)
    if not alpha.real < abs(alpha.imag):
        return DeltaSpectrum(alpha=alpha, dimension=1, eigenvalue=None, k=None)
    theta = cmath.phase(alpha)
    if theta <= math.pi / 4.0:
        theta += 2.0 * math.pi          # admissible window (pi/4, 7 pi/4)
    w_mod = abs(alpha) * 2.0 ** -1.5
    w_arg = theta - math.pi / 4.0       # in (0, 3 pi/2)
    k = w_mod ** (1.0 / 3.0) * cmath.exp(1j * w_arg / 3.0)
    lam = 0.25 * abs(alpha) ** (4.0 / 3.0) * cmath.exp(
        1j * (4.0 * theta / 3.0 - math.pi / 3.0))
    return DeltaSpectrum(alpha=alpha, dimension=1, eigenvalue=lam, k=k)


def exact_3d(alpha) -> DeltaSpectrum:
    """Closed-form radial 3D point-interaction spectrum.

    The interface condition f''(0) = alpha f'(0) on the decaying pair
    e^{-k r}, e^{i k r} pins k = 2^{-1/2} alpha e^{i 5 pi/4}; the
    eigenvalue is -(1/4) alpha^4.
    """
    alpha = complex(alpha)
    if not alpha.real < -abs(alpha.imag):
        return DeltaSpectrum(alpha=alpha, dimension=3, eigenvalue=None, k=None)
    karg = cmath.phase(alpha) - 0.75 * math.pi
    if karg <= -math.pi:
        karg += 2.0 * math.pi
    k = (abs(alpha) / math.sqrt(2.0)) * cmath.exp(1j * karg)
    lam = -0.25 * abs(alpha) ** 4 * cmath.exp(4j * cmath.phase(alpha))
    return DeltaSpectrum(alpha=alpha, dimension=3, eigenvalue=lam, k=k)


def quartic_root(lam) -> complex:
    """Fourth root of lam in the open first quadrant (Re>0 and Im>0).

    Exists for every lam off [0, inf): the decaying-solution convention
    of the matching problems.
    """
    lam = complex(lam)
    th = cmath.phase(lam)
    if lam.imag == 0.0:
        if lam.real >= 0.0:
            raise ValueError("no first-quadrant fourth root on [0, inf)")
        th = math.pi
    karg = th / 4.0 if th > 0.0 else th / 4.0 + math.pi / 2.0
    return abs(lam) ** 0.25 * cmath.exp(1j * karg)


def _principal_quartic(z) -> complex:
    z = complex(z)
    m = abs(z)
    if m == 0.0:
        return 0.0j
    th = cmath.phase(z)
    if z.imag == 0.0 and z.real < 0.0:
        th = math.pi
    return m ** 0.25 * cmath.exp(1j * th / 4.0)


def _scaled_det(rows) -> complex:
    m = np.asarray(rows, dtype=np.complex128)
    scale = np.max(np.abs(m), axis=1)
    scale[scale == 0.0] = 1.0
    return complex(np.linalg.det(m / scale[:, None]))


def _match_det_1d(lam, alpha, eps) -> complex:
    """8x8 interface determinant for the 1D narrow well.

    Inside |x| < eps/2 the four branches e^{+-mu x}, e^{+-i mu x} with
    mu^4 = lam - alpha/eps; outside, the two decaying branches on each
    side; continuity of psi and three derivatives at both interfaces.
    """
    k = quartic_root(lam)
    mu = _principal_quartic(lam - alpha / eps)
    xm, xp = -eps / 2.0, eps / 2.0

    def derivs(rate, x):
        e = cmath.exp(rate * x)
        return [e, rate * e, rate * rate * e, rate ** 3 * e]

    left = [derivs(k, xm), derivs(-1j * k, xm)]
    inside_m = [derivs(s, xm) for s in (mu, -mu, 1j * mu, -1j * mu)]
    inside_p = [derivs(s, xp) for s in (mu, -mu, 1j * mu, -1j * mu)]
    right = [derivs(-k, xp), derivs(1j * k, xp)]

    rows = []
    for m in range(4):
        rows.append([-left[0][m], -left[1][m]]
                    + [col[m] for col in inside_m] + [0.0, 0.0])
    for m in range(4):
        rows.append([0.0, 0.0] + [-col[m] for col in inside_p]
                    + [right[0][m], right[1][m]])
    return _scaled_det(rows)


def _match_det_3d(lam, alpha, eps) -> complex:
    """4x4 interface determinant for the radial 3D narrow well.

    In f = r g coordinates: inside (0, eps) the regular branches
    sinh(mu r), sin(mu r) with mu^4 = lam - 3 alpha/eps^3 (unit-mass
    bump); outside the decaying pair e^{-k r}, e^{i k r}; full C^3
    matching at r = eps.
    """
    k = quartic_root(lam)
    mu = _principal_quartic(lam - 3.0 * alpha / eps ** 3)
    r = eps

    def trig_derivs(which):
        if which == "sinh":
            vals = [cmath.sinh(mu * r), cmath.cosh(mu * r)]
            return [vals[0], mu * vals[1], mu * mu * vals[0], mu ** 3 * vals[1]]
        s, c = cmath.sin(mu * r), cmath.cos(mu * r)
        return [s, mu * c, -mu * mu * s, -mu ** 3 * c]

    def exp_derivs(rate):
        e = cmath.exp(rate * r)
        return [e, rate * e, rate * rate * e, rate ** 3 * e]

    inside = [trig_derivs("sinh"), trig_derivs("sin")]
    outside = [exp_derivs(-k), exp_derivs(1j * k)]
    rows = [[inside[0][m], inside[1][m], -outside[0][m], -outside[1][m]]
            for m in range(4)]
    return _scaled_det(rows)


def _locate_matching_root(det, exact: DeltaSpectrum, fallback_radius: float):
    """Polar scan of |det| over the default disk, then Muller refinement."""
    radius = (2.0 * abs(exact.eigenvalue)
              if not exact.empty else 2.0 * fallback_radius)
    n_th, n_r = 48, 16
    thetas = np.linspace(-math.pi, math.pi, n_th, endpoint=False) + math.pi / n_th
    radii = np.geomspace(radius * 1e-3, radius, n_r)
    pts = []
    for rr in radii:
        for th in thetas:
            lam = rr * cmath.exp(1j * th)
            if lam.imag == 0.0 and lam.real >= 0.0:
                lam += 1j * 1e-9 * rr
            pts.append(lam)
    vals = np.array([abs(det(p)) for p in pts])
    scale = float(np.median(vals)) or 1.0
    order = np.argsort(vals)
    best = None
    for idx in order[:6]:
        seed = pts[idx]
        try:
            root, _ = muller(det, seed, scale=0.05 * radius,
                             out_of_range=lambda x: abs(x) > 3.0 * radius)
        except (NoConvergence, DivergedOutOfRegion):
            continue
        if abs(root) > 1.5 * radius:
            continue
        resid = abs(det(root))
        if resid > 1e-7 * scale:
            continue
        if best is None or resid < best[1]:
            best = (root, resid)
    if best is None:
        raise NoRootInRegion(
            f"no matching-determinant zero in the disk of radius {radius:.3g}"
        )
    return best[0]


def delta_eps_1d(alpha, eps, scan_radius: float | None = None) -> complex:
    """Eigenvalue of the 1D narrow well alpha/eps * 1_{|x|<eps/2}."""
    alpha = complex(alpha)
    if not 0.0 < eps <= 0.1:
        raise ValueError("eps must lie in (0, 0.1]")
    exact = exact_1d(alpha)
    fallback = scan_radius or 0.25 * abs(alpha) ** (4.0 / 3.0)
    det = lambda lam: _match_det_1d(lam, alpha, eps)
    return _locate_matching_root(det, exact, fallback)


def delta_eps_3d(alpha, eps, scan_radius: float | None = None) -> complex:
    """Eigenvalue of the radial 3D narrow well (unit-mass bump, coupling
    4 pi alpha)."""
    alpha = complex(alpha)
    if not 0.0 < eps <= 0.1:
        raise ValueError("eps must lie in (0, 0.1]")
    exact = exact_3d(alpha)
    fallback = scan_radius or 0.25 * abs(alpha) ** 4
    det = lambda lam: _match_det_3d(lam, alpha, eps)
    return _locate_matching_root(det, exact, fallback)


def boundary_sweep(d: int, thetas) -> list:
    """Exact spectra for alpha = e^{i theta}; on the admissible arcs all
    eigenvalues land on the circle |lambda| = 1/4."""
    if d == 1:
        return [exact_1d(cmath.exp(1j * th)) for th in thetas]
    if d == 3:
        return [exact_3d(cmath.exp(1j * th)) for th in thetas]
    raise WrongDimension("point models exist for d in {1,3}")
