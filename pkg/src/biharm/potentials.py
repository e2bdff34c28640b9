"""Complex potentials and the norms the eigenvalue bounds consume."""
import csv
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import NotRadial, UnboundedSupportWithoutTail, WrongDimension
from .quadrature import Quadrature, line_quadrature, radial_quadrature

__all__ = [
    "Potential", "NormReport",
    "gaussian_1d", "square_well_1d", "gaussian_3d", "ball_well_3d",
    "disk_well_2d", "inverse_square_3d", "delta_eps_potential", "dirac_delta",
    "grid_potential", "load_grid_csv", "scale_amplitude", "scale_length",
    "as_nonradial", "truncation_radius", "default_quadrature",
    "l1_norm", "lp32_norm", "rollnik_norm", "hardy_norm",
    "rayleigh_sup_bracket", "compute_norms",
]


@dataclass(frozen=True)
class Potential:
    """A complex potential on R^d.

    ``profile`` is the vectorized evaluator: position array for d=1,
    radius array for radial d in {2,3}.  Non-radial 3D potentials carry
    ``evaluate3d`` (points of shape (n, 3)) instead.  ``profile`` must
    return 0 outside ``support_radius`` when that is finite.
    """
    dimension: int
    kind: str  # analytic | grid | delta | delta_eps
    profile: Optional[Callable]
    support_radius: float
    is_radial: bool
    params: dict = field(default_factory=dict)
    label: str = ""
    breakpoints: tuple = ()
    evaluate3d: Optional[Callable] = None

    def evaluate(self, points):
        """Pointwise values; points are positions (d=1) or (n,d) arrays."""
        if self.kind == "delta":
            raise ValueError("distributional point potential has no pointwise values")
        pts = np.asarray(points)
        if self.dimension == 1:
            return self.profile(pts.astype(float))
        if pts.ndim == 1 and self.is_radial:
            return self.profile(pts.astype(float))
        r = np.linalg.norm(pts, axis=-1)
        if self.is_radial:
            return self.profile(r)
        return self.evaluate3d(pts)


@dataclass(frozen=True)
class NormReport:
    l1: Optional[float] = None
    rollnik: Optional[float] = None
    rollnik_stderr: Optional[float] = None
    hardy: Optional[float] = None
    l32: Optional[float] = None


# ------------------------------------------------------------------
# constructors
# ------------------------------------------------------------------

def gaussian_1d(amplitude=1.0, width=1.0, label=""):
    amp = complex(amplitude)
    w = float(width)
    return Potential(
        dimension=1, kind="analytic",
        profile=lambda x: amp * np.exp(-((np.asarray(x, float) / w) ** 2)),
        support_radius=math.inf, is_radial=False,
        params={"amplitude": amp, "width": w},
        label=label or f"gaussian_1d(amp={amp}, width={w})",
    )


def square_well_1d(amplitude=-1.0, half_width=0.5, label=""):
    amp = complex(amplitude)
    hw = float(half_width)
    return Potential(
        dimension=1, kind="analytic",
        profile=lambda x: amp * (np.abs(np.asarray(x, float)) < hw),
        support_radius=hw, is_radial=False,
        params={"amplitude": amp, "half_width": hw},
        label=label or f"square_well_1d(amp={amp}, hw={hw})",
        breakpoints=(-hw, hw),
    )


def gaussian_3d(amplitude=1.0, width=1.0, label=""):
    amp = complex(amplitude)
    w = float(width)
    return Potential(
        dimension=3, kind="analytic",
        profile=lambda r: amp * np.exp(-((np.asarray(r, float) / w) ** 2)),
        support_radius=math.inf, is_radial=True,
        params={"amplitude": amp, "width": w},
        label=label or f"gaussian_3d(amp={amp}, width={w})",
    )


def ball_well_3d(amplitude=-1.0, radius=1.0, label=""):
    amp = complex(amplitude)
    R = float(radius)
    return Potential(
        dimension=3, kind="analytic",
        profile=lambda r: amp * (np.asarray(r, float) < R),
        support_radius=R, is_radial=True,
        params={"amplitude": amp, "radius": R},
        label=label or f"ball_well_3d(amp={amp}, R={R})",
        breakpoints=(R,),
    )


def disk_well_2d(amplitude=-1.0, radius=1.0, label=""):
    amp = complex(amplitude)
    R = float(radius)
    return Potential(
        dimension=2, kind="analytic",
        profile=lambda r: amp * (np.asarray(r, float) < R),
        support_radius=R, is_radial=True,
        params={"amplitude": amp, "radius": R},
        label=label or f"disk_well_2d(amp={amp}, R={R})",
        breakpoints=(R,),
    )


def inverse_square_3d(strength=1.0, label=""):
    s = complex(strength)
    return Potential(
        dimension=3, kind="analytic",
        profile=lambda r: s / np.maximum(np.asarray(r, float), 1e-300) ** 2,
        support_radius=math.inf, is_radial=True,
        params={"strength": s},
        label=label or f"inverse_square_3d({s})",
    )


def delta_eps_potential(dimension, alpha, eps, label=""):
    """Narrow bump converging to the point potential as eps -> 0.

    d=1: alpha/eps on |x| < eps/2 (mass alpha).  d=3: the bump is
    normalized to unit mass, 3*alpha/eps^3 on |x| < eps, so that it
    carries the conventional 4*pi*alpha coupling of the 3D point model
    and its L1 norm is 4*pi*|alpha| independently of eps.
    """
    alpha = complex(alpha)
    eps = float(eps)
    if dimension == 1:
        return Potential(
            dimension=1, kind="delta_eps",
            profile=lambda x: (alpha / eps) * (np.abs(np.asarray(x, float)) < eps / 2),
            support_radius=eps / 2, is_radial=False,
            params={"alpha": alpha, "eps": eps},
            label=label or f"delta_eps_1d(alpha={alpha}, eps={eps})",
            breakpoints=(-eps / 2, eps / 2),
        )
    if dimension == 3:
        amp = 3.0 * alpha / eps ** 3
        return Potential(
            dimension=3, kind="delta_eps",
            profile=lambda r: amp * (np.asarray(r, float) < eps),
            support_radius=eps, is_radial=True,
            params={"alpha": alpha, "eps": eps, "inside_value": amp},
            label=label or f"delta_eps_3d(alpha={alpha}, eps={eps})",
            breakpoints=(eps,),
        )
    raise WrongDimension("delta_eps potentials exist for d in {1,3}")


def dirac_delta(dimension, alpha, label=""):
    """Distributional point potential: alpha*delta (d=1), 4*pi*alpha*delta
    (d=3).  By convention its L1 norm is |alpha| resp. 4*pi*|alpha|."""
    alpha = complex(alpha)
    if dimension not in (1, 3):
        raise WrongDimension("point potential models exist for d in {1,3}")
    return Potential(
        dimension=dimension, kind="delta", profile=None,
        support_radius=0.0, is_radial=dimension != 1,
        params={"alpha": alpha},
        label=label or f"dirac_delta_{dimension}d(alpha={alpha})",
    )


def grid_potential(x, re_v, im_v, dimension, label="grid"):
    """Tabulated potential, linearly interpolated, zero outside the table."""
    x = np.asarray(x, float)
    vals = np.asarray(re_v, float) + 1j * np.asarray(im_v, float)
    order = np.argsort(x)
    x, vals = x[order], vals[order]

    def prof(t):
        t = np.asarray(t, float)
        re = np.interp(t, x, vals.real, left=0.0, right=0.0)
        im = np.interp(t, x, vals.imag, left=0.0, right=0.0)
        return re + 1j * im

    radial = dimension >= 2
    return Potential(
        dimension=dimension, kind="grid", profile=prof,
        support_radius=float(np.max(np.abs(x))), is_radial=radial,
        params={"points": len(x)}, label=label,
        breakpoints=(float(x[0]), float(x[-1])) if not radial else (float(x[-1]),),
    )


def load_grid_csv(path, dimension):
    """CSV with header ``x,re_v,im_v`` (d=1) or ``r,re_v,im_v`` (radial d=3)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header = [h.strip() for h in rows[0]]
    expected = ["x", "re_v", "im_v"] if dimension == 1 else ["r", "re_v", "im_v"]
    if header != expected:
        raise ValueError(f"expected header {expected}, got {header}")
    data = np.asarray([[float(c) for c in row] for row in rows[1:]])
    return grid_potential(data[:, 0], data[:, 1], data[:, 2], dimension,
                          label=f"grid:{path}")


def scale_amplitude(V: Potential, c) -> Potential:
    c = complex(c)
    prof = V.profile
    return replace(V, profile=(lambda t: c * prof(t)),
                   params={**V.params, "amp_scale": c},
                   label=f"{c}*{V.label}")


def scale_length(V: Potential, s: float) -> Potential:
    """V_s(x) = V(x/s)."""
    s = float(s)
    prof = V.profile
    return replace(
        V, profile=(lambda t: prof(np.asarray(t, float) / s)),
        support_radius=V.support_radius * s,
        breakpoints=tuple(b * s for b in V.breakpoints),
        params={**V.params, "length_scale": s},
        label=f"{V.label} stretched x{s}",
    )


def as_nonradial(V: Potential) -> Potential:
    """Wrap a radial 3D potential as a general one (forces the MC paths)."""
    if V.dimension != 3 or not V.is_radial:
        raise NotRadial("as_nonradial expects a radial 3D potential")
    prof = V.profile
    return replace(V, is_radial=False,
                   evaluate3d=lambda pts: prof(np.linalg.norm(pts, axis=-1)),
                   label=V.label + " (as nonradial)")


# ------------------------------------------------------------------
# truncation and default quadratures
# ------------------------------------------------------------------

def truncation_radius(V: Potential, rel_cut=1e-12, tail_tol=1e-10) -> float:
    """Radius enclosing everything but a negligible tail of |V|.

    Finite support wins; otherwise scan outward for |V| < rel_cut * max|V|
    and verify a crude shell-sum tail bound, raising if |V| does not
    decay fast enough for the tail to be ignorable.
    """
    if V.kind == "delta":
        return 0.0
    if math.isfinite(V.support_radius):
        return V.support_radius
    probe = np.geomspace(1e-3, 1e6, 400)
    vals = np.abs(V.profile(probe))
    vmax = float(np.max(vals))
    if vmax == 0.0:
        return 1.0
    idx = np.nonzero(vals >= rel_cut * vmax)[0]
    L = float(probe[idx[-1]]) if idx.size else 1.0
    # shell-sum tail estimate on dyadic shells [2^j L, 2^{j+1} L]
    d = V.dimension
    tail = 0.0
    bulk = vmax * L ** d
    for j in range(22):
        lo, hi = L * 2.0 ** j, L * 2.0 ** (j + 1)
        m = float(np.max(np.abs(V.profile(np.linspace(lo, hi, 16)))))
        tail += m * hi ** (d - 1) * (hi - lo)
    if tail > tail_tol * max(bulk, 1e-300):
        raise UnboundedSupportWithoutTail(
            f"{V.label}: no truncation radius with tail below {tail_tol}"
        )
    return L


def default_quadrature(V: Potential, L=None, panels=16, order=10) -> Quadrature:
    if L is None:
        L = truncation_radius(V)
        if L == 0.0:
            raise ValueError("point potential has no quadrature; use delta_eps")
    if V.dimension == 1:
        return line_quadrature(L, panels=panels, order=order,
                               breakpoints=V.breakpoints)
    return radial_quadrature(L, panels=panels, order=order,
                             breakpoints=V.breakpoints)


def _measure_weights(V: Potential, quad: Quadrature):
    """Quadrature weights against d-dimensional Lebesgue measure."""
    if V.dimension == 1:
        return quad.weights
    r = quad.nodes
    if V.dimension == 2:
        return quad.weights * 2.0 * np.pi * r
    return quad.weights * 4.0 * np.pi * r ** 2


# ------------------------------------------------------------------
# norms
# ------------------------------------------------------------------

def l1_norm(V: Potential, quad: Quadrature | None = None) -> float:
    if V.kind == "delta":
        alpha = abs(V.params["alpha"])
        return alpha if V.dimension == 1 else 4.0 * math.pi * alpha
    if V.dimension == 3 and not V.is_radial:
        return _l1_nonradial_3d(V)
    quad = quad or default_quadrature(V)
    w = _measure_weights(V, quad)
    return float(np.sum(w * np.abs(V.profile(quad.nodes))))


def _l1_nonradial_3d(V: Potential, panels=6, order=8) -> float:
    L = truncation_radius(V)
    q = line_quadrature(L, panels=panels, order=order)
    X, Y, Z = np.meshgrid(q.nodes, q.nodes, q.nodes, indexing="ij")
    pts = np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=-1)
    w = q.weights
    W = (w[:, None, None] * w[None, :, None] * w[None, None, :]).ravel()
    return float(np.sum(W * np.abs(V.evaluate3d(pts))))


def lp32_norm(V: Potential, quad: Quadrature | None = None) -> float:
    """(integral of |V|^{3/2})^{2/3}."""
    if V.kind == "delta":
        raise ValueError("L^{3/2} norm of a point potential is not finite")
    quad = quad or default_quadrature(V)
    w = _measure_weights(V, quad)
    return float(np.sum(w * np.abs(V.profile(quad.nodes)) ** 1.5) ** (2.0 / 3.0))


def _graded_edges_around(r0, lo, hi, levels=14):
    """Panel edges on [lo, hi] refined dyadically toward r0."""
    span = hi - lo
    offs = span * 0.5 ** np.arange(1, levels + 1)
    pts = np.concatenate([[lo, hi], r0 - offs, r0 + offs, [r0]])
    pts = pts[(pts >= lo) & (pts <= hi)]
    return np.unique(pts)


def _log_kernel_inner(V, r, L, order=10):
    """int_0^L |V(r')| r' ln((r+r')/|r-r'|) dr' with graded panels at r'=r."""
    edges = _graded_edges_around(r, 0.0, L, levels=32)
    for b in V.breakpoints:
        if 0.0 < b < L:
            edges = np.union1d(edges, [b])
    xg, wg = np.polynomial.legendre.leggauss(order)
    mids = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mids[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    vals = np.abs(V.profile(nodes)) * nodes * np.log((r + nodes) / np.abs(r - nodes))
    return float(np.sum(weights * vals))


def rollnik_norm(V: Potential, samples: int = 200_000, seed: int = 0):
    """3D Rollnik norm (sqrt of the double integral with the |x-y|^{-2}
    kernel).  Radial potentials use the exact angular average; general
    ones an importance-sampled Monte Carlo.  Returns (value, stderr)."""
    if V.dimension != 3:
        raise WrongDimension("Rollnik norm is a 3D quantity")
    if V.is_radial:
        L = truncation_radius(V)
        # outer grid graded toward the support/feature edges, where the
        # inner log integral has an integrable kink
        edges = np.linspace(0.0, L, 25)
        for b in (*V.breakpoints, L):
            if 0.0 < b <= L:
                edges = np.union1d(edges, _graded_edges_around(b, 0.0, L, levels=12))
        xg, wg = np.polynomial.legendre.leggauss(10)
        mids = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        nodes = (mids[:, None] + half[:, None] * xg[None, :]).ravel()
        weights = (half[:, None] * wg[None, :]).ravel()
        inner = np.array([_log_kernel_inner(V, float(r), L) for r in nodes])
        vals = np.abs(V.profile(nodes)) * nodes * inner
        sq = 8.0 * math.pi ** 2 * float(np.sum(weights * vals))
        return math.sqrt(max(sq, 0.0)), 0.0
    return _rollnik_mc(V, samples, seed)


def _rollnik_mc(V: Potential, samples, seed):
    """Pair sampling ~ |V| x |V| with the displacement drawn from the
    1/|u|^2-matched radial law (uniform radius), which keeps the
    singular weight bounded and the variance finite."""
    rng = np.random.default_rng(seed)
    L = truncation_radius(V)
    l1 = _l1_nonradial_3d(V)
    # rejection sampling of X ~ |V| / l1 from the bounding box
    probe = rng.uniform(-L, L, size=(4096, 3))
    vmax = 1.3 * float(np.max(np.abs(V.evaluate3d(probe)))) + 1e-300
    xs = np.empty((0, 3))
    while xs.shape[0] < samples:
        cand = rng.uniform(-L, L, size=(2 * samples, 3))
        acc = rng.uniform(0.0, vmax, size=cand.shape[0]) < np.abs(V.evaluate3d(cand))
        xs = np.concatenate([xs, cand[acc]])
    xs = xs[:samples]
    r_u = 2.0 * L
    radii = rng.uniform(0.0, r_u, size=samples)
    dirs = rng.normal(size=(samples, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    ys = xs + radii[:, None] * dirs
    s = 4.0 * math.pi * r_u * np.abs(V.evaluate3d(ys))
    sq = l1 * float(np.mean(s))
    sq_err = l1 * float(np.std(s, ddof=1) / math.sqrt(samples))
    norm = math.sqrt(max(sq, 0.0))
    stderr = sq_err / (2.0 * norm) if norm > 0 else sq_err
    return norm, stderr


def hardy_norm(V: Potential, sample_grid: int = 2048) -> float:
    """sup over space of |x|^2 |V(x)| (3D), with one refinement pass."""
    if V.dimension != 3:
        raise WrongDimension("Hardy norm is a 3D quantity")

    def radial_sup(prof, lo, hi, n):
        rs = np.unique(np.concatenate([
            np.geomspace(max(lo, hi * 1e-9), hi, n // 2),
            np.linspace(max(lo, hi * 1e-9), hi, n // 2),
        ]))
        vals = rs ** 2 * np.abs(prof(rs))
        i = int(np.argmax(vals))
        # refine around the maximizer
        lo2 = rs[max(i - 1, 0)]
        hi2 = rs[min(i + 1, rs.size - 1)]
        rs2 = np.linspace(lo2, hi2, n)
        vals2 = rs2 ** 2 * np.abs(prof(rs2))
        return float(max(vals[i], np.max(vals2)))

    L = V.support_radius if math.isfinite(V.support_radius) else \
        truncation_radius(V, tail_tol=math.inf)
    if V.is_radial:
        return radial_sup(V.profile, 0.0, L * (1.0 - 1e-12), sample_grid)
    best = 0.0
    for d in _fibonacci_sphere(128):
        prof = lambda r, d=d: V.evaluate3d(r[:, None] * d[None, :])
        best = max(best, radial_sup(prof, 0.0, L * (1.0 - 1e-12), sample_grid))
    return best


def _fibonacci_sphere(n):
    i = np.arange(n) + 0.5
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    z = 1.0 - 2.0 * i / n
    rho = np.sqrt(1.0 - z ** 2)
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=-1)


def rayleigh_sup_bracket(V: Potential, trial_family_size: int = 64):
    """Bracket for the gradient-quotient supremum, 3D.

    Lower bound: maximize the quotient over the exponential trial family
    e^{-t|x|} on a log grid of rates; upper bound: four times the Hardy
    norm (the classical inequality with constant 1/4, inverted).
    """
    if V.dimension != 3:
        raise WrongDimension("the gradient-quotient bracket is a 3D quantity")
    if not V.is_radial:
        raise NotRadial("trial-family lower bound implemented for radial V")
    hardy = hardy_norm(V)
    if hardy == 0.0:
        return 0.0, 0.0
    Lv = V.support_radius if math.isfinite(V.support_radius) else \
        truncation_radius(V, tail_tol=math.inf)
    best = 0.0
    for t in np.geomspace(1e-2 / Lv, 1e3 / Lv, trial_family_size):
        L = Lv if math.isfinite(V.support_radius) else min(Lv, 20.0 / t)
        q = radial_quadrature(L, panels=24, order=10, breakpoints=V.breakpoints)
        num = float(np.sum(q.weights * np.abs(V.profile(q.nodes))
                           * np.exp(-2.0 * t * q.nodes) * q.nodes ** 2))
        best = max(best, 4.0 * t * num)
    return best, 4.0 * hardy


def compute_norms(V: Potential, rollnik_samples=200_000, seed=0) -> NormReport:
    """All norms that make sense for V; entries stay None where they do not."""
    try:
        l1 = l1_norm(V)
    except UnboundedSupportWithoutTail:
        l1 = None
    rollnik = rollnik_err = hardy = l32 = None
    if V.dimension == 3:
        try:
            rollnik, rollnik_err = rollnik_norm(V, rollnik_samples, seed)
        except UnboundedSupportWithoutTail:
            pass
        hardy = hardy_norm(V)
        if V.kind != "delta":
            try:
                l32 = lp32_norm(V)
            except UnboundedSupportWithoutTail:
                pass
    return NormReport(l1=l1, rollnik=rollnik, rollnik_stderr=rollnik_err,
                      hardy=hardy, l32=l32)
