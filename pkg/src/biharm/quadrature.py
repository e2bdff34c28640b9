"""Composite Gauss-Legendre quadratures on a segment or half-line.

Panel edges always include the breakpoints of the integrand (potential
support edges, delta_eps feature edges), and any interval narrower than
the target panel width is still cut into at least four panels so that
thin features stay resolved.
"""
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Quadrature", "line_quadrature", "radial_quadrature"]


@dataclass(frozen=True)
class Quadrature:
    nodes: np.ndarray
    weights: np.ndarray
    truncation: float
    panels: int
    order: int
    domain: str = "line"  # "line" = [-L, L], "radial" = (0, L]

    def __post_init__(self):
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")

    @property
    def size(self) -> int:
        return self.nodes.size

    def measure(self) -> float:
        return float(np.sum(self.weights))


def _panels_from_edges(edges, target, min_feature_panels=4):
    """Subdivide consecutive edge intervals; narrow ones get >= 4 cuts."""
    out = []
    for e0, e1 in zip(edges[:-1], edges[1:]):
        width = e1 - e0
        if width <= 0:
            continue
        n = max(1, int(np.ceil(width / target)))
        if width < target:
            n = max(n, min_feature_panels)
        out.extend(np.linspace(e0, e1, n + 1)[:-1])
    out.append(edges[-1])
    return np.asarray(out)


def _gauss_on_panels(edges, order):
    xg, wg = np.polynomial.legendre.leggauss(order)
    mids = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mids[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def _build(lo, hi, panels, order, breakpoints):
    pts = [lo, hi] + [b for b in breakpoints if lo < b < hi]
    edges = np.unique(np.asarray(sorted(pts), dtype=float))
    target = (hi - lo) / max(1, panels)
    edges = _panels_from_edges(edges, target)
    return _gauss_on_panels(edges, order), edges.size - 1


def line_quadrature(L, panels=16, order=10, breakpoints=()):
    """Composite Gauss on [-L, L]."""
    (nodes, weights), npan = _build(-L, L, panels, order, breakpoints)
    return Quadrature(nodes=nodes, weights=weights, truncation=float(L),
                      panels=npan, order=order, domain="line")


def radial_quadrature(L, panels=16, order=10, breakpoints=()):
    """Composite Gauss on (0, L] (nodes are interior, never exactly 0)."""
    (nodes, weights), npan = _build(0.0, L, panels, order, breakpoints)
    return Quadrature(nodes=nodes, weights=weights, truncation=float(L),
                      panels=npan, order=order, domain="radial")
