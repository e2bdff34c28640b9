"""Origin-centred disks guaranteed to contain the point spectrum.

Each disk radius is a closed-form function of one potential norm.  The
d=2 disk from the L1 norm is emitted with ``conjectural=True`` (the
constant 1/64 is the natural guess, not a proved one) and never used in
hard verification; the lower half of the gradient-quotient bracket is a
certified subset rather than an enclosure, so it is informational too.
Boundary membership counts as inside: the disks are closed.
"""
import math
from dataclasses import dataclass, field

__all__ = [
    "EnclosureDisk", "l1_disk", "rollnik_disk", "l32_disk", "hardy_disk",
    "rayleigh_disk", "VerifyReport", "verify", "disks_for",
    "L1_CONSTANTS",
]

L1_CONSTANTS = {1: 0.25, 3: 0.25 / (4.0 * math.pi) ** 4}
CONJECTURED_C2 = 1.0 / 64.0


@dataclass(frozen=True)
class EnclosureDisk:
    radius: float
    source: str
    conjectural: bool = False
    rigorous: bool = True

    def margin(self, lam: complex) -> float:
        return self.radius - abs(lam)

    def contains(self, lam: complex) -> bool:
        return abs(lam) <= self.radius


def l1_disk(d: int, l1: float, c2_choice: float | None = None) -> EnclosureDisk:
    """Radius C_d * l1^{4/(4-d)}; C_1 = 1/4 and C_3 = (1/4)(4 pi)^{-4}
    are proved sharp, the d=2 constant defaults to the conjectured 1/64."""
    if l1 < 0:
        raise ValueError("norm must be >= 0")
    p = 4.0 / (4.0 - d)
    if d in (1, 3):
        return EnclosureDisk(radius=L1_CONSTANTS[d] * l1 ** p, source=f"l1_d{d}")
    if d == 2:
        c = CONJECTURED_C2 if c2_choice is None else c2_choice
        return EnclosureDisk(radius=c * l1 ** p, source="l1_d2_conjectural",
                             conjectural=True, rigorous=False)
    raise ValueError("enclosures exist for d in {1,2,3}")


def rollnik_disk(norm_r: float) -> EnclosureDisk:
    """Radius = norm^2 / (2 (4 pi)^2), 3D."""
    if norm_r < 0:
        raise ValueError("norm must be >= 0")
    return EnclosureDisk(radius=0.5 * norm_r ** 2 / (4.0 * math.pi) ** 2,
                         source="rollnik")


def l32_disk(norm: float) -> EnclosureDisk:
    """Radius = norm^2 / (8 (4 pi)^{2/3}), 3D."""
    if norm < 0:
        raise ValueError("norm must be >= 0")
    return EnclosureDisk(radius=norm ** 2 / (8.0 * (4.0 * math.pi) ** (2.0 / 3.0)),
                         source="l32")


def hardy_disk(norm_h: float) -> EnclosureDisk:
    """Radius = 16 * norm^2, 3D."""
    if norm_h < 0:
        raise ValueError("norm must be >= 0")
    return EnclosureDisk(radius=16.0 * norm_h ** 2, source="hardy")


def rayleigh_disk(bracket) -> tuple:
    """Disks squared from the gradient-quotient bracket (lower, upper).

    The upper disk is a rigorous enclosure (it contains the true
    quotient disk); the lower one is a certified subset, reported for
    information only.
    """
    lo, hi = bracket
    if lo < 0 or hi < lo:
        raise ValueError("bracket must satisfy 0 <= lower <= upper")
    return (EnclosureDisk(radius=lo * lo, source="rayleigh_lower",
                          rigorous=False),
            EnclosureDisk(radius=hi * hi, source="rayleigh_upper"))


@dataclass(frozen=True)
class VerifyReport:
    entries: list        # (lam, source, inside, margin, rigorous)
    violations: list     # entries with rigorous disk and margin < -tol

    @property
    def ok(self) -> bool:
        return not self.violations


def verify(candidates, disks, tol: float = 0.0) -> VerifyReport:
    """Membership of every candidate in every disk.

    A negative margin against a rigorous (non-conjectural) disk is a
    hard failure; conjectural/subset disks only report.
    """
    entries = []
    violations = []
    for cand in candidates:
        lam = cand.lam if hasattr(cand, "lam") else complex(cand)
        for disk in disks:
            margin = disk.margin(lam)
            rec = (lam, disk.source, margin >= 0.0, margin,
                   disk.rigorous and not disk.conjectural)
            entries.append(rec)
            if rec[4] and margin < -tol:
                violations.append(rec)
    return VerifyReport(entries=entries, violations=violations)


def disks_for(dimension: int, norms, include_informational: bool = False,
              rayleigh_bracket=None) -> list:
    """All disks whose norms are finite for a given potential dimension.

    ``norms`` is a NormReport-like object with attributes l1, rollnik,
    hardy, l32 (None = not available)."""
    out = []
    if norms.l1 is not None:
        out.append(l1_disk(dimension, norms.l1))
    if dimension == 3:
        if getattr(norms, "rollnik", None) is not None:
            out.append(rollnik_disk(norms.rollnik))
        if getattr(norms, "l32", None) is not None:
            out.append(l32_disk(norms.l32))
        if getattr(norms, "hardy", None) is not None:
            out.append(hardy_disk(norms.hardy))
        if rayleigh_bracket is not None:
            lo, hi = rayleigh_disk(rayleigh_bracket)
            out.append(hi)
            if include_informational:
                out.append(lo)
    return out
