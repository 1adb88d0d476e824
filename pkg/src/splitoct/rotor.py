"""One-sided rotors and four-plane decompositions.

Left multiplication by ``exp(u * a)`` for an imaginary unit ``u`` rotates four
mutually orthogonal coefficient planes by the same angle ``a``: the plane
``(1, u)`` and three planes ``(e, u e)`` spanned by units that form associative
triplets with ``u``. The ``j_n`` axes give compact rotations, ``J_n`` and ``I``
give hyperbolic ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    COEFF_NAMES,
    TABLE,
    SplitOctonion,
    basis_index,
    mul,
    I_INDEX,
)
from .errors import DomainViolation

AXES = ("J1", "J2", "J3", "j1", "j2", "j3", "I")

# Plane representatives for the axes written out explicitly; the other axes
# are obtained with the cyclic relabelling n -> n+1, which is an automorphism.
#   j1: (w, x1) (lam3, lam2) (x2, x3) (ct, lam1)
#   J1: (w, lam1) (x3, lam2) (x2, lam3) (x1, ct)
#   I : (w, ct) (x1, lam1) (x2, lam2) (x3, lam3)
_CANONICAL_REPS = {
    "j1": (0, 3, 5, 7),
    "J1": (0, 6, 5, 4),
    "I": (0, 4, 5, 6),
}


def _shift(index: int, steps: int) -> int:
    """Cyclic relabelling of the basis index ``n -> n + steps`` on J_n and j_n."""
    if index in (0, I_INDEX):
        return index
    base = 1 if index <= 3 else 4
    return base + (index - base + steps) % 3


def axis_index(axis) -> int:
    i = basis_index(axis)
    if i == 0:
        raise ValueError("the real unit is not a rotation axis")
    return i


def is_compact(axis) -> bool:
    """True for the ``j_n`` axes (``j_n^2 = -1``)."""
    return 4 <= axis_index(axis) <= 6


def plane_representatives(axis) -> tuple[int, int, int, int]:
    u = axis_index(axis)
    if u == I_INDEX:
        return _CANONICAL_REPS["I"]
    name = "j1" if u >= 4 else "J1"
    steps = (u - 1) % 3
    return tuple(_shift(e, steps) for e in _CANONICAL_REPS[name])


def rotor_exp(axis, angle: float) -> SplitOctonion:
    """``exp(u * angle)``: cos/sin for ``j_n``, cosh/sinh for ``J_n`` and ``I``."""
    u = axis_index(axis)
    c = np.zeros(8)
    if is_compact(u):
        c[0], c[u] = math.cos(angle), math.sin(angle)
    else:
        c[0], c[u] = math.cosh(angle), math.sinh(angle)
    return SplitOctonion(c)


@dataclass(frozen=True)
class Rotor:
    """Rotation by ``angle`` about ``axis``.

    Realized with the half-angle unit octonion ``exp(u * angle / 2)``, so
    left multiplication advances every plane phase by ``angle / 2``.
    """

    axis: str
    angle: float

    def __post_init__(self):
        axis_index(self.axis)

    def octonion(self) -> SplitOctonion:
        return rotor_exp(self.axis, self.angle / 2.0)


def left_rotate(r: Rotor, s: SplitOctonion) -> SplitOctonion:
    return mul(r.octonion(), s)


def right_rotate(s: SplitOctonion, r: Rotor) -> SplitOctonion:
    return mul(s, r.octonion())


@dataclass(frozen=True)
class PlaneTerm:
    plane: str
    magnitude: float
    phase: float
    rep: int
    partner: int
    sign: int = 1


@dataclass(frozen=True)
class PlaneDecomposition:
    """``s = sum sign * magnitude * exp(u * phase) * e_rep`` over four planes."""

    axis: str
    terms: tuple[PlaneTerm, ...]

    def reconstruct(self) -> SplitOctonion:
        total = SplitOctonion.zero()
        for t in self.terms:
            unit = SplitOctonion.unit(t.rep)
            total = total + (t.sign * t.magnitude) * mul(rotor_exp(self.axis, t.phase), unit)
        return total

    def phases(self) -> np.ndarray:
        return np.array([t.phase for t in self.terms])

    def magnitudes(self) -> np.ndarray:
        return np.array([t.magnitude for t in self.terms])

    def to_json(self) -> list[dict]:
        return [
            {"plane": t.plane, "magnitude": t.magnitude, "phase": t.phase, "sign": t.sign}
            for t in self.terms
        ]


def decompose(s: SplitOctonion, axis) -> PlaneDecomposition:
    """Split ``s`` into the four rotation planes of ``axis``.

    Compact planes accept any input; phases are in (-pi, pi] and a
    zero-magnitude plane reports phase 0. Hyperbolic planes require a
    strictly positive radicand ``a^2 - b^2`` (``a`` the representative
    coefficient); a negative ``a`` is carried by ``sign = -1``.
    """
    u = axis_index(axis)
    name = AXES[u - 1]
    compact = is_compact(u)
    c = s.coeffs
    terms = []
    for rep in plane_representatives(u):
        sigma, partner = TABLE.product(u, rep)
        a = float(c[rep])
        b = sigma * float(c[partner])
        label = f"({COEFF_NAMES[rep]},{COEFF_NAMES[partner]})"
        if compact:
            mag = math.hypot(a, b)
            phase = math.atan2(b, a) if mag > 0 else 0.0
            if phase == -math.pi:
                phase = math.pi
            terms.append(PlaneTerm(label, mag, phase, rep, partner))
            continue
        radicand = a * a - b * b
        if radicand <= 0:
            raise DomainViolation(
                f"plane {label}: radicand {COEFF_NAMES[rep]}^2 - {COEFF_NAMES[partner]}^2"
                f" = {radicand:g} is not positive"
            )
        sign = 1 if a > 0 else -1
        terms.append(PlaneTerm(label, math.sqrt(radicand), math.atanh(b / a), rep, partner, sign))
    return PlaneDecomposition(name, tuple(terms))


def from_planes(axis, planes) -> SplitOctonion:
    """Build an octonion from ``(sign, magnitude, phase)`` per plane of ``axis``."""
    u = axis_index(axis)
    terms = []
    for rep, (sign, mag, phase) in zip(plane_representatives(u), planes):
        _, partner = TABLE.product(u, rep)
        terms.append(PlaneTerm("", mag, phase, rep, partner, sign))
    return PlaneDecomposition(AXES[u - 1], tuple(terms)).reconstruct()
