"""Relativistic-kinematics formulas derived from the split-octonion interval.

All functions take explicit :class:`PhysicalConstants`; the defaults are
natural units ``c = hbar = G = 1``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import TAU_ZERO, levi_civita
from .automorphisms import InfinitesimalParams, infinitesimal
from .errors import NotNullTrajectory, SingularFrame, VirtualRegime, ZeroMomentum

ABERRATION_MAX_BETA = 0.1


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = 1.0
    hbar: float = 1.0
    G: float = 1.0

    def __post_init__(self):
        for name in ("c", "hbar", "G"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")


NATURAL = PhysicalConstants()
SI = PhysicalConstants(c=299_792_458.0, hbar=1.054_571_817e-34, G=6.674_30e-11)


def _vec(v, name="vector") -> np.ndarray:
    a = np.asarray(v, float)
    if a.shape != (3,):
        raise ValueError(f"{name} must have 3 components")
    return a


def wavelengths(p: Sequence[float], consts: PhysicalConstants = NATURAL) -> np.ndarray:
    """``lam^n = hbar p^n / p^2``."""
    p = _vec(p, "p")
    p2 = float(p @ p)
    if p2 <= 0:
        raise ZeroMomentum("wavelengths are undefined for zero momentum")
    return consts.hbar * p / p2


@dataclass(frozen=True)
class KinematicState:
    x: tuple
    p: tuple
    v: tuple = (0.0, 0.0, 0.0)
    consts: PhysicalConstants = field(default=NATURAL)

    @property
    def lam(self) -> np.ndarray:
        return wavelengths(self.p, self.consts)


def spin_vector(x, p, consts: PhysicalConstants = NATURAL) -> np.ndarray:
    """``sigma_n = eps_nmk x^m p^k / hbar``."""
    return np.cross(_vec(x, "x"), _vec(p, "p")) / consts.hbar


def spin_vector_bruteforce(x, p, consts: PhysicalConstants = NATURAL) -> np.ndarray:
    x, p = _vec(x, "x"), _vec(p, "p")
    out = np.zeros(3)
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            for k in (1, 2, 3):
                out[n - 1] += levi_civita(n, m, k) * x[m - 1] * p[k - 1]
    return out / consts.hbar


# -- uncertainty ratios ----------------------------------------------------

@dataclass(frozen=True)
class UncertaintyReport:
    delta_x: tuple
    delta_lam: tuple
    ratio_2: float | None          # dx2/dlam2, expected -lam3/x3
    ratio_3: float | None          # dx3/dlam3, expected -lam2/x2
    ratio_2_residual: float | None  # relative to max(1, |expected|)
    ratio_3_residual: float | None
    products: tuple                # hbar |x_n| / |lam_n| = |x_n p_n|, compare with hbar
    bound_ok: tuple

    @property
    def vacuous(self) -> bool:
        return self.ratio_2 is None and self.ratio_3 is None


def uncertainty_ratios(x, lam, theta1: float, consts: PhysicalConstants = NATURAL,
                       ct: float = 0.0, tol: float = 1e-12) -> UncertaintyReport:
    """Ratios of coordinate shifts under the first-order boost by ``theta1`` (``phi1 = 0``)."""
    x, lam = _vec(x, "x"), _vec(lam, "lam")
    coords = np.concatenate([lam, [ct], x])
    out = infinitesimal(InfinitesimalParams(boost_theta=(theta1, 0.0, 0.0)), coords)
    dlam, dx = out[:3] - lam, out[4:] - x

    def ratio(num, den, expected):
        if den == 0.0 or num == 0.0:
            return None, None
        r = float(num / den)
        return r, float(abs(r - expected) / max(1.0, abs(expected)))

    r2, e2 = ratio(dx[1], dlam[1], -lam[2] / x[2] if x[2] else math.nan)
    r3, e3 = ratio(dx[2], dlam[2], -lam[1] / x[1] if x[1] else math.nan)
    products = []
    for xn, ln in zip(x, lam):
        products.append(consts.hbar * abs(xn) / abs(ln) if ln else math.inf)
    bound = tuple(pr >= consts.hbar * (1 - tol) for pr in products)
    return UncertaintyReport(tuple(dx.tolist()), tuple(dlam.tolist()), r2, r3, e2, e3,
                             tuple(float(v) for v in products), bound)


# -- velocity addition and aberration --------------------------------------

def velocity_add(v, theta1: float, lamdot2: float = 0.0, lamdot3: float = 0.0,
                 consts: PhysicalConstants = NATURAL, transverse_dilation: bool = True,
                 tol_zero: float = TAU_ZERO) -> np.ndarray:
    """Velocity seen from a frame moving along x1 with ``tanh(theta1) = V/c``.

    ``v1' = (v1 - c t)/(1 - t v1/c)``, ``v2' = (v2/g - t lamdot3)/(1 - t v1/c)``,
    ``v3' = (v3/g + t lamdot2)/(1 - t v1/c)`` with ``t = tanh(theta1)`` and
    ``g = cosh(theta1)``. Passing ``transverse_dilation=False`` drops ``g``.
    """
    v = _vec(v, "v")
    c = consts.c
    t = math.tanh(theta1)
    den = 1.0 - t * v[0] / c
    if abs(den) <= tol_zero:
        raise SingularFrame(f"velocity-addition denominator {den:g} vanishes")
    g = math.cosh(theta1) if transverse_dilation else 1.0
    return np.array([
        (v[0] - c * t) / den,
        (v[1] / g - t * lamdot3) / den,
        (v[2] / g + t * lamdot2) / den,
    ])


def velocity_add_textbook(v, V: float, consts: PhysicalConstants = NATURAL) -> np.ndarray:
    """Special-relativistic composition for a boost ``V`` along x1."""
    v = _vec(v, "v")
    c = consts.c
    den = 1.0 - v[0] * V / c**2
    inv_gamma = math.sqrt(1.0 - (V / c) ** 2)
    return np.array([(v[0] - V) / den, v[1] * inv_gamma / den, v[2] * inv_gamma / den])


class AberrationRegimeWarning(UserWarning):
    pass


def aberration_valid(V: float, consts: PhysicalConstants = NATURAL) -> bool:
    return abs(V) / consts.c < ABERRATION_MAX_BETA


def aberration(gamma: float, V: float, lamdot_orth: float, plane: int | str,
               consts: PhysicalConstants = NATURAL) -> float:
    """First-order aberration angle in the (x1, x2) or (x1, x3) plane.

    Plane 12: ``(V/c) sin g - (V/c^2) lamdot3``; plane 13: ``(V/c) sin g + (V/c^2) lamdot2``.
    Warns with :class:`AberrationRegimeWarning` when ``|V|/c >= 0.1``.
    """
    plane = str(plane)
    if plane not in ("12", "13"):
        raise ValueError("plane must be 12 or 13")
    c = consts.c
    if not aberration_valid(V, consts):
        warnings.warn(f"|V|/c = {abs(V) / c:g} is outside the first-order regime",
                      AberrationRegimeWarning, stacklevel=2)
    sign = -1.0 if plane == "12" else 1.0
    return (V / c) * math.sin(gamma) + sign * (V / c**2) * lamdot_orth


# -- Lagrangian, bounds, eikonal ----------------------------------------------

def lagrangian_radicand(v, p, pdot, consts: PhysicalConstants = NATURAL) -> float:
    v, p, pdot = _vec(v, "v"), _vec(p, "p"), _vec(pdot, "pdot")
    p2 = float(p @ p)
    if p2 <= 0:
        raise ZeroMomentum("the Lagrangian needs nonzero momentum")
    c = consts.c
    return 1.0 - float(v @ v) / c**2 + consts.hbar**2 * float(pdot @ pdot) / (c**2 * p2**2)


def lagrangian(m: float, v, p, pdot, consts: PhysicalConstants = NATURAL) -> float:
    """``L = -m c^2 sqrt(1 - v^2/c^2 + hbar^2 pdot^2 / (c^2 p^4))``."""
    r = lagrangian_radicand(v, p, pdot, consts)
    if r < 0:
        raise VirtualRegime(r)
    return -m * consts.c**2 * math.sqrt(r)


def max_force(m: float, consts: PhysicalConstants = NATURAL) -> float:
    """``m^2 c^3 / hbar``."""
    if m <= 0:
        raise ValueError("mass must be positive")
    return m * m * consts.c**3 / consts.hbar


def max_mass(consts: PhysicalConstants = NATURAL) -> float:
    """``sqrt(hbar c / G)``."""
    return math.sqrt(consts.hbar * consts.c / consts.G)


def eikonal_residual(grad) -> float:
    g = _vec(grad, "grad")
    return abs(float(g @ g) - 1.0)


# -- trajectories --------------------------------------------------------------

@dataclass(frozen=True)
class ActionReport:
    max_rate_drift: float       # max |d/dt (dw/dt)|
    max_null_residual: float    # max |(dw/dt)^2 - (c^2 - v^2 + lamdot^2)| / c^2
    rate: np.ndarray = field(repr=False)


def action_conservation(t, w, x, lam, consts: PhysicalConstants = NATURAL,
                        null_tol: float = 1e-6) -> ActionReport:
    """Check the null condition along sampled ``(t, w, x, lam)`` and the constancy of ``dw/dt``.

    ``x`` and ``lam`` have shape ``(n, 3)``. Derivatives are central
    differences (second order). Raises :class:`NotNullTrajectory` when
    ``dw^2 - c^2 dt^2 (1 - v^2/c^2 + lamdot^2/c^2)`` is nonzero beyond
    ``null_tol * c^2`` at any sample.
    """
    t = np.asarray(t, float)
    w = np.asarray(w, float)
    x = np.asarray(x, float).reshape(len(t), 3) if len(t) else np.zeros((0, 3))
    lam = np.asarray(lam, float).reshape(len(t), 3) if len(t) else np.zeros((0, 3))
    if len(t) == 0:
        raise ValueError("empty trajectory: no samples")
    if len(t) < 3:
        raise ValueError("at least 3 samples are needed for central differences")
    c = consts.c
    wdot = np.gradient(w, t, edge_order=2)
    v = np.gradient(x, t, axis=0, edge_order=2)
    ldot = np.gradient(lam, t, axis=0, edge_order=2)
    expected = c**2 - np.sum(v * v, axis=1) + np.sum(ldot * ldot, axis=1)
    null_res = np.abs(wdot**2 - expected) / c**2
    worst = float(null_res.max())
    if worst > null_tol:
        i = int(null_res.argmax())
        raise NotNullTrajectory(f"null condition violated at sample {i} (residual {worst:.3g})")
    drift = np.gradient(wdot, t, edge_order=2)
    return ActionReport(float(np.abs(drift).max()), worst, wdot)
