"""Explicit automorphisms of the split octonions (the noncompact G2).

Three two-angle families are built as basis-image matrices ``M`` acting on
coefficient vectors (``M[:, i]`` is the image of basis unit ``i``):

* ``rotation(n, alpha, beta)`` fixes ``j_n`` (compact angles),
* ``boost(n, theta, phi)`` fixes ``J_n`` (hyperbolic, half-angle form),
* ``diagonal(k1, k2)`` fixes ``I`` (hyperbolic, rank-2 Cartan family).

The induced action on the coordinates ``(lam1..3, ct, x1..3)`` is the
corresponding 7x7 block of ``M``. The infinitesimal coordinate formulas in
:func:`infinitesimal` agree with these maps to first order under the angle
dictionary of :func:`family_to_infinitesimal` (rotation angles enter with a
minus sign, boost and diagonal angles unchanged).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import ETA, I_INDEX, SplitOctonion, J, j, levi_civita, mul_array

# Octonion coefficient index of each coordinate in (lam1..3, ct, x1..3) order.
COORD_INDEX = np.array([1, 2, 3, 7, 4, 5, 6])
COORD_NAMES = ("lam1", "lam2", "lam3", "ct", "x1", "x2", "x3")
ETA7 = ETA[COORD_INDEX]

FAMILIES = ("rotation", "boost", "diagonal")


def _shift_perm(steps: int) -> np.ndarray:
    """Permutation matrix of the relabelling J_n -> J_{n+steps}, j_n -> j_{n+steps}."""
    p = np.zeros((8, 8))
    for i in range(8):
        if i in (0, I_INDEX):
            t = i
        else:
            base = 1 if i <= 3 else 4
            t = base + (i - base + steps) % 3
        p[t, i] = 1.0
    return p


def _from_images(images: dict) -> np.ndarray:
    m = np.eye(8)
    for unit, combo in images.items():
        m[:, unit] = 0.0
        for target, coeff in combo:
            m[target, unit] += coeff
    return m


def _relabel(m1: np.ndarray, n: int) -> np.ndarray:
    if n not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {n!r}")
    p = _shift_perm(n - 1)
    return p @ m1 @ p.T


@dataclass(frozen=True)
class AutomorphismParams:
    family: str
    axis: int | None
    angles: tuple[float, float]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "diagonal":
            if self.axis is not None:
                raise ValueError("the diagonal family has no axis")
        elif self.axis not in (1, 2, 3):
            raise ValueError(f"axis must be 1, 2 or 3, got {self.axis!r}")


@dataclass(frozen=True, eq=False)
class AutomorphismMap:
    matrix: np.ndarray
    params: AutomorphismParams | None = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, s: SplitOctonion) -> SplitOctonion:
        return apply(self, s)

    def compose(self, other: "AutomorphismMap") -> "AutomorphismMap":
        """``self after other``."""
        return AutomorphismMap(self.matrix @ other.matrix)

    def inverse(self) -> "AutomorphismMap":
        # eta-orthogonal: M^-1 = eta M^T eta
        return AutomorphismMap(np.diag(ETA) @ self.matrix.T @ np.diag(ETA))

    def coordinate_matrix(self) -> np.ndarray:
        """Action on ``(lam1..3, ct, x1..3)``."""
        return self.matrix[np.ix_(COORD_INDEX, COORD_INDEX)]

    def apply_coords(self, coords) -> np.ndarray:
        return self.coordinate_matrix() @ np.asarray(coords, float)

    def eta_residual(self) -> float:
        m = self.matrix
        return float(np.abs(m.T @ np.diag(ETA) @ m - np.diag(ETA)).max())

    def homomorphism_residual(self, a, b) -> float:
        m = self.matrix
        a = np.asarray(a, float)
        b = np.asarray(b, float)
        lhs = mul_array(a, b) @ m.T
        rhs = mul_array(a @ m.T, b @ m.T)
        return float(np.abs(lhs - rhs).max())


def build_rotation(n: int, alpha: float, beta: float) -> AutomorphismMap:
    """Compact automorphism fixing ``j_n``: ``(j_{n+1}, j_{n+2})`` by alpha,
    ``(J_n, I)`` by beta and ``(J_{n+1}, J_{n+2})`` by ``alpha - beta``."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)
    cd, sd = math.cos(alpha - beta), math.sin(alpha - beta)
    m1 = _from_images({
        j(2): [(j(2), ca), (j(3), sa)],
        j(3): [(j(3), ca), (j(2), -sa)],
        J(1): [(J(1), cb), (I_INDEX, sb)],
        I_INDEX: [(I_INDEX, cb), (J(1), -sb)],
        J(2): [(J(2), cd), (J(3), sd)],
        J(3): [(J(3), cd), (J(2), -sd)],
    })
    return AutomorphismMap(_relabel(m1, n), AutomorphismParams("rotation", n, (alpha, beta)))


def build_boost(n: int, theta: float, phi: float) -> AutomorphismMap:
    """Hyperbolic automorphism fixing ``J_n``."""
    plus = (phi + theta) / 2.0
    minus = (phi - theta) / 2.0
    chp, shp = math.cosh(plus), math.sinh(plus)
    chm, shm = math.cosh(minus), math.sinh(minus)
    cht, sht = math.cosh(theta), math.sinh(theta)
    m1 = _from_images({
        J(2): [(J(2), chp), (j(3), shp)],
        j(3): [(j(3), chp), (J(2), shp)],
        I_INDEX: [(I_INDEX, cht), (j(1), -sht)],
        j(1): [(j(1), cht), (I_INDEX, -sht)],
        j(2): [(j(2), chm), (J(3), shm)],
        J(3): [(J(3), chm), (j(2), shm)],
    })
    return AutomorphismMap(_relabel(m1, n), AutomorphismParams("boost", n, (theta, phi)))


def build_diagonal(k1: float, k2: float) -> AutomorphismMap:
    """Automorphism fixing ``I``: pairs ``(J_n, j_n)`` boosted by
    ``k1``, ``k2`` and ``-(k1 + k2)``."""
    images = {}
    for n, k in zip((1, 2, 3), (k1, k2, -(k1 + k2))):
        ch, sh = math.cosh(k), math.sinh(k)
        images[j(n)] = [(j(n), ch), (J(n), sh)]
        images[J(n)] = [(J(n), ch), (j(n), sh)]
    return AutomorphismMap(_from_images(images), AutomorphismParams("diagonal", None, (k1, k2)))


def build(params: AutomorphismParams) -> AutomorphismMap:
    a, b = params.angles
    if params.family == "rotation":
        return build_rotation(params.axis, a, b)
    if params.family == "boost":
        return build_boost(params.axis, a, b)
    return build_diagonal(a, b)


def identity_map() -> AutomorphismMap:
    return AutomorphismMap(np.eye(8))


def apply(m: AutomorphismMap, s: SplitOctonion) -> SplitOctonion:
    return SplitOctonion(m.matrix @ s.coeffs)


def k_from_varphi(phi1: float, phi2: float, phi3: float) -> tuple[float, float]:
    """Trace-free part of ``(phi1, phi2, phi3)``; the third value is ``-(k1 + k2)``."""
    mean = (phi1 + phi2 + phi3) / 3.0
    return phi1 - mean, phi2 - mean


# -- infinitesimal form ----------------------------------------------------

def _vec3(v) -> tuple[float, float, float]:
    t = tuple(float(a) for a in v)
    if len(t) != 3:
        raise ValueError("expected 3 components")
    return t


@dataclass(frozen=True)
class InfinitesimalParams:
    alpha: tuple = (0.0, 0.0, 0.0)
    beta: tuple = (0.0, 0.0, 0.0)
    boost_theta: tuple = (0.0, 0.0, 0.0)
    boost_phi: tuple = (0.0, 0.0, 0.0)
    diag_phi: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        for name in ("alpha", "beta", "boost_theta", "boost_phi", "diag_phi"):
            object.__setattr__(self, name, _vec3(getattr(self, name)))

    def scaled(self, factor: float) -> "InfinitesimalParams":
        return InfinitesimalParams(*(tuple(factor * a for a in getattr(self, n))
                                     for n in ("alpha", "beta", "boost_theta", "boost_phi", "diag_phi")))

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.alpha, self.beta, self.boost_theta, self.boost_phi, self.diag_phi])

    @classmethod
    def from_vector(cls, v) -> "InfinitesimalParams":
        v = np.asarray(v, float)
        return cls(v[0:3], v[3:6], v[6:9], v[9:12], v[12:15])

    def trace_free_diag(self) -> tuple[float, float, float]:
        k1, k2 = k_from_varphi(*self.diag_phi)
        return k1, k2, -(k1 + k2)


def infinitesimal_generator(params: InfinitesimalParams) -> np.ndarray:
    """7x7 matrix ``A`` with ``coords' = coords + A @ coords`` in ``(lam, ct, x)`` order."""
    al, be, th, ph = params.alpha, params.beta, params.boost_theta, params.boost_phi
    kap = params.trace_free_diag()
    a = np.zeros((7, 7))
    LAM = lambda n: n - 1  # noqa: E731
    X = lambda n: 3 + n  # noqa: E731
    CT = 3
    for n in (1, 2, 3):
        a[X(n), CT] -= th[n - 1]
        a[X(n), LAM(n)] += kap[n - 1]
        a[LAM(n), CT] += be[n - 1]
        a[LAM(n), X(n)] += kap[n - 1]
        a[CT, LAM(n)] -= be[n - 1]
        a[CT, X(n)] -= th[n - 1]
        for m in (1, 2, 3):
            for k in (1, 2, 3):
                e = levi_civita(n, m, k)
                if not e:
                    continue
                a[X(n), X(k)] -= e * al[m - 1]
                a[X(n), LAM(k)] += 0.5 * (abs(e) * ph[m - 1] + e * th[m - 1])
                a[LAM(n), LAM(k)] -= e * (al[m - 1] - be[m - 1])
                a[LAM(n), X(k)] += 0.5 * (abs(e) * ph[m - 1] - e * th[m - 1])
    return a


def infinitesimal(params: InfinitesimalParams, coords: Sequence[float]) -> np.ndarray:
    """First-order coordinate transformation of ``(lam1..3, ct, x1..3)``."""
    c = np.asarray(coords, float)
    if c.shape != (7,):
        raise ValueError("coords must have 7 components (lam1..3, ct, x1..3)")
    return c + infinitesimal_generator(params) @ c


def family_to_infinitesimal(params: AutomorphismParams) -> InfinitesimalParams:
    """Infinitesimal parameters whose first-order action matches ``build(params)``."""
    a, b = params.angles
    zero = [0.0, 0.0, 0.0]
    if params.family == "diagonal":
        return InfinitesimalParams(diag_phi=(a, b, -(a + b)))
    u, v = list(zero), list(zero)
    if params.family == "rotation":
        u[params.axis - 1], v[params.axis - 1] = -a, -b
        return InfinitesimalParams(alpha=u, beta=v)
    u[params.axis - 1], v[params.axis - 1] = a, b
    return InfinitesimalParams(boost_theta=u, boost_phi=v)


def finite_map(params: InfinitesimalParams) -> AutomorphismMap:
    """Composition of the finite family maps matching ``params`` to first order."""
    m = np.eye(8)
    for n in (1, 2, 3):
        m = build_rotation(n, -params.alpha[n - 1], -params.beta[n - 1]).matrix @ m
        m = build_boost(n, params.boost_theta[n - 1], params.boost_phi[n - 1]).matrix @ m
    k1, k2, _ = params.trace_free_diag()
    m = build_diagonal(k1, k2).matrix @ m
    return AutomorphismMap(m)


def linearization_residual(params: InfinitesimalParams) -> float:
    """Max-abs gap between ``I + A`` and the finite coordinate map."""
    finite = finite_map(params).coordinate_matrix()
    return float(np.abs(np.eye(7) + infinitesimal_generator(params) - finite).max())


# -- Poincare limit --------------------------------------------------------

@dataclass(frozen=True)
class PoincareLimit:
    rotation: np.ndarray = field(repr=False)  # x' = x + rotation @ x
    boost: tuple[float, float, float]
    a0: float
    a: tuple[float, float, float]


def poincare_limit(params: InfinitesimalParams, lam: Sequence[float]) -> PoincareLimit:
    """Induced (3+1) pieces when ``boost_phi`` and ``diag_phi`` vanish."""
    if any(params.boost_phi) or any(params.diag_phi):
        raise ValueError("the Poincare limit requires boost_phi = diag_phi = 0")
    lam = _vec3(lam)
    al, be, th = params.alpha, params.beta, params.boost_theta
    rot = np.zeros((3, 3))
    a = [0.0, 0.0, 0.0]
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            for k in (1, 2, 3):
                e = levi_civita(n, m, k)
                rot[n - 1, k - 1] -= e * al[m - 1]
                a[n - 1] += 0.5 * e * th[m - 1] * lam[k - 1]
    a0 = -sum(b * l for b, l in zip(be, lam))
    return PoincareLimit(rot, th, a0, tuple(a))


# -- Gell-Mann form of the diagonal family --------------------------------

LAMBDA3 = np.diag([1.0, -1.0, 0.0])
LAMBDA8 = np.diag([1.0, 1.0, -2.0]) / math.sqrt(3.0)


def gellmann_to_k(K1: float, K2: float) -> tuple[float, float]:
    """Diagonal-family angles with ``diag(k1, k2, -k1-k2) = K1 L3 + K2 L8``."""
    return K1 + K2 / math.sqrt(3.0), -K1 + K2 / math.sqrt(3.0)


def k_to_gellmann(k1: float, k2: float) -> tuple[float, float]:
    return (k1 - k2) / 2.0, math.sqrt(3.0) / 2.0 * (k1 + k2)


def gellmann_diagonal(K1: float, K2: float, lam: Sequence[float], x: Sequence[float]):
    """Apply ``exp((K1 L3 + K2 L8) I)`` to the pairs ``lam_n + I x_n``.

    With ``I^2 = 1`` each diagonal entry ``d`` acts as
    ``(cosh d + I sinh d)(lam + I x)``.
    """
    d = np.diag(K1 * LAMBDA3 + K2 * LAMBDA8)
    lam = np.asarray(lam, float)
    x = np.asarray(x, float)
    ch, sh = np.cosh(d), np.sinh(d)
    return lam * ch + x * sh, x * ch + lam * sh
