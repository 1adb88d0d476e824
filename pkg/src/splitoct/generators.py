"""Cartan's fifteen linear operators of the noncompact G2 as 7x7 matrices.

A first-order operator ``sum_i f_i(q) d/dq_i`` with ``f`` linear in the
coordinates is stored as the matrix ``A`` with ``f = A @ q``.

Two frames:

* ``cartan``: ``(y1, y2, y3, t, z1, z2, z3)``, invariant ``t^2 + z.y``;
* ``diagonal``: ``(lam1, lam2, lam3, ct, x1, x2, x3)`` with
  ``y = lam + x``, ``z = lam - x``, invariant ``lam^2 + ct^2 - x^2``.

The diagonal frame is built directly from its own operator formulas; the
change-of-basis agreement ``T^-1 X T`` is a test, not the construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from .algebra import levi_civita
from .automorphisms import (
    AutomorphismParams,
    build,
    family_to_infinitesimal,
    infinitesimal_generator,
)
from .errors import NoMatch

CARTAN_COORDS = ("y1", "y2", "y3", "t", "z1", "z2", "z3")
DIAGONAL_COORDS = ("lam1", "lam2", "lam3", "ct", "x1", "x2", "x3")
FRAMES = ("cartan", "diagonal")

LABELS = ("11", "22", "33", "10", "20", "30", "01", "02", "03",
          "12", "13", "21", "23", "31", "32")

RANK_RTOL = 1e-9
THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

# q_cartan = T @ q_diagonal
T = np.zeros((7, 7))
for _n in range(3):
    T[_n, _n] = T[_n, 4 + _n] = 1.0           # y = lam + x
    T[4 + _n, _n], T[4 + _n, 4 + _n] = 1.0, -1.0  # z = lam - x
T[3, 3] = 1.0
T_INV = np.linalg.inv(T)

# Bilinear forms of the invariant quadratic forms.
G_CARTAN = np.zeros((7, 7))
G_CARTAN[3, 3] = 1.0
for _n in range(3):
    G_CARTAN[_n, 4 + _n] = G_CARTAN[4 + _n, _n] = 0.5
ETA7 = np.diag([1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0])

# Cartan's operators under y = lam + x, z = lam - x, t = ct generate the
# automorphisms of the mirror-image table. Reversing ct maps them onto the
# derivations of this package's table (the span of the infinitesimal formulas).
REFLECT_CT = np.diag([1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0])


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    label: str
    matrix: np.ndarray
    frame: str

    def metric_residual(self) -> float:
        g = G_CARTAN if self.frame == "cartan" else ETA7
        m = self.matrix
        return float(np.abs(m.T @ g + g @ m).max())


class _Field:
    """Accumulates ``coef * q_src * d/dq_dst`` terms, exactly, into a matrix."""

    def __init__(self, names):
        self.idx = {n: i for i, n in enumerate(names)}
        self.entries: dict[tuple[int, int], Fraction] = {}

    def add(self, coef, src, dst):
        key = (self.idx[dst], self.idx[src])
        self.entries[key] = self.entries.get(key, Fraction(0)) + Fraction(coef)

    @property
    def m(self) -> np.ndarray:
        out = np.zeros((7, 7))
        for (r, c), v in self.entries.items():
            out[r, c] = float(v)
        return out


def _eps_pairs(n):
    for m, k in itertools.permutations((1, 2, 3), 2):
        e = levi_civita(n, m, k)
        if e:
            yield m, k, e


def _cartan(label: str) -> np.ndarray:
    f = _Field(CARTAN_COORDS)
    a, b = int(label[0]), int(label[1])
    y = lambda i: f"y{i}"  # noqa: E731
    z = lambda i: f"z{i}"  # noqa: E731
    if a == b:
        f.add(-1.0, z(a), z(a))
        f.add(1.0, y(a), y(a))
        for m in (1, 2, 3):
            f.add(THIRD, z(m), z(m))
            f.add(-THIRD, y(m), y(m))
    elif b == 0:
        n = a
        f.add(-2.0, "t", z(n))
        f.add(1.0, y(n), "t")
        for m, k, e in _eps_pairs(n):
            f.add(HALF * e, z(m), y(k))
            f.add(-HALF * e, z(k), y(m))
    elif a == 0:
        n = b
        f.add(-2.0, "t", y(n))
        f.add(1.0, z(n), "t")
        for m, k, e in _eps_pairs(n):
            f.add(HALF * e, y(m), z(k))
            f.add(-HALF * e, y(k), z(m))
    else:
        n, m = a, b
        f.add(-1.0, z(m), z(n))
        f.add(1.0, y(n), y(m))
    return f.m


def _diagonal(label: str) -> np.ndarray:
    f = _Field(DIAGONAL_COORDS)
    a, b = int(label[0]), int(label[1])
    L = lambda i: f"lam{i}"  # noqa: E731
    X = lambda i: f"x{i}"  # noqa: E731
    if a == b:
        # x_n d/dlam_n + lam_n d/dx_n minus one third of the sum
        f.add(1.0, X(a), L(a))
        f.add(1.0, L(a), X(a))
        for m in (1, 2, 3):
            f.add(-THIRD, X(m), L(m))
            f.add(-THIRD, L(m), X(m))
    elif a == 0 or b == 0:
        n = a or b
        s = 1.0 if b == 0 else -1.0  # X_n0 vs X_0n
        f.add(1.0, L(n), "ct")
        f.add(-1.0, "ct", L(n))
        f.add(s, X(n), "ct")
        f.add(s, "ct", X(n))
        for m, k, e in _eps_pairs(n):
            q = QUARTER * e
            f.add(q, L(m), L(k))
            f.add(-q, L(k), L(m))
            f.add(-q, X(m), X(k))
            f.add(q, X(k), X(m))
            f.add(s * q, L(m), X(k))
            f.add(s * q, X(k), L(m))
            f.add(-s * q, X(m), L(k))
            f.add(-s * q, L(k), X(m))
    else:
        # the (lam, x) operator for Cartan's X_nm uses the index pair (m, n)
        n, m = b, a
        f.add(-HALF, L(n), L(m))
        f.add(HALF, L(m), L(n))
        f.add(-HALF, X(n), X(m))
        f.add(HALF, X(m), X(n))
        f.add(HALF, X(n), L(m))
        f.add(HALF, L(m), X(n))
        f.add(HALF, L(n), X(m))
        f.add(HALF, X(m), L(n))
    return f.m


def build_generators(frame: str = "cartan") -> list[GeneratorMatrix]:
    if frame not in FRAMES:
        raise ValueError(f"frame must be one of {FRAMES}")
    make = _cartan if frame == "cartan" else _diagonal
    return [GeneratorMatrix(label, make(label), frame) for label in LABELS]


def to_diagonal_frame(m: np.ndarray) -> np.ndarray:
    return T_INV @ m @ T


def automorphism_generators() -> list[GeneratorMatrix]:
    """Diagonal-frame generators reflected in ct, matching :mod:`automorphisms`."""
    return [GeneratorMatrix(g.label, REFLECT_CT @ g.matrix @ REFLECT_CT, "diagonal")
            for g in build_generators("diagonal")]


def generator_dict(frame: str = "cartan") -> dict[str, np.ndarray]:
    return {g.label: g.matrix for g in build_generators(frame)}


def bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def _rank(rows: np.ndarray) -> int:
    if rows.size == 0:
        return 0
    sv = np.linalg.svd(rows, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > RANK_RTOL * sv[0]))


def span_dimension(mats) -> int:
    return _rank(np.array([np.asarray(m).ravel() for m in mats]))


@dataclass(frozen=True)
class ClosureReport:
    dim: int
    missing: list


def closure_report(gens) -> ClosureReport:
    """Dimension of span(gens + all pairwise brackets), and brackets outside span(gens)."""
    mats = [g.matrix for g in gens]
    base = np.array([m.ravel() for m in mats])
    base_dim = _rank(base)
    rows = [base]
    missing = []
    for (ga, a), (gb, b) in itertools.combinations(zip(gens, mats), 2):
        c = bracket(a, b).ravel()
        rows.append(c[None, :])
        if _rank(np.vstack([base, c])) > base_dim:
            missing.append((ga.label, gb.label))
    return ClosureReport(_rank(np.vstack(rows)), missing)


def fit_to_span(target: np.ndarray, gens) -> tuple[np.ndarray, float]:
    """Least-squares coefficients ``c`` with ``sum c_i X_i ~ target``; returns (c, max residual)."""
    basis = np.array([g.matrix.ravel() for g in gens]).T
    coef, *_ = np.linalg.lstsq(basis, np.asarray(target).ravel(), rcond=None)
    resid = float(np.abs(basis @ coef - np.asarray(target).ravel()).max())
    return coef, resid


def exp_consistency(params: AutomorphismParams, fit_tol: float = 1e-10) -> float:
    """Max-abs gap between ``expm`` of the fitted generator combination and the finite map.

    The linearization of the infinitesimal coordinate formulas for the
    family is fitted onto :func:`automorphism_generators`; the exponential of
    the fit is compared with the coordinate block of the finite map.
    """
    gens = automorphism_generators()
    a = infinitesimal_generator(family_to_infinitesimal(params))
    coef, resid = fit_to_span(a, gens)
    scale = max(1.0, float(np.abs(a).max()))
    if resid > fit_tol * scale:
        raise NoMatch(f"linearized direction is outside the generator span (residual {resid:.3g})")
    combo = sum(c * g.matrix for c, g in zip(coef, gens))
    return float(np.abs(expm(combo) - build(params).coordinate_matrix()).max())
