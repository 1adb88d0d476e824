"""Split-octonion values and the basis multiplication table.

Coefficients are stored in the fixed order ``(1, J1, J2, J3, j1, j2, j3, I)``
which corresponds to the physical reading ``(w, lam1..3, x1..3, ct)``.

Basis algebra::

    J_n^2 = 1,  j_n^2 = -1,  I^2 = 1,  J_n j_n = I
    J_n J_m = -J_m J_n = eps_nmk j_k
    j_n j_m = -j_m j_n = eps_nmk j_k
    j_m J_n = -J_n j_m = eps_nmk J_k
    J_n I = -I J_n = j_n
    j_n I = -I j_n = J_n

The table is generated from these rules, frozen, and checked at import time.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import LightLikeVector, ZeroNorm

TAU_ZERO = 1e-9
TAU_REL = 1e-12

BASIS_NAMES = ("1", "J1", "J2", "J3", "j1", "j2", "j3", "I")
COEFF_NAMES = ("w", "lam1", "lam2", "lam3", "x1", "x2", "x3", "ct")

# Diagonal of the (4,4) norm form: N^2 = w^2 - lam^2 + x^2 - ct^2.
ETA = np.array([1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, -1.0])


def J(n: int) -> int:
    """Coefficient index of J_n (n = 1..3)."""
    return n


def j(n: int) -> int:
    """Coefficient index of j_n (n = 1..3)."""
    return 3 + n


I_INDEX = 7


def levi_civita(a: int, b: int, c: int) -> int:
    """Totally antisymmetric symbol on 1-based indices."""
    if len({a, b, c}) != 3:
        return 0
    return 1 if (a, b, c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1


def basis_index(unit: str | int) -> int:
    if isinstance(unit, (int, np.integer)):
        if not 0 <= unit < 8:
            raise ValueError(f"basis index out of range: {unit}")
        return int(unit)
    try:
        return BASIS_NAMES.index(unit)
    except ValueError:
        raise ValueError(f"unknown basis unit {unit!r}; expected one of {BASIS_NAMES}") from None


@dataclass(frozen=True)
class BasisProductTable:
    """``e_a * e_b = signs[a, b] * e_{targets[a, b]}``."""

    signs: np.ndarray
    targets: np.ndarray

    def product(self, a: int, b: int) -> tuple[int, int]:
        return int(self.signs[a, b]), int(self.targets[a, b])

    def structure_tensor(self) -> np.ndarray:
        """Dense ``(8, 8, 8)`` tensor ``C[a, b, c]`` with ``e_a e_b = C[a, b, c] e_c``."""
        c = np.zeros((8, 8, 8))
        for a, b in itertools.product(range(8), repeat=2):
            c[a, b, self.targets[a, b]] = self.signs[a, b]
        return c


def _build_table() -> BasisProductTable:
    signs = np.zeros((8, 8), dtype=int)
    targets = np.full((8, 8), -1, dtype=int)

    def put(a, b, sign, target):
        if signs[a, b] != 0:
            raise RuntimeError(f"basis product {BASIS_NAMES[a]}*{BASIS_NAMES[b]} assigned twice")
        signs[a, b] = sign
        targets[a, b] = target

    for a in range(8):
        put(0, a, 1, a)
        if a:
            put(a, 0, 1, a)
    put(I_INDEX, I_INDEX, 1, 0)
    for n in (1, 2, 3):
        put(J(n), J(n), 1, 0)
        put(j(n), j(n), -1, 0)
        put(J(n), j(n), 1, I_INDEX)
        put(j(n), J(n), -1, I_INDEX)
        put(J(n), I_INDEX, 1, j(n))
        put(I_INDEX, J(n), -1, j(n))
        put(j(n), I_INDEX, 1, J(n))
        put(I_INDEX, j(n), -1, J(n))
        for m in (1, 2, 3):
            if m == n:
                continue
            k = 6 - n - m
            e = levi_civita(n, m, k)
            put(J(n), J(m), e, j(k))
            put(j(n), j(m), e, j(k))
            # j_m J_n = eps_nmk J_k and J_n j_m = -eps_nmk J_k
            put(j(m), J(n), e, J(k))
            put(J(n), j(m), -e, J(k))
    signs.setflags(write=False)
    targets.setflags(write=False)
    return BasisProductTable(signs, targets)


TABLE = _build_table()
STRUCTURE = TABLE.structure_tensor()
STRUCTURE.setflags(write=False)


# -- array-level kernels ---------------------------------------------------

def mul_array(a, b) -> np.ndarray:
    """Product of coefficient arrays with trailing dimension 8 (broadcasting)."""
    return np.einsum("...i,...j,ijk->...k", np.asarray(a, float), np.asarray(b, float), STRUCTURE)


def conj_array(a) -> np.ndarray:
    a = np.array(a, float)
    a[..., 1:] *= -1.0
    return a


def norm2_array(a) -> np.ndarray:
    a = np.asarray(a, float)
    return np.einsum("...i,i,...i->...", a, ETA, a)


def vector_norm2_array(a) -> np.ndarray:
    """``V^2 = -x^2 + ct^2 + lam^2`` for the vector part."""
    a = np.asarray(a, float)
    return a[..., 0] ** 2 - norm2_array(a)


def left_matrix(a) -> np.ndarray:
    """Matrix ``L`` with ``L @ b == mul(a, b)`` on coefficient vectors."""
    return np.einsum("i,ijk->kj", np.asarray(a, float), STRUCTURE)


def right_matrix(b) -> np.ndarray:
    """Matrix ``R`` with ``R @ a == mul(a, b)``."""
    return np.einsum("j,ijk->ki", np.asarray(b, float), STRUCTURE)


# -- value type ------------------------------------------------------------

class SplitOctonion:
    """Immutable split octonion ``w + lam.J + x.j + ct I``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[float]):
        c = np.array(coeffs, dtype=float).reshape(-1)
        if c.shape != (8,):
            raise ValueError(f"a split octonion needs 8 coefficients, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise ValueError("split octonion coefficients must be finite")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_parts(cls, w=0.0, lam=(0.0, 0.0, 0.0), x=(0.0, 0.0, 0.0), ct=0.0) -> "SplitOctonion":
        lam = tuple(lam)
        x = tuple(x)
        if len(lam) != 3 or len(x) != 3:
            raise ValueError("lam and x must have exactly 3 components")
        return cls((w, *lam, *x, ct))

    @classmethod
    def unit(cls, name: str | int, scale: float = 1.0) -> "SplitOctonion":
        c = np.zeros(8)
        c[basis_index(name)] = scale
        return cls(c)

    @classmethod
    def scalar(cls, value: float) -> "SplitOctonion":
        return cls.unit(0, value)

    @classmethod
    def zero(cls) -> "SplitOctonion":
        return cls(np.zeros(8))

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def w(self) -> float:
        return float(self._c[0])

    @property
    def lam(self) -> tuple[float, float, float]:
        return tuple(float(v) for v in self._c[1:4])

    @property
    def x(self) -> tuple[float, float, float]:
        return tuple(float(v) for v in self._c[4:7])

    @property
    def ct(self) -> float:
        return float(self._c[7])

    @property
    def vector(self) -> np.ndarray:
        return self._c[1:]

    def __getitem__(self, i):
        return self._c[i]

    def __iter__(self):
        return iter(self._c.tolist())

    def __add__(self, other):
        if isinstance(other, SplitOctonion):
            return SplitOctonion(self._c + other._c)
        if isinstance(other, (int, float)):
            return SplitOctonion(self._c + np.eye(8)[0] * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, SplitOctonion):
            return SplitOctonion(self._c - other._c)
        if isinstance(other, (int, float)):
            return SplitOctonion(self._c - np.eye(8)[0] * other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SplitOctonion(-self._c)

    def __mul__(self, other):
        if isinstance(other, SplitOctonion):
            return mul(self, other)
        if isinstance(other, (int, float, np.floating)):
            return SplitOctonion(self._c * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return SplitOctonion(self._c * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return SplitOctonion(self._c / other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SplitOctonion):
            return NotImplemented
        return bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return "SplitOctonion(" + ", ".join(f"{n}={v:g}" for n, v in zip(COEFF_NAMES, self._c)) + ")"

    def allclose(self, other: "SplitOctonion", atol: float = TAU_REL) -> bool:
        return bool(np.allclose(self._c, other._c, rtol=0.0, atol=atol))

    def conj(self) -> "SplitOctonion":
        return conj(self)

    def norm2(self) -> float:
        return norm2(self)

    def vector_norm2(self) -> float:
        return vector_norm2(self)

    def inverse(self, tol_zero: float = TAU_ZERO) -> "SplitOctonion":
        return inverse(self, tol_zero)

    def to_json(self) -> dict:
        return to_json(self)


ONE = SplitOctonion.unit(0)


def mul(a: SplitOctonion, b: SplitOctonion) -> SplitOctonion:
    return SplitOctonion(mul_array(a.coeffs, b.coeffs))


def conj(s: SplitOctonion) -> SplitOctonion:
    return SplitOctonion(conj_array(s.coeffs))


def norm2(s: SplitOctonion) -> float:
    """Scalar part of ``s * conj(s)``: ``w^2 - lam^2 + x^2 - ct^2``."""
    return float(norm2_array(s.coeffs))


def vector_norm2(s: SplitOctonion) -> float:
    return float(vector_norm2_array(s.coeffs))


def associator(a: SplitOctonion, b: SplitOctonion, c: SplitOctonion) -> SplitOctonion:
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def commutator(a: SplitOctonion, b: SplitOctonion) -> SplitOctonion:
    return mul(a, b) - mul(b, a)


def is_timelike_signal(s: SplitOctonion) -> bool:
    """Physical-signal condition ``ct^2 + lam^2 > x^2``."""
    return vector_norm2(s) > 0.0


# -- classification --------------------------------------------------------

class NormClass(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero"


class VectorClass(str, enum.Enum):
    TIME_LIKE = "time_like"
    SPACE_LIKE = "space_like"
    LIGHT_LIKE = "light_like"


def _sign_class(value: float, tol: float):
    if abs(value) <= tol:
        return 0
    return 1 if value > 0 else -1


def classify(s: SplitOctonion, tol_zero: float = TAU_ZERO) -> tuple[NormClass, VectorClass]:
    n = _sign_class(norm2(s), tol_zero)
    v = _sign_class(vector_norm2(s), tol_zero)
    norm_tag = {1: NormClass.POSITIVE, -1: NormClass.NEGATIVE, 0: NormClass.ZERO}[n]
    vec_tag = {1: VectorClass.TIME_LIKE, -1: VectorClass.SPACE_LIKE, 0: VectorClass.LIGHT_LIKE}[v]
    return norm_tag, vec_tag


def inverse(s: SplitOctonion, tol_zero: float = TAU_ZERO) -> SplitOctonion:
    n2 = norm2(s)
    if abs(n2) <= tol_zero:
        raise ZeroNorm(f"element has norm^2 = {n2:g}; zero divisors have no inverse")
    return conj(s) / n2


# -- polar form ------------------------------------------------------------

class PolarKind(str, enum.Enum):
    SINH_COSH = "sinh_cosh"  # negative norm:            N (sinh t + eps cosh t)
    COSH_SINH = "cosh_sinh"  # positive norm, V^2 > 0:   N (cosh t + eps sinh t)
    COS_SIN = "cos_sin"      # positive norm, V^2 < 0:   N (cos t + eps sin t)


@dataclass(frozen=True)
class PolarForm:
    """``sign * N * (f(theta) + eps g(theta))`` with ``N >= 0``.

    ``sign`` is -1 only for the ``cosh_sinh`` kind with a negative scalar
    part, which cannot be reached with ``N >= 0`` since ``cosh >= 1``.
    """

    N: float
    eps: tuple[float, ...]
    theta: float
    kind: PolarKind
    sign: int = 1

    def reconstruct(self) -> SplitOctonion:
        if self.kind is PolarKind.SINH_COSH:
            a, b = math.sinh(self.theta), math.cosh(self.theta)
        elif self.kind is PolarKind.COSH_SINH:
            a, b = math.cosh(self.theta), math.sinh(self.theta)
        else:
            a, b = math.cos(self.theta), math.sin(self.theta)
        c = np.concatenate([[a], b * np.asarray(self.eps)])
        return SplitOctonion(self.sign * self.N * c)


def polar(s: SplitOctonion, tol_zero: float = TAU_ZERO) -> PolarForm:
    n2 = norm2(s)
    if abs(n2) <= tol_zero:
        raise ZeroNorm(f"no polar form for a null octonion (norm^2 = {n2:g})")
    w = s.w
    v = np.asarray(s.vector, float)
    v2 = vector_norm2(s)
    if n2 < 0:
        N = math.sqrt(-n2)
        mod_v = math.sqrt(v2)
        return PolarForm(N, tuple(v / mod_v), math.asinh(w / N), PolarKind.SINH_COSH)
    if abs(v2) <= tol_zero:
        raise LightLikeVector(f"vector part has V^2 = {v2:g}; the unit direction is undefined")
    N = math.sqrt(n2)
    if v2 > 0:
        mod_v = math.sqrt(v2)
        sign = 1 if w > 0 else -1
        return PolarForm(N, tuple(sign * v / mod_v), math.asinh(mod_v / N), PolarKind.COSH_SINH, sign)
    mod_v = math.sqrt(-v2)
    return PolarForm(N, tuple(v / mod_v), math.atan2(mod_v, w), PolarKind.COS_SIN)


# -- JSON ------------------------------------------------------------------

def to_json(s: SplitOctonion) -> dict:
    return {"w": s.w, "lam": list(s.lam), "x": list(s.x), "ct": s.ct}


def _number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"field {field!r} must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ValueError(f"field {field!r} must be finite")
    return out


def from_json(obj: Mapping) -> SplitOctonion:
    """Parse ``{"w": f, "lam": [f,f,f], "x": [f,f,f], "ct": f}``."""
    if not isinstance(obj, Mapping):
        raise ValueError("octonion JSON must be an object")
    for field in ("w", "lam", "x", "ct"):
        if field not in obj:
            raise ValueError(f"missing field {field!r}")
    extra = set(obj) - {"w", "lam", "x", "ct"}
    if extra:
        raise ValueError(f"unknown field {sorted(extra)[0]!r}")
    triples = {}
    for field in ("lam", "x"):
        arr = obj[field]
        if not isinstance(arr, list) or len(arr) != 3:
            raise ValueError(f"field {field!r} must be an array of length 3")
        triples[field] = [_number(v, f"{field}[{i}]") for i, v in enumerate(arr)]
    return SplitOctonion.from_parts(
        _number(obj["w"], "w"), triples["lam"], triples["x"], _number(obj["ct"], "ct")
    )


# -- table self-test -------------------------------------------------------

def check_table(table: BasisProductTable = TABLE) -> list[str]:
    """Return the list of violated table rules (empty when consistent)."""
    problems = []
    if np.any(table.targets < 0):
        problems.append("incomplete table")
        return problems
    squares = {0: 1, I_INDEX: 1, **{J(n): 1 for n in (1, 2, 3)}, **{j(n): -1 for n in (1, 2, 3)}}
    for a, sq in squares.items():
        if table.product(a, a) != (sq, 0):
            problems.append(f"{BASIS_NAMES[a]}^2 != {sq}")
    for n in (1, 2, 3):
        if table.product(J(n), j(n)) != (1, I_INDEX):
            problems.append(f"J{n} j{n} != I")
    eye = np.eye(8)
    for a, b in itertools.product(range(8), repeat=2):
        ea, eb = eye[a], eye[b]
        ab = mul_array(ea, eb)
        if norm2_array(ab) != norm2_array(ea) * norm2_array(eb):
            problems.append(f"composition fails on {BASIS_NAMES[a]},{BASIS_NAMES[b]}")
        if not np.array_equal(mul_array(ea, ab), mul_array(mul_array(ea, ea), eb)):
            problems.append(f"left alternativity fails on {BASIS_NAMES[a]},{BASIS_NAMES[b]}")
        if not np.array_equal(mul_array(mul_array(eb, ea), ea), mul_array(eb, mul_array(ea, ea))):
            problems.append(f"right alternativity fails on {BASIS_NAMES[a]},{BASIS_NAMES[b]}")
    return problems


_problems = check_table()
if _problems:
    raise RuntimeError("basis product table is inconsistent: " + "; ".join(_problems))
del _problems
