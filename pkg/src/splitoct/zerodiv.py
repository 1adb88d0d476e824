"""Primitive idempotents, nilpotents and light-cone decompositions.

Projectors ``D^{+-(J)}_n = (1 +- J_n)/2`` and ``D^{+-(I)} = (1 +- I)/2``;
nilpotents ``G^{+-(J)}_n = (J_n +- j_n)/2`` and ``G^{+-(I)}_n = (I +- j_n)/2``.
All coefficients are 0 or +-1/2, so every relation checked here is exact.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .algebra import I_INDEX, ONE, SplitOctonion, J, j, mul, norm2

_KIND = re.compile(r"^(J|I)([123]?)([+-])$")


def _parse(kind: str) -> tuple[str, int | None, int]:
    m = _KIND.match(kind)
    if not m:
        raise ValueError(f"bad zero-divisor kind {kind!r}; expected e.g. 'J1+', 'I-', 'I2+'")
    fam, n, s = m.groups()
    return fam, (int(n) if n else None), (1 if s == "+" else -1)


def _half(*pairs) -> SplitOctonion:
    c = np.zeros(8)
    for idx, coeff in pairs:
        c[idx] += 0.5 * coeff
    return SplitOctonion(c)


@dataclass(frozen=True)
class Projector:
    kind: str
    value: SplitOctonion


@dataclass(frozen=True)
class Nilpotent:
    kind: str
    value: SplitOctonion


def make_projector(kind: str) -> Projector:
    """``'J1+'`` .. ``'J3-'`` for ``D^{(J)}_n``; ``'I+'``/``'I-'`` for ``D^{(I)}``."""
    fam, n, s = _parse(kind)
    if fam == "J":
        if n is None:
            raise ValueError("J projectors need an index 1..3")
        return Projector(kind, _half((0, 1), (J(n), s)))
    if n is not None:
        raise ValueError("the I projector has no index")
    return Projector(kind, _half((0, 1), (I_INDEX, s)))


def make_nilpotent(kind: str) -> Nilpotent:
    """``'J1+'`` for ``G^{+(J)}_1 = (J_1 + j_1)/2``, ``'I2-'`` for ``G^{-(I)}_2 = (I - j_2)/2``."""
    fam, n, s = _parse(kind)
    if n is None:
        raise ValueError("nilpotents need an index 1..3")
    lead = J(n) if fam == "J" else I_INDEX
    return Nilpotent(kind, _half((lead, 1), (j(n), s)))


def D(fam: str, n: int | None = None, sign: int = 1) -> SplitOctonion:
    return make_projector(f"{fam}{n or ''}{'+' if sign > 0 else '-'}").value


def G(fam: str, n: int, sign: int = 1) -> SplitOctonion:
    return make_nilpotent(f"{fam}{n}{'+' if sign > 0 else '-'}").value


def all_projectors() -> list[Projector]:
    kinds = [f"J{n}{s}" for n in (1, 2, 3) for s in "+-"] + ["I+", "I-"]
    return [make_projector(k) for k in kinds]


def all_nilpotents() -> list[Nilpotent]:
    kinds = [f"{f}{n}{s}" for f in "JI" for n in (1, 2, 3) for s in "+-"]
    return [make_nilpotent(k) for k in kinds]


@dataclass(frozen=True)
class RelationCheck:
    id: str
    description: str
    passed: bool


def relation_suite() -> list[RelationCheck]:
    """Check every multiplication rule among the zero divisors, exactly."""
    out: list[RelationCheck] = []
    zero = SplitOctonion.zero()

    def check(id_, desc, lhs, rhs):
        out.append(RelationCheck(id_, desc, lhs == rhs))

    pm = {1: "+", -1: "-"}
    for s in (1, -1):
        for n in (1, 2, 3):
            d = D("J", n, s)
            check(f"DD-J{n}{pm[s]}", f"D{pm[s]}(J{n})^2 = D{pm[s]}(J{n})", mul(d, d), d)
        d = D("I", None, s)
        check(f"DD-I{pm[s]}", f"D{pm[s]}(I)^2 = D{pm[s]}(I)", mul(d, d), d)
    for n in (1, 2, 3):
        check(f"DD-J{n}+-", f"D+(J{n}) D-(J{n}) = 0", mul(D("J", n, 1), D("J", n, -1)), zero)
        check(f"DD-J{n}-+", f"D-(J{n}) D+(J{n}) = 0", mul(D("J", n, -1), D("J", n, 1)), zero)
    check("DD-I+-", "D+(I) D-(I) = 0", mul(D("I", None, 1), D("I", None, -1)), zero)
    check("DD-I-+", "D-(I) D+(I) = 0", mul(D("I", None, -1), D("I", None, 1)), zero)

    for n, s in itertools.product((1, 2, 3), (1, -1)):
        g, h = G("J", n, s), G("J", n, -s)
        check(f"GG-J{n}{pm[s]}{pm[s]}", f"G{pm[s]}(J{n})^2 = 0", mul(g, g), zero)
        check(f"GG-J{n}{pm[s]}{pm[-s]}", f"G{pm[s]}(J{n}) G{pm[-s]}(J{n}) = D{pm[-s]}(I)",
              mul(g, h), D("I", None, -s))
        g, h = G("I", n, s), G("I", n, -s)
        check(f"GG-I{n}{pm[s]}{pm[s]}", f"G{pm[s]}(I{n})^2 = 0", mul(g, g), zero)
        check(f"GG-I{n}{pm[s]}{pm[-s]}", f"G{pm[s]}(I{n}) G{pm[-s]}(I{n}) = D{pm[s]}(J{n})",
              mul(g, h), D("J", n, s))

    for fam, n in itertools.product("JI", (1, 2, 3)):
        g, h = G(fam, n, 1), G(fam, n, -1)
        check(f"anticomm-{fam}{n}", f"{{G+({fam}{n}), G-({fam}{n})}} = 1", mul(g, h) + mul(h, g), ONE)

    for n, s in itertools.product((1, 2, 3), (1, -1)):
        p, q = pm[s], pm[-s]
        check(f"mixed-DJ{n}{p}-GI{p}", f"D{p}(J{n}) G{p}(I{n}) = G{p}(I{n})",
              mul(D("J", n, s), G("I", n, s)), G("I", n, s))
        check(f"mixed-DJ{n}{p}-GI{q}", f"D{p}(J{n}) G{q}(I{n}) = 0",
              mul(D("J", n, s), G("I", n, -s)), zero)
        check(f"mixed-DI{p}-GJ{n}{p}", f"D{p}(I) G{p}(J{n}) = 0",
              mul(D("I", None, s), G("J", n, s)), zero)
        check(f"mixed-DI{p}-GJ{n}{q}", f"D{p}(I) G{q}(J{n}) = G{q}(J{n})",
              mul(D("I", None, s), G("J", n, -s)), G("J", n, -s))

    for p in all_projectors():
        out.append(RelationCheck(f"null-D{p.kind}", f"N^2(D {p.kind}) = 0", norm2(p.value) == 0.0))
    for g in all_nilpotents():
        out.append(RelationCheck(f"null-G{g.kind}", f"N^2(G {g.kind}) = 0", norm2(g.value) == 0.0))
    n_proj = len({p.value for p in all_projectors()})
    n_nil = len({g.value for g in all_nilpotents()})
    out.append(RelationCheck("count-idempotents", "8 distinct idempotents", n_proj == 8))
    out.append(RelationCheck("count-nilpotents", "12 distinct nilpotents", n_nil == 12))
    out.append(RelationCheck(
        "count-disjoint", "idempotents and nilpotents are distinct",
        not ({p.value for p in all_projectors()} & {g.value for g in all_nilpotents()}),
    ))
    return out


# -- light-cone decompositions ---------------------------------------------

BASES = ("J_form", "I_form")


def lightcone_decompose(s: SplitOctonion, basis: str = "J_form") -> list[tuple[str, float]]:
    """Scalar weights of ``s`` over commuting zero divisors.

    ``J_form``: ``sum_n D+(J_n)(w/3 + lam_n) + G+(I_n)(ct/3 + x_n)
    + D-(J_n)(w/3 - lam_n) + G-(I_n)(ct/3 - x_n)``.
    ``I_form``: ``D+(I)(w + ct) + D-(I)(w - ct)
    + sum_n G+(J_n)(lam_n + x_n) + G-(J_n)(lam_n - x_n)``.
    """
    w, ct = s.w, s.ct
    lam, x = s.lam, s.x
    out = []
    if basis == "J_form":
        for n in (1, 2, 3):
            out += [
                (f"D+J{n}", w / 3 + lam[n - 1]),
                (f"G+I{n}", ct / 3 + x[n - 1]),
                (f"D-J{n}", w / 3 - lam[n - 1]),
                (f"G-I{n}", ct / 3 - x[n - 1]),
            ]
    elif basis == "I_form":
        out += [("D+I", w + ct), ("D-I", w - ct)]
        for n in (1, 2, 3):
            out += [(f"G+J{n}", lam[n - 1] + x[n - 1]), (f"G-J{n}", lam[n - 1] - x[n - 1])]
    else:
        raise ValueError(f"basis must be one of {BASES}")
    return out


def _element(label: str) -> SplitOctonion:
    kind, fam, rest = label[0], label[2], label[3:]
    sign = label[1]
    if kind == "D":
        return make_projector(f"{fam}{rest}{sign}").value
    return make_nilpotent(f"{fam}{rest}{sign}").value


def lightcone_reconstruct(coeffs: list[tuple[str, float]]) -> SplitOctonion:
    total = np.zeros(8)
    for label, c in coeffs:
        total += c * _element(label).coeffs
    return SplitOctonion(total)
