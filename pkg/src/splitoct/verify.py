"""Seeded property suites used by ``splitoct verify`` and the acceptance tests."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import automorphisms as au
from . import generators as gen
from . import kinematics as kin
from . import rotor as ro
from . import zerodiv as zd
from .algebra import ETA, TABLE, check_table, mul_array, norm2_array
from .errors import DomainViolation

SUITES = ("algebra", "rotor", "autom", "generators", "zerodiv", "kin")
DEFAULT_SEED = 42


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    residual: float
    passed: bool

    def to_json(self) -> dict:
        return {"id": self.id, "description": self.description,
                "residual": self.residual, "pass": self.passed}


@dataclass
class VerifyReport:
    suite: str
    seed: int
    trials: int
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, id_: str, description: str, residual: float, tol: float):
        residual = float(residual)
        self.checks.append(Check(id_, description, residual, bool(residual <= tol)))

    def flag(self, id_: str, description: str, ok: bool):
        self.checks.append(Check(id_, description, 0.0 if ok else 1.0, bool(ok)))

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "trials": self.trials,
                "overall": self.overall, "checks": [c.to_json() for c in self.checks]}


def _rel(resid: np.ndarray, scale: np.ndarray) -> float:
    return float(np.max(np.max(np.abs(resid), axis=-1) / scale))


# -- algebra ------------------------------------------------------------------

def suite_algebra(rng: np.random.Generator, trials: int, tol_rel: float = 1e-12) -> VerifyReport:
    rep = VerifyReport("algebra", 0, trials)
    rep.flag("table", "basis products follow the defining relations", not check_table())

    eye = np.eye(8)
    prods = mul_array(eye[:, None, :], eye[None, :, :])
    n_ab = norm2_array(prods)
    n_a_n_b = np.outer(ETA, ETA)
    rep.add("compose-basis", "N(e_i e_j) = N(e_i) N(e_j) on all 64 pairs",
            np.abs(n_ab - n_a_n_b).max(), 0.0)

    n = max(trials, 1) * 10
    a, b, c = (rng.standard_normal((n, 8)) for _ in range(3))
    na, nb, nc = (np.linalg.norm(v, axis=1) for v in (a, b, c))
    ab = mul_array(a, b)
    rep.add("compose-random", "N(ab) = N(a)N(b), relative",
            float(np.max(np.abs(norm2_array(ab) - norm2_array(a) * norm2_array(b))
                         / (na * nb) ** 2)), tol_rel)
    rep.add("alt-left", "a(ab) = (aa)b, relative",
            _rel(mul_array(a, ab) - mul_array(mul_array(a, a), b), na * na * nb), tol_rel)
    rep.add("alt-right", "(ab)b = a(bb), relative",
            _rel(mul_array(ab, b) - mul_array(a, mul_array(b, b)), na * nb * nb), tol_rel)
    x, y, z = a, b, c
    lhs = mul_array(mul_array(z, y), mul_array(x, z))
    rhs = mul_array(z, mul_array(mul_array(y, x), z))
    rep.add("moufang", "(zy)(xz) = z((yx)z), relative", _rel(lhs - rhs, nc * nc * na * nb), tol_rel)
    conj = a * np.where(np.arange(8) == 0, 1.0, -1.0)
    rep.add("conj-norm", "a conj(a) = N(a), relative",
            _rel(mul_array(a, conj) - norm2_array(a)[:, None] * eye[0], na * na), tol_rel)
    return rep


# -- rotor --------------------------------------------------------------------

def suite_rotor(rng: np.random.Generator, trials: int, tol: float = 1e-12) -> VerifyReport:
    rep = VerifyReport("rotor", 0, trials)
    for axis in ro.AXES:
        compact = ro.is_compact(axis)
        worst_phase = worst_mag = worst_rec = 0.0
        for _ in range(trials):
            if compact:
                planes = [(1, rng.uniform(0.1, 2.0), rng.uniform(-3.0, 3.0)) for _ in range(4)]
            else:
                planes = [(int(rng.choice([-1, 1])), rng.uniform(0.1, 2.0), rng.uniform(-1.5, 1.5))
                          for _ in range(4)]
            angle = rng.uniform(-2.0, 2.0)
            s = ro.from_planes(axis, planes)
            before = ro.decompose(s, axis)
            after = ro.decompose(ro.left_rotate(ro.Rotor(axis, angle), s), axis)
            dphi = after.phases() - before.phases() - angle / 2.0
            if compact:
                dphi = (dphi + math.pi) % (2 * math.pi) - math.pi
            worst_phase = max(worst_phase, float(np.abs(dphi).max()))
            worst_mag = max(worst_mag, float(np.abs(after.magnitudes() - before.magnitudes()).max()))
            worst_rec = max(worst_rec, float(np.abs(before.reconstruct().coeffs - s.coeffs).max()))
        rep.add(f"shift-{axis}", f"left rotation about {axis} shifts all four phases equally",
                worst_phase, tol)
        rep.add(f"magnitude-{axis}", f"plane magnitudes invariant about {axis}", worst_mag, 1e-10)
        rep.add(f"reconstruct-{axis}", f"four-plane decomposition about {axis} reconstructs",
                worst_rec, 1e-12)

        if not compact:
            raised = 0
            cases = 0
            for k in range(4):
                for kind in ("light", "flipped"):
                    planes = [(1, 1.0, 0.0)] * 4
                    s = ro.from_planes(axis, planes).coeffs.copy()
                    reps = ro.plane_representatives(axis)
                    r = reps[k]
                    _, partner = TABLE.product(ro.axis_index(axis), r)
                    s[partner] = s[r] * (1.0 if kind == "light" else 2.0)
                    cases += 1
                    try:
                        ro.decompose(ro.SplitOctonion(s), axis)
                    except DomainViolation:
                        raised += 1
            rep.flag(f"domain-{axis}", f"out-of-domain planes about {axis} raise ({raised}/{cases})",
                     raised == cases)
    return rep


# -- automorphisms ------------------------------------------------------------

def suite_autom(rng: np.random.Generator, trials: int) -> VerifyReport:
    rep = VerifyReport("autom", 0, trials)
    n_pairs = 64
    for family in au.FAMILIES:
        axes = (None,) if family == "diagonal" else (1, 2, 3)
        hom = eta = scal = 0.0
        for i in range(trials):
            axis = axes[i % len(axes)]
            angles = tuple(rng.uniform(-2.0, 2.0, 2))
            m = au.build(au.AutomorphismParams(family, axis, angles))
            a = rng.standard_normal((n_pairs, 8))
            b = rng.standard_normal((n_pairs, 8))
            hom = max(hom, m.homomorphism_residual(a, b))
            eta = max(eta, m.eta_residual())
            e0 = np.zeros(8)
            e0[0] = 1.0
            col = m.matrix[:, 0]
            scal = max(scal, float(np.abs(col - e0).max()) + float(np.abs(m.matrix[0, 1:]).max()))
        rep.add(f"hom-{family}", f"{family}: U(ab) = U(a)U(b)", hom, 1e-10)
        rep.add(f"eta-{family}", f"{family}: eta-orthogonal", eta, 1e-12)
        rep.add(f"scalar-{family}", f"{family}: scalar part invariant", scal, 0.0)

    ratios = []
    for _ in range(min(trials, 20)):
        p = au.InfinitesimalParams.from_vector(rng.uniform(-1.0, 1.0, 15))
        r1 = au.linearization_residual(p.scaled(1e-3))
        r2 = au.linearization_residual(p.scaled(1e-4))
        ratios.append(r1 / r2)
    worst = max(abs(r - 100.0) for r in ratios)
    rep.add("linearization-order", "first-order formulas: residual ratio over a decade near 100",
            worst, 20.0)

    gm = 0.0
    for _ in range(trials):
        K1, K2 = rng.uniform(-1.0, 1.0, 2)
        lam, x = rng.standard_normal(3), rng.standard_normal(3)
        lam2, x2 = au.gellmann_diagonal(K1, K2, lam, x)
        k1, k2 = au.gellmann_to_k(K1, K2)
        out = au.build_diagonal(k1, k2).apply_coords(np.concatenate([lam, [0.0], x]))
        gm = max(gm, float(np.abs(np.concatenate([lam2, x2]) - np.concatenate([out[:3], out[4:]])).max()))
    rep.add("gellmann", "Gell-Mann form equals the diagonal coordinate action", gm, 1e-12)
    return rep


# -- generators -----------------------------------------------------------------

def suite_generators(rng: np.random.Generator, trials: int) -> VerifyReport:
    rep = VerifyReport("generators", 0, trials)
    for frame in gen.FRAMES:
        d = gen.generator_dict(frame)
        rep.add(f"trace-{frame}", f"{frame}: X11 + X22 + X33 = 0",
                np.abs(d["11"] + d["22"] + d["33"]).max(), 0.0)
        gens = gen.build_generators(frame)
        rep.add(f"metric-{frame}", f"{frame}: generators annihilate the invariant form",
                max(g.metric_residual() for g in gens), 1e-14)
        report = gen.closure_report(gens)
        rep.add(f"closure-{frame}", f"{frame}: span plus brackets has dimension 14",
                abs(report.dim - 14), 0.0)
        rep.flag(f"closed-{frame}", f"{frame}: every bracket lies in the span", not report.missing)
    cart, diag = gen.generator_dict("cartan"), gen.generator_dict("diagonal")
    rep.add("frame-agreement", "cartan and diagonal frames agree by change of basis",
            max(float(np.abs(gen.to_diagonal_frame(cart[k]) - diag[k]).max()) for k in gen.LABELS),
            1e-12)
    worst = 0.0
    for i in range(min(trials, 30)):
        family = au.FAMILIES[i % 3]
        axis = None if family == "diagonal" else int(rng.integers(1, 4))
        params = au.AutomorphismParams(family, axis, tuple(rng.uniform(-1.0, 1.0, 2)))
        worst = max(worst, gen.exp_consistency(params))
    rep.add("exp-consistency", "expm of fitted generators equals the finite maps", worst, 1e-10)
    return rep


# -- zero divisors ------------------------------------------------------------

def suite_zerodiv(rng: np.random.Generator, trials: int) -> VerifyReport:
    rep = VerifyReport("zerodiv", 0, trials)
    for c in zd.relation_suite():
        rep.flag(c.id, c.description, c.passed)
    for basis in zd.BASES:
        worst = 0.0
        for _ in range(trials):
            s = zd.SplitOctonion(rng.standard_normal(8))
            rec = zd.lightcone_reconstruct(zd.lightcone_decompose(s, basis))
            worst = max(worst, float(np.abs(rec.coeffs - s.coeffs).max()))
        rep.add(f"reconstruct-{basis}", f"{basis} light-cone decomposition reconstructs", worst, 1e-15)
    return rep


# -- kinematics ---------------------------------------------------------------

def suite_kin(rng: np.random.Generator, trials: int) -> VerifyReport:
    rep = VerifyReport("kin", 0, trials)
    vadd = light = par = spin = hom = 0.0
    for _ in range(trials):
        v = rng.uniform(-0.5, 0.5, 3)
        theta = rng.uniform(-2.0, 2.0)
        got = kin.velocity_add(v, theta)
        vadd = max(vadd, float(np.abs(got - kin.velocity_add_textbook(v, math.tanh(theta))).max()))
        light = max(light, abs(kin.velocity_add([1.0, 0.0, 0.0], theta)[0] - 1.0))
        g, V, d = rng.uniform(-math.pi, math.pi), rng.uniform(-0.09, 0.09), rng.normal()
        s = kin.aberration(g, V, d, 12) + kin.aberration(g, V, d, 13)
        par = max(par, abs(s - 2 * V * math.sin(g)))
        x, p = rng.standard_normal(3), rng.standard_normal(3)
        spin = max(spin, float(np.abs(kin.spin_vector(x, p) - kin.spin_vector_bruteforce(x, p)).max()))
        alpha = rng.uniform(0.1, 10.0)
        hom = max(hom, float(np.abs(kin.wavelengths(alpha * p) - kin.wavelengths(p) / alpha).max()))
    rep.add("vadd-textbook", "velocity addition without lamdot matches the textbook formula", vadd, 1e-12)
    rep.add("vadd-light", "light speed is a fixed point", light, 0.0)
    rep.add("aberration-parity", "plane-12 and plane-13 shifts sum to 2(V/c) sin g", par, 1e-14)
    rep.add("spin", "spin vector equals the Levi-Civita sum", spin, 1e-12)
    rep.add("wavelength-homogeneity", "lam(a p) = lam(p)/a", hom, 1e-12)

    unc = 0.0
    for _ in range(min(trials, 200)):
        x, lam = rng.standard_normal(3), rng.standard_normal(3)
        r = kin.uncertainty_ratios(x, lam, 1e-4)
        unc = max(unc, r.ratio_2_residual or 0.0, r.ratio_3_residual or 0.0)
    rep.add("uncertainty-ratios", "boost coordinate shifts obey the printed ratios", unc, 1e-8)

    rep.add("lagrangian-rest", "L = -m c^2 at rest", abs(kin.lagrangian(1.0, [0, 0, 0], [1, 0, 0], [0, 0, 0]) + 1.0), 0.0)
    rep.add("max-mass-si", "sqrt(hbar c / G) in SI is about 2.18e-8 kg",
            abs(kin.max_mass(kin.SI) - 2.176434e-8) / 2.176434e-8, 1e-5)

    t = np.linspace(0.0, 1.0, 201)
    v = np.array([0.3, -0.2, 0.1])
    w = math.sqrt(1.0 - v @ v) * t
    report = kin.action_conservation(t, w, np.outer(t, v), np.zeros((t.size, 3)))
    rep.add("action-rate", "dw/dt constant on a uniform null trajectory", report.max_rate_drift, 1e-8)
    return rep


_RUNNERS = {
    "algebra": suite_algebra,
    "rotor": suite_rotor,
    "autom": suite_autom,
    "generators": suite_generators,
    "zerodiv": suite_zerodiv,
    "kin": suite_kin,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, trials: int = 100,
              tol_rel: float = 1e-12) -> VerifyReport:
    """Run one suite (or ``all``) with a deterministic random source."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    names = SUITES if name == "all" else (name,)
    if any(n not in _RUNNERS for n in names):
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    out = VerifyReport(name, seed, trials)
    for i, n in enumerate(names):
        rng = np.random.default_rng([seed, i])
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            sub = (suite_algebra(rng, trials, tol_rel) if n == "algebra"
                   else _RUNNERS[n](rng, trials))
        for c in sub.checks:
            out.checks.append(Check(f"{n}.{c.id}" if name == "all" else c.id,
                                    c.description, c.residual, c.passed))
    return out
