import math

import numpy as np
import pytest

from splitoct import algebra as al
from splitoct import rotor as ro
from splitoct.algebra import SplitOctonion as S
from splitoct.errors import DomainViolation


@pytest.mark.parametrize("axis", ro.AXES)
def test_rotor_is_unit(axis):
    assert abs(abs(ro.Rotor(axis, 0.8).octonion().norm2()) - 1.0) < 1e-12


@pytest.mark.parametrize("axis", ro.AXES)
def test_planes_partition_coefficients(axis):
    u = ro.axis_index(axis)
    seen = set()
    for rep in ro.plane_representatives(axis):
        _, partner = al.TABLE.product(u, rep)
        seen |= {rep, partner}
    assert seen == set(range(8))


@pytest.mark.parametrize("axis", ro.AXES)
def test_left_rotation_is_isometry(axis, rng):
    r = ro.Rotor(axis, 0.7)
    for _ in range(50):
        s = S(rng.standard_normal(8))
        assert abs(ro.left_rotate(r, s).norm2() - s.norm2()) < 1e-10
        assert abs(ro.right_rotate(s, r).norm2() - s.norm2()) < 1e-10


def test_compact_phase_shift_example():
    # s = 1: plane (w, x1) about j1 has phase 0; rotating by pi/2 shifts it to pi/4
    out = ro.decompose(ro.left_rotate(ro.Rotor("j1", math.pi / 2), al.ONE), "j1")
    assert out.terms[0].phase == pytest.approx(math.pi / 4, abs=1e-12)
    assert out.terms[0].magnitude == pytest.approx(1.0, abs=1e-12)


def test_zero_magnitude_plane_phase_zero():
    d = ro.decompose(S.zero(), "j2")
    assert all(t.phase == 0.0 and t.magnitude == 0.0 for t in d.terms)


@pytest.mark.parametrize("axis", ro.AXES)
def test_phase_shift_property(axis, rng):
    compact = ro.is_compact(axis)
    for _ in range(100):
        if compact:
            planes = [(1, rng.uniform(0.1, 2), rng.uniform(-3, 3)) for _ in range(4)]
        else:
            planes = [(int(rng.choice([-1, 1])), rng.uniform(0.1, 2), rng.uniform(-1, 1))
                      for _ in range(4)]
        angle = rng.uniform(-1.5, 1.5)
        s = ro.from_planes(axis, planes)
        before = ro.decompose(s, axis)
        after = ro.decompose(ro.left_rotate(ro.Rotor(axis, angle), s), axis)
        d = after.phases() - before.phases() - angle / 2
        if compact:
            d = (d + math.pi) % (2 * math.pi) - math.pi
        assert np.abs(d).max() <= 1e-12
        assert np.allclose(after.magnitudes(), before.magnitudes(), atol=1e-10)


@pytest.mark.parametrize("axis", [a for a in ro.AXES if not ro.is_compact(a)])
def test_domain_violation_on_light_like_plane(axis):
    s = ro.from_planes(axis, [(1, 1.0, 0.0)] * 4).coeffs.copy()
    u = ro.axis_index(axis)
    for rep in ro.plane_representatives(axis):
        bad = s.copy()
        _, partner = al.TABLE.product(u, rep)
        bad[partner] = -bad[rep]
        with pytest.raises(DomainViolation, match="radicand"):
            ro.decompose(S(bad), axis)


def test_domain_violation_message_names_plane():
    with pytest.raises(DomainViolation, match=r"\(w,lam1\)"):
        ro.decompose(S.from_parts(0, [1, 0, 0], [0, 0, 0], 0), "J1")


def test_negative_leading_coefficient_uses_sign():
    s = ro.from_planes("I", [(-1, 1.0, 0.3), (1, 2.0, -0.2), (-1, 0.5, 0.0), (1, 1.0, 1.0)])
    d = ro.decompose(s, "I")
    assert [t.sign for t in d.terms] == [-1, 1, -1, 1]
    assert d.reconstruct().allclose(s, atol=1e-12)


def test_json_shape():
    out = ro.decompose(al.ONE, "j3").to_json()
    assert len(out) == 4
    assert set(out[0]) >= {"plane", "magnitude", "phase"}


def test_bad_axis():
    with pytest.raises(ValueError):
        ro.Rotor("1", 0.1)
