"""Member construction: parameters, measures, recurrences, rotation, spot checks."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from conftest import atom_measure, random_member, random_params
from fslab import (
    ClassMember,
    ClassParams,
    DomainError,
    HerglotzMeasure,
    PowerSeries,
    denominators,
    fs_functional,
    herglotz_coeffs,
    member_from_pq,
    membership_spotcheck,
    ps_linear,
    ps_mul,
    rotate,
    rotate_member,
    shift_measure,
    starlike_from_q,
)

PI = math.pi


# ----- parameters -----

def test_params_scale_factors():
    assert (ClassParams(0, 0, 0, 0).tau, ClassParams(0, 0, 0, 0).sigma) == (1.0, 1.0)
    p = ClassParams(0.5, 0.25, 0, 0)
    assert (p.tau, p.sigma) == (1.5, 2.25)
    p = ClassParams(1, 1, 0, 0)
    assert (p.tau, p.sigma) == (3.0, 7.0)


@pytest.mark.parametrize(
    "bad",
    [
        dict(lam=0.2, delta=0.3, alpha=0, beta=0),  # delta > lam
        dict(lam=1.1, delta=0, alpha=0, beta=0),
        dict(lam=0, delta=-0.1, alpha=0, beta=0),
        dict(lam=0, delta=0, alpha=1.0, beta=0),
        dict(lam=0, delta=0, alpha=0, beta=1.0),
        dict(lam=0, delta=0, alpha=-0.2, beta=0),
        dict(lam=float("nan"), delta=0, alpha=0, beta=0),
    ],
)
def test_params_validation(bad):
    with pytest.raises(DomainError):
        ClassParams(**bad)


# ----- measures -----

def test_measure_renormalizes_tiny_drift():
    m = HerglotzMeasure(((0.5 + 2e-10, 0.0), (0.5, 1.0)))
    assert math.isclose(sum(w for w, _ in m.atoms), 1.0, abs_tol=1e-15)


def test_measure_rejects_large_drift():
    with pytest.raises(DomainError):
        HerglotzMeasure(((0.6, 0.0), (0.5, 1.0)))


def test_measure_rejects_bad_atoms():
    with pytest.raises(DomainError):
        HerglotzMeasure(((1.0, float("inf")),))
    with pytest.raises(DomainError):
        HerglotzMeasure(((-0.2, 0.0), (1.2, 1.0)))
    with pytest.raises(DomainError):
        HerglotzMeasure(tuple((0.2, 0.0) for _ in range(5)))
    with pytest.raises(DomainError):
        HerglotzMeasure(())


def test_measure_wraps_angles():
    m = HerglotzMeasure(((1.0, -PI),))
    assert abs(m.atoms[0][1] - PI) < 1e-12
    m = HerglotzMeasure(((1.0, 2 * PI),))
    assert m.atoms[0][1] == 0.0


# ----- Herglotz coefficients -----

def test_atom_at_zero_gives_all_twos():
    c = herglotz_coeffs(atom_measure(0.0), 5)
    np.testing.assert_allclose(c, [1, 2, 2, 2, 2, 2], atol=1e-15)


def test_atom_at_quarter_turn():
    # (1 + iz)/(1 - iz): c_1 = 2i, c_2 = -2
    c = herglotz_coeffs(atom_measure(PI / 2), 2)
    assert abs(c[1] - 2j) < 1e-15 and abs(c[2] + 2) < 1e-15


def test_two_atom_example():
    m = HerglotzMeasure(((2 / 3, 0.0), (1 / 3, PI)))
    c = herglotz_coeffs(m, 2)
    assert abs(c[1] - 2 / 3) < 1e-15 and abs(c[2] - 2) < 1e-15


def test_coefficient_modulus_capped_at_two():
    rng = np.random.default_rng(11)
    from fslab import sample_measure

    for _ in range(500):
        m = sample_measure(rng, 4)
        c = herglotz_coeffs(m, 8)
        assert c[0] == 1
        assert max(abs(v) for v in c[1:]) <= 2.0 + 1e-12


# ----- starlike factor -----

def test_starlike_koebe():
    q = herglotz_coeffs(atom_measure(0.0), 6)
    b = starlike_from_q(q, 0.0, 6)
    np.testing.assert_allclose(b, [0, 1, 2, 3, 4, 5, 6], atol=1e-12)


def test_starlike_low_order_closed_forms():
    # b_2 = 2(1-beta), b_3 = (1-beta)(3-2beta) for the extreme q
    q = herglotz_coeffs(atom_measure(0.0), 3)
    for beta in (0.0, 0.25, 0.5, 0.9):
        b = starlike_from_q(q, beta, 3)
        assert abs(b[2] - 2 * (1 - beta)) < 1e-14
        assert abs(b[3] - (1 - beta) * (3 - 2 * beta)) < 1e-14


def test_starlike_needs_enough_q_coefficients():
    with pytest.raises(ValueError):
        starlike_from_q((1.0, 2.0), 0.0, 3)


# ----- denominators -----

def test_denominators_examples():
    p = ClassParams(0, 0, 0, 0)
    assert denominators(p, 4) == (0.0, 1.0, 2.0, 3.0, 4.0)
    p = ClassParams(0.5, 0.25, 0, 0)
    d = denominators(p, 3)
    assert d[1] == 1.0 and d[2] == 3.0 and d[3] == 6.75
    assert d[2] == 2 * p.tau and d[3] == 3 * p.sigma


def test_denominators_positive_everywhere():
    rng = np.random.default_rng(3)
    for _ in range(200):
        d = denominators(random_params(rng), 8)
        assert all(v > 0 for v in d[1:])


# ----- member construction -----

def test_koebe_member():
    p0 = ClassParams(0, 0, 0, 0)
    m = member_from_pq(p0, atom_measure(), atom_measure())
    np.testing.assert_allclose(m.a[:5], [0, 1, 2, 3, 4], atol=1e-12)
    assert abs(fs_functional(m, 1.0) + 1.0) < 1e-14


def test_opposed_atoms_kill_a2():
    half = HerglotzMeasure(((0.5, 0.0), (0.5, PI)))
    for params in (ClassParams(0, 0, 0, 0), ClassParams(0.7, 0.2, 0.3, 0.6)):
        m = member_from_pq(params, half, half)
        assert abs(m.a2) < 1e-14
        want = 3 - 2 * params.alpha - params.beta
        assert abs(3 * params.sigma * m.a3 - want) < 1e-12


def test_member_recurrence_identities():
    rng = np.random.default_rng(5)
    for _ in range(200):
        m = random_member(rng)
        par = m.params
        lhs2 = 2 * par.tau * m.a2
        rhs2 = m.b[2] + (1 - par.alpha) * m.c[1]
        assert abs(lhs2 - rhs2) < 1e-12
        lhs3 = 3 * par.sigma * m.a3
        rhs3 = m.b[3] + (1 - par.alpha) * m.b[2] * m.c[1] + (1 - par.alpha) * m.c[2]
        assert abs(lhs3 - rhs3) < 1e-12


def test_member_order_floor():
    with pytest.raises(ValueError):
        member_from_pq(ClassParams(0, 0, 0, 0), atom_measure(), atom_measure(), 2)


# ----- rotation -----

def test_rotate_tail_coefficients():
    got = rotate((1, 2, 3), PI)
    np.testing.assert_allclose(got, [1, -2, 3], atol=1e-15)


def test_rotate_composes():
    rng = np.random.default_rng(9)
    tail = tuple(rng.standard_normal(5) + 1j * rng.standard_normal(5))
    one = rotate(rotate(tail, 0.4), 1.1)
    two = rotate(tail, 1.5)
    np.testing.assert_allclose(one, two, atol=1e-13)


def test_rotated_koebe_functional():
    p0 = ClassParams(0, 0, 0, 0)
    m = member_from_pq(p0, atom_measure(), atom_measure())
    r = rotate_member(m, PI / 4)
    # phi_mu picks up e^{2 i theta}: at theta = pi/4, mu = 1 the -1 becomes -i
    assert abs(fs_functional(r, 1.0) + 1j) < 1e-12


def test_rotate_member_matches_coefficient_rule():
    rng = np.random.default_rng(13)
    for _ in range(25):
        m = random_member(rng)
        theta = float(rng.uniform(0, 2 * PI))
        r = rotate_member(m, theta)
        want = rotate(m.a[1:], theta)
        np.testing.assert_allclose(r.a[1:], want, atol=1e-10)


def test_shift_measure_wraps():
    m = shift_measure(atom_measure(PI), 1.5 * PI)
    assert abs(m.atoms[0][1] - PI / 2) < 1e-12


# ----- membership spot check -----

def test_spotcheck_accepts_constructed_members():
    rng = np.random.default_rng(21)
    for _ in range(40):
        m = random_member(rng)
        assert membership_spotcheck(m, radius=0.3, grid=32)
        assert membership_spotcheck(m, radius=0.5, grid=32)


def _fake_member_with_constant_c(value: float, order: int) -> ClassMember:
    # raw coefficient data that no probability measure on the circle produces
    params = ClassParams(0, 0, 0, 0)
    q = atom_measure()
    c = (1.0,) + (complex(value),) * order
    qk = herglotz_coeffs(q, order)
    b = starlike_from_q(qk, params.beta, order)
    d = denominators(params, order)
    one = PowerSeries((1.0,) + (0.0,) * order)
    mix = ps_linear(params.alpha, one, 1 - params.alpha, PowerSeries(c))
    num = ps_mul(PowerSeries(b), mix)
    a = (0j, 1 + 0j) + tuple(num.coeffs[k] / d[k] for k in range(2, order + 1))
    return ClassMember(params, q, q, c, qk, b, a, d)


def test_spotcheck_rejects_non_measure_data():
    # c_k = 3 for every k puts the ratio below alpha on the negative real
    # axis. The dip is only visible when the reconstructed ratio has odd
    # truncation order (even orders leave the alternating tail marginally
    # positive); the divide-by-g step eats one order, so build at 10 to
    # evaluate the order-9 truncation at radius 0.5.
    fake = _fake_member_with_constant_c(3.0, order=10)
    assert membership_spotcheck(fake, radius=0.5, grid=64) is False
    assert membership_spotcheck(_fake_member_with_constant_c(3.0, 9), 0.5, 64)


def test_spotcheck_radius_validation():
    m = member_from_pq(ClassParams(0, 0, 0, 0), atom_measure(), atom_measure())
    with pytest.raises(ValueError):
        membership_spotcheck(m, radius=0.6)
    with pytest.raises(ValueError):
        membership_spotcheck(m, radius=0.0)
    with pytest.raises(ValueError):
        membership_spotcheck(m, grid=4)
