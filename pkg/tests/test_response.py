import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eitprop.params import C_LIGHT, TWO_PI, AtomParams, DriveParams, InvalidParameterError, Populations
from eitprop.response import (
    MediumResponse,
    anomalous_carrier,
    centerline_gain,
    chi_analytic,
    chi_derivatives,
    dispersion_D,
    group_index,
    group_velocity,
    group_velocity_dispersion,
    index_derivatives,
    inverse_group_velocity,
    medium_transmission,
    refractive_index,
    transmission,
    zero_dispersion_roots,
)

from conftest import vacuum_response

G3 = TWO_PI * 5.75e6
NP = 1e-7
AMP = 3 * np.pi * NP * G3


def make(n2=0.0, gamma1=0.0, omega_P=0.8, density=NP, n3=0.0):
    atom = AtomParams(G3, G3, scaled_density=density)
    pops = Populations(1.0 - n2 - n3, n2, n3)
    return MediumResponse(atom, DriveParams(omega_P=omega_P * G3), pops, gamma1 * G3, G3)


def test_zero_density_gives_zero_chi():
    np.testing.assert_array_equal(chi_analytic(np.linspace(-3, 3, 11) * G3, make(density=0.0)), 0)


def test_two_level_reduction():
    assert chi_analytic(0.0, make(omega_P=0.0)) == pytest.approx(1j * AMP / G3, rel=1e-14)


@pytest.mark.parametrize("n2", [0.0, 0.1, 0.3])
def test_pure_gain_term_at_resonance(n2):
    chi = chi_analytic(0.0, make(n2=n2, gamma1=0.0))
    assert chi == pytest.approx(-1j * AMP * n2 / G3, rel=1e-13, abs=1e-30)


def test_perfect_eit_point_is_exactly_zero():
    assert chi_analytic(0.0, make()) == 0


def test_gamma3_must_be_positive():
    with pytest.raises(InvalidParameterError):
        MediumResponse(AtomParams(0.0, 0.0), DriveParams(), Populations(1.0, 0.0), 0.0, 0.0)


def test_detuned_pump_rejected():
    with pytest.raises(InvalidParameterError):
        MediumResponse.from_drive(AtomParams(G3, G3), DriveParams(delta_P=1.0), Populations(1.0, 0.0))


@settings(deadline=None)
@given(
    delta=st.floats(0.0, 5.0),
    n2=st.floats(0.0, 1.0),
    gamma1=st.floats(0.0, 0.5),
    omega_P=st.floats(0.0, 1.5),
)
def test_parity(delta, n2, gamma1, omega_P):
    r = make(n2=n2, gamma1=gamma1, omega_P=omega_P)
    plus = chi_analytic(delta * G3, r)
    minus = chi_analytic(-delta * G3, r)
    assert abs(minus + np.conj(plus)) <= 4 * np.finfo(float).eps * abs(plus)


def test_refractive_index_examples():
    assert refractive_index(0.0) == 1.0
    chi = 2e-4j
    assert refractive_index(chi).imag == pytest.approx(1e-4, rel=1e-7)
    with pytest.raises(InvalidParameterError):
        refractive_index(-2.0)


@given(st.floats(0, 1e-3), st.floats(0, TWO_PI))
def test_refractive_index_taylor_bound(mag, phase):
    chi = mag * np.exp(1j * phase)
    n = refractive_index(chi)
    assert abs(n - (1 + chi / 2)) <= abs(chi) ** 2 + 4 * np.finfo(float).eps
    assert n.real > 0


def test_vacuum_slab_transmits_fully():
    t, g = transmission(1.0 + 0j, 2.37e15, 0.1)
    assert t == 1.0 and g == 1.0


def test_slab_mega_phase_is_reduced():
    # (n-1)^2 e^{2 i n omega d / c} stays bounded and agrees with direct evaluation
    n = 1 + 1e-6 + 1e-7j
    omega, d = 2.37e15, 0.1
    t, _ = transmission(n, omega, d)
    direct = 4 * n / ((n + 1) ** 2 - (n - 1) ** 2 * np.exp(2j * n * omega * d / C_LIGHT)) * np.exp(
        1j * (n - 1) * omega * d / C_LIGHT
    )
    assert t == pytest.approx(direct, rel=1e-9)


def test_eit_line_centre_transparent(eit):
    assert 0.999 <= medium_transmission(0.0, eit)[1] <= 1.0


def test_population_in_second_ground_state_gives_gain(eit):
    r = eit.with_populations(Populations.ground_split(0.3))
    assert medium_transmission(0.0, r)[1] > 1.0


def test_vacuum_group_velocity_and_dispersion():
    r = vacuum_response()
    delta = np.linspace(-2, 2, 9) * G3
    np.testing.assert_allclose(group_velocity(delta, r), C_LIGHT, rtol=1e-15)
    np.testing.assert_array_equal(dispersion_D(delta, r), 0.0)
    assert zero_dispersion_roots(r, -1.5 * G3, 1.5 * G3) == []
    assert anomalous_carrier(r) is None


def _eta_minus_one(delta, r):
    chi = chi_analytic(delta, r)
    return (chi / (1 + np.sqrt(1 + chi))).real


@pytest.mark.parametrize("n2, gamma1", [(0.0, 1e-4), (0.3, 0.1), (0.3, 0.04), (0.5, 0.25)])
def test_index_derivatives_match_finite_differences(eit, n2, gamma1):
    r = eit.with_populations(Populations.ground_split(n2)).with_gamma1(gamma1 * G3)
    delta = np.linspace(-2, 2, 401) * G3
    _, n_w, n_ww = index_derivatives(delta, r)
    h1, h2 = 1e-6 * G3, 1e-4 * G3
    # d/domega = -d/ddelta
    fd1 = -(_eta_minus_one(delta + h1, r) - _eta_minus_one(delta - h1, r)) / (2 * h1)
    fd2 = (_eta_minus_one(delta + h2, r) - 2 * _eta_minus_one(delta, r) + _eta_minus_one(delta - h2, r)) / h2**2
    assert np.abs(n_w.real - fd1).max() < 1e-6 * np.abs(fd1).max()
    assert np.abs(n_ww.real - fd2).max() < 1e-4 * np.abs(fd2).max()


def test_chi_second_derivative_finite_difference():
    r = make(n2=0.3, gamma1=0.1)
    delta = np.linspace(-2, 2, 81) * G3
    _, d1, d2 = chi_derivatives(delta, r)
    h = 1e-4 * G3
    fd = (chi_derivatives(delta + h, r)[1] - chi_derivatives(delta - h, r)[1]) / (2 * h)
    assert np.abs(d2 - fd).max() < 1e-6 * np.abs(d2).max()


def test_dispersion_identity(awi):
    delta = np.linspace(-1.5, 1.5, 301) * G3
    vg = C_LIGHT / group_index(delta, awi)
    lhs = group_velocity_dispersion(delta, awi)
    rhs = -(vg**2) * dispersion_D(delta, awi) / awi.params.gamma_31
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=0)


@pytest.mark.parametrize("n2, gamma1", [(0.0, 1e-4), (0.3, 0.1)])
def test_dispersion_odd_and_inverse_vg_even(eit, n2, gamma1):
    r = eit.with_populations(Populations.ground_split(n2)).with_gamma1(gamma1 * G3)
    delta = np.linspace(0, 2, 201) * G3
    d_plus, d_minus = dispersion_D(delta, r), dispersion_D(-delta, r)
    assert np.abs(d_plus + d_minus).max() < 1e-6 * np.abs(d_plus).max()
    inv_p, inv_m = inverse_group_velocity(delta, r), inverse_group_velocity(-delta, r)
    assert np.abs(inv_p - inv_m).max() < 1e-6 * np.abs(inv_p).max()
    _, g_p = medium_transmission(delta, r)
    _, g_m = medium_transmission(-delta, r)
    # the square root mixes Re chi into Im n and omega = omega_31 - delta enters the
    # phase, so G_T is even only up to O(|chi|) and O(delta / omega_31)
    np.testing.assert_allclose(g_p, g_m, rtol=1e-6)
    assert abs(dispersion_D(0.0, r)) < 1e-6 * np.abs(d_plus).max()


@pytest.mark.parametrize("n2", [0.0, 0.1, 0.3, 0.6])
def test_three_symmetric_dispersion_zeros(eit, n2):
    r = eit.with_populations(Populations.ground_split(n2)).with_gamma1(0.05 * G3)
    roots = zero_dispersion_roots(r, -1.5 * G3, 1.5 * G3)
    assert len(roots) == 3
    assert abs(roots[1]) < 1e-6 * G3
    assert abs(roots[0] + roots[2]) < 1e-6 * G3


def test_roots_empty_when_no_sign_change(eit):
    assert zero_dispersion_roots(eit, 2.0 * G3, 2.5 * G3) == []


def test_anomalous_carrier_is_most_negative_inverse_vg(eit):
    carrier = anomalous_carrier(eit)
    grid = np.linspace(-1.5, 1.5, 30001) * G3
    ng = group_index(grid, eit)
    assert group_index(carrier, eit) <= ng.min() + 1e-9 * abs(ng.min())
    assert group_index(carrier, eit) < 0


def test_group_velocity_sign_infinity():
    r = vacuum_response()
    assert group_velocity(0.0, r) == pytest.approx(C_LIGHT)


def test_centerline_gain_examples(eit):
    assert centerline_gain(eit.with_density(0.0)) == 0.0
    assert centerline_gain(eit.with_gamma1(0.0)) <= 1e-12
    grid = np.linspace(0.0, 0.3, 31) * G3
    gains = [centerline_gain(eit.with_gamma1(g)) for g in grid]
    assert max(gains) <= 1e-12
