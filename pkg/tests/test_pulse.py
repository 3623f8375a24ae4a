import numpy as np
import pytest

from eitprop.params import TWO_PI, InvalidParameterError, Populations
from eitprop.pulse import (
    GaussianPulse,
    PropagationGridError,
    center_of_mass,
    delay_and_gain_at,
    propagate,
    spectral_delay,
)
from eitprop.response import anomalous_carrier, group_index, medium_transmission

from conftest import vacuum_response

G3 = TWO_PI * 5.75e6


def test_vacuum_medium_leaves_pulse_unchanged():
    pulse = GaussianPulse()
    result = propagate(pulse, vacuum_response())
    dt_as_length = 299_792_458.0 * pulse.dt
    assert abs(result.delay) < dt_as_length
    assert result.energy_gain == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(result.power_out, result.power_vac, atol=1e-12)


@pytest.mark.parametrize("which", ["eit", "awi"])
def test_narrowband_delay_matches_group_index(request, which):
    resp = request.getfixturevalue(which)
    delay, _ = delay_and_gain_at(resp, 0.0)
    expected = resp.params.cell_length * (group_index(0.0, resp) - 1.0)
    assert delay == pytest.approx(expected, rel=1e-2)


@pytest.mark.parametrize("which", ["eit", "awi"])
def test_energy_gain_matches_line_centre_transmission(request, which):
    resp = request.getfixturevalue(which)
    _, gain = delay_and_gain_at(resp, 0.0)
    assert gain == pytest.approx(float(medium_transmission(0.0, resp)[1]), rel=1e-2)


def test_time_and_spectral_delays_agree(awi):
    pulse = GaussianPulse()
    assert spectral_delay(pulse, awi) == pytest.approx(propagate(pulse, awi).delay, rel=1e-2)


def test_grid_refinement(eit, cfg):
    coarse = GaussianPulse(tau=cfg.pulse.tau, samples=2**13)
    fine = GaussianPulse(tau=cfg.pulse.tau, samples=2**14)
    for carrier in (0.0, anomalous_carrier(eit)):
        a = propagate(coarse.at(carrier), eit).delay
        b = propagate(fine.at(carrier), eit).delay
        assert a == pytest.approx(b, rel=1e-3)


def test_amplitude_linearity(awi):
    pulse = GaussianPulse()
    base = propagate(pulse, awi)

    class Scaled(GaussianPulse):
        def envelope(self, t):
            return 3.0 * super().envelope(t)

    scaled = propagate(Scaled(), awi)
    np.testing.assert_allclose(scaled.power_out, 9.0 * base.power_out, rtol=1e-10, atol=1e-14 * scaled.power_out.max())
    assert scaled.delay == pytest.approx(base.delay, rel=1e-12)


def test_center_of_mass():
    t = np.linspace(-12, 12, 4001)
    assert center_of_mass(t, np.exp(-((t - 1.25) ** 2))) == pytest.approx(1.25, rel=1e-10)


def test_window_too_small_is_detected(awi):
    with pytest.raises(PropagationGridError):
        propagate(GaussianPulse(tau=3.33e-6, window=4.0, samples=2**10), awi)


def test_pulse_validation():
    with pytest.raises(InvalidParameterError):
        GaussianPulse(samples=1000)
    with pytest.raises(InvalidParameterError):
        GaussianPulse(tau=0.0)


def test_default_pulse_is_long_compared_with_cell(cfg):
    assert cfg.pulse.length > 1e3 * cfg.atom.cell_length


def test_distance_axis(awi):
    result = propagate(GaussianPulse(), awi)
    np.testing.assert_allclose(result.distance, 299_792_458.0 * result.time)
    assert np.all(result.power_out >= 0) and result.power_vac.sum() > 0


def test_anomalous_pulse_is_advanced_and_absorbed(eit):
    delay, gain = delay_and_gain_at(eit, anomalous_carrier(eit))
    assert delay < 0 and gain < 1


def test_second_ground_population_reduces_anomalous_absorption(eit):
    awi_like = eit.with_populations(Populations.ground_split(0.3))
    _, g_eit = delay_and_gain_at(eit, anomalous_carrier(eit))
    _, g_awi = delay_and_gain_at(awi_like, anomalous_carrier(awi_like))
    assert g_awi > g_eit
