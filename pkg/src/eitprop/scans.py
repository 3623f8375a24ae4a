"""Parameter sweeps and density calibration.

Two sweep modes exist. The pinned mode varies the ground dephasing
``gamma1`` directly with populations held fixed. The self-consistent mode
varies the loss out of ``|1>`` and takes both the populations and
``gamma1`` from the Bloch steady state.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq

from . import bloch
from .params import InvalidParameterError, Populations
from .pulse import GaussianPulse, PropagationGridError, delay_and_gain_at
from .response import MediumResponse, anomalous_carrier, centerline_gain, transmission


class CalibrationError(RuntimeError):
    """The calibration target cannot be reached in the search bracket."""


def gain_vs_dephasing(resp: MediumResponse, gamma1_grid) -> np.ndarray:
    """Rows of ``(gamma1/gamma3, percent gain at line centre)`` with populations pinned."""
    grid = np.asarray(gamma1_grid, dtype=float).ravel()
    gains = [centerline_gain(resp.with_gamma1(g1)) for g1 in grid]
    return np.column_stack([grid / resp.gamma3, gains]) if grid.size else np.empty((0, 2))


def gain_vs_loss(
    resp: MediumResponse,
    loss_grid,
    repump: bloch.RepumpModel,
) -> np.ndarray:
    """Self-consistent centre-line gain versus loss from ``|1>``.

    Rows are ``(loss/gamma3, gamma1/gamma3, n2, percent gain)``; the gain
    uses the numerically extracted susceptibility of the full Bloch model.
    """
    params = resp.params
    rows = []
    for loss in np.asarray(loss_grid, dtype=float).ravel():
        drive = repump.apply(params, resp.drive, loss)
        gamma1 = 0.5 * (params.gamma_1out + loss)
        try:
            pops = bloch.ground_split_at(params, drive)
            chi = bloch.weak_probe_chi_numeric(params, drive, 0.0)
        except bloch.DegenerateSteadyStateError:
            rows.append((loss / resp.gamma3, gamma1 / resp.gamma3, np.nan, np.nan))
            continue
        n = np.sqrt(1.0 + chi)
        _, g = transmission(n, params.omega_31, params.cell_length)
        rows.append((loss / resp.gamma3, gamma1 / resp.gamma3, pops.n2, 100.0 * (float(g) - 1.0)))
    return np.array(rows, dtype=float).reshape(-1, 4)


def delay_advance_vs_dephasing(
    resp: MediumResponse,
    gamma1_grid,
    pulse: GaussianPulse | None = None,
) -> np.ndarray:
    """Rows of ``(gamma1/gamma3, resonant delay m, anomalous delay m, anomalous detuning/gamma3)``.

    The anomalous carrier is relocated to the negative minimum of ``1/v_g``
    at each point; if that minimum is gone the row holds NaN there.
    """
    pulse = pulse or GaussianPulse()
    rows = []
    for g1 in np.asarray(gamma1_grid, dtype=float).ravel():
        r = resp.with_gamma1(g1)
        resonant, _ = delay_and_gain_at(r, 0.0, pulse)
        carrier = anomalous_carrier(r)
        advance = np.nan
        if carrier is not None:
            try:
                advance, _ = delay_and_gain_at(r, carrier, pulse)
            except PropagationGridError:
                pass
        rows.append((g1 / resp.gamma3, resonant, advance, np.nan if carrier is None else carrier / resp.gamma3))
    return np.array(rows, dtype=float).reshape(-1, 4)


def calibrate_density(
    target_delay: float,
    resp: MediumResponse,
    pulse: GaussianPulse | None = None,
    rtol: float = 1e-10,
) -> float:
    """Scaled density giving a resonant centre-of-mass delay of ``target_delay`` metres.

    ``resp`` should describe pure EIT (all population in ``|1>``); only its
    density is varied. The delay grows monotonically with density.
    """
    if target_delay < 0:
        raise InvalidParameterError("target_delay must be >= 0")
    if target_delay == 0:
        return 0.0
    if resp.populations != Populations(1.0, 0.0, 0.0):
        raise InvalidParameterError("density calibration expects all population in |1>")
    pulse = pulse or GaussianPulse()

    def residual(density: float) -> float:
        return delay_and_gain_at(resp.with_density(density), 0.0, pulse)[0] - target_delay

    # delay is close to linear in density; start from a unit-density probe
    probe = 1e-9
    slope = (residual(probe) + target_delay) / probe
    if not slope > 0:
        raise CalibrationError("resonant delay does not increase with density")
    lo, hi = 0.5 * target_delay / slope, 2.0 * target_delay / slope
    for _ in range(60):
        if residual(lo) < 0 < residual(hi):
            break
        lo, hi = 0.5 * lo, 2.0 * hi
    else:
        raise CalibrationError(f"target delay {target_delay} m not bracketed")
    return float(brentq(residual, lo, hi, rtol=rtol, xtol=1e-30))
