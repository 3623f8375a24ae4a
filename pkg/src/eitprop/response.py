"""Analytic weak-probe response of the pumped Lambda medium.

Everything here is a closed-form function of the probe detuning
``delta_p = omega_31 - omega``: susceptibility, complex index, slab
transmission, group index and its dispersion. Derivatives with respect to
the optical frequency are taken analytically; note ``d/domega = -d/ddelta``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .params import (
    C_LIGHT,
    TWO_PI,
    AtomParams,
    DriveParams,
    InvalidParameterError,
    Populations,
    derive_dephasings,
)


class ResonatorSingularityError(ArithmeticError):
    """The slab-transmission denominator vanished."""


@dataclass(frozen=True)
class MediumResponse:
    """Snapshot of everything the analytic susceptibility depends on."""

    params: AtomParams
    drive: DriveParams
    populations: Populations
    gamma1: float
    gamma3: float

    def __post_init__(self) -> None:
        if not self.gamma3 > 0:
            raise InvalidParameterError("gamma3 must be > 0 for the analytic susceptibility")
        if self.gamma1 < 0:
            raise InvalidParameterError("gamma1 must be >= 0")
        if self.drive.delta_P != 0:
            raise InvalidParameterError("analytic susceptibility assumes a resonant pump (delta_P = 0)")

    @classmethod
    def from_drive(
        cls, params: AtomParams, drive: DriveParams, populations: Populations
    ) -> MediumResponse:
        gamma1, gamma3 = derive_dephasings(params, drive)
        return cls(params, drive, populations, gamma1, gamma3)

    def with_gamma1(self, gamma1: float) -> MediumResponse:
        return replace(self, gamma1=gamma1)

    def with_populations(self, populations: Populations) -> MediumResponse:
        return replace(self, populations=populations)

    def with_density(self, scaled_density: float) -> MediumResponse:
        return replace(self, params=self.params.with_density(scaled_density))

    @property
    def omega_31(self) -> float:
        return self.params.omega_31


def _chi_parts(delta_p, resp: MediumResponse):
    """Numerator and denominator polynomials of the susceptibility and their delta derivatives."""
    d = np.asarray(delta_p, dtype=float)
    g1, g3 = resp.gamma1, resp.gamma3
    pop = resp.populations
    pump_sq = (0.5 * resp.drive.omega_P) ** 2
    amp = 3.0 * np.pi * resp.params.scaled_density * resp.params.gamma_31
    if pump_sq == 0:
        # without the pump the ground-coherence factor cancels (0/0 at delta = 0, gamma1 = 0)
        ones = np.ones_like(d, dtype=complex)
        return amp, (pop.n1 - pop.n3) * ones, 0 * ones, d - 1j * g3, ones, 0 * ones
    num = (d - 1j * g1) * (pop.n1 - pop.n3) - (1j / g3) * pump_sq * (pop.n3 - pop.n2)
    num_d = (pop.n1 - pop.n3) + 0j * d
    den = (d - 1j * g3) * (d - 1j * g1) - pump_sq
    den_d = 2.0 * d - 1j * (g1 + g3)
    return amp, num, num_d, den, den_d, 2.0 + 0j * d


def chi_analytic(delta_p, resp: MediumResponse):
    """First-order probe susceptibility of the pumped Lambda system."""
    amp, num, _, den, _, _ = _chi_parts(delta_p, resp)
    return amp * num / den


def chi_derivatives(delta_p, resp: MediumResponse):
    """``(chi, dchi/ddelta, d2chi/ddelta2)``."""
    amp, num, num_d, den, den_d, den_dd = _chi_parts(delta_p, resp)
    chi = num / den
    first = (num_d * den - num * den_d) / den**2
    # numerator is at most linear in delta
    second = -num * den_dd / den**2 - 2.0 * den_d * first / den
    return amp * chi, amp * first, amp * second


def refractive_index(chi):
    """Principal square root of ``1 + chi``."""
    arg = 1.0 + np.asarray(chi, dtype=complex)
    if np.any((arg.imag == 0) & (arg.real <= 0)):
        raise InvalidParameterError("1 + chi lies on the branch cut of the square root")
    return np.sqrt(arg)


def _reduced_phase(omega, d: float):
    # 2 omega d / c is ~1e6 rad; reduce it before it meets the small (n-1) term
    return np.mod(2.0 * np.asarray(omega, dtype=float) * d / C_LIGHT, TWO_PI)


def transmission(n, omega, d: float):
    """Complex amplitude transmission of a slab relative to vacuum, and ``|T|**2``.

    ``T = 4n / ((n+1)^2 - (n-1)^2 exp(2 i n omega d / c)) * exp(i (n-1) omega d / c)``.
    """
    n = np.asarray(n, dtype=complex)
    omega = np.asarray(omega, dtype=float)
    k0d = omega * d / C_LIGHT
    slab = np.exp(2j * (n - 1.0) * k0d + 1j * _reduced_phase(omega, d))
    denom = (n + 1.0) ** 2 - (n - 1.0) ** 2 * slab
    if np.any(np.abs(denom) < 1e-300):
        raise ResonatorSingularityError("slab transmission denominator vanished")
    t = 4.0 * n / denom * np.exp(1j * (n - 1.0) * k0d)
    return t, np.abs(t) ** 2


def medium_transmission(delta_p, resp: MediumResponse):
    """``(T, G_T)`` of the cell at probe detuning ``delta_p``."""
    n = refractive_index(chi_analytic(delta_p, resp))
    omega = resp.omega_31 - np.asarray(delta_p, dtype=float)
    return transmission(n, omega, resp.params.cell_length)


def index_derivatives(delta_p, resp: MediumResponse):
    """``(n, dn/domega, d2n/domega2)`` from the closed-form susceptibility."""
    chi, chi_d, chi_dd = chi_derivatives(delta_p, resp)
    n = refractive_index(chi)
    chi_w, chi_ww = -chi_d, chi_dd
    n_w = chi_w / (2.0 * n)
    n_ww = chi_ww / (2.0 * n) - chi_w**2 / (4.0 * n**3)
    return n, n_w, n_ww


def group_index(delta_p, resp: MediumResponse):
    """``eta + omega * deta/domega``, i.e. ``c / v_g``."""
    n, n_w, _ = index_derivatives(delta_p, resp)
    omega = resp.omega_31 - np.asarray(delta_p, dtype=float)
    return n.real + omega * n_w.real


def inverse_group_velocity(delta_p, resp: MediumResponse):
    return group_index(delta_p, resp) / C_LIGHT


def group_velocity(delta_p, resp: MediumResponse):
    """``c / (eta + omega deta/domega)``; a vanishing denominator gives signed infinity."""
    ng = np.asarray(group_index(delta_p, resp))
    with np.errstate(divide="ignore"):
        vg = np.where(ng == 0, np.copysign(np.inf, ng), C_LIGHT / np.where(ng == 0, 1.0, ng))
    return vg if vg.ndim else float(vg)


def dispersion_D(delta_p, resp: MediumResponse):
    """Group-velocity dispersion function ``Gamma_31 (omega eta'' + 2 eta') / c`` in (m/s)^-1."""
    _, n_w, n_ww = index_derivatives(delta_p, resp)
    omega = resp.omega_31 - np.asarray(delta_p, dtype=float)
    return resp.params.gamma_31 * (omega * n_ww.real + 2.0 * n_w.real) / C_LIGHT


def group_velocity_dispersion(delta_p, resp: MediumResponse):
    """``d_g = -(v_g^2 / c) (omega eta'' + 2 eta')``, in m/s per rad/s."""
    _, n_w, n_ww = index_derivatives(delta_p, resp)
    omega = resp.omega_31 - np.asarray(delta_p, dtype=float)
    vg = C_LIGHT / group_index(delta_p, resp)
    return -(vg**2) / C_LIGHT * (omega * n_ww.real + 2.0 * n_w.real)


def zero_dispersion_roots(
    resp: MediumResponse,
    lo: float,
    hi: float,
    samples: int = 4001,
    xtol: float | None = None,
) -> list[float]:
    """Sorted probe detunings in ``[lo, hi]`` where ``dispersion_D`` changes sign."""
    if not hi > lo:
        raise InvalidParameterError("search window must have hi > lo")
    xtol = 1e-9 * resp.gamma3 if xtol is None else xtol
    grid = np.linspace(lo, hi, samples)
    values = dispersion_D(grid, resp)
    roots = []
    for k in range(samples - 1):
        a, b = values[k], values[k + 1]
        if a == 0:
            # an isolated exact zero counts only if D changes sign across it
            if 0 < k and values[k - 1] * b < 0:
                roots.append(float(grid[k]))
        elif a * b < 0:
            roots.append(
                brentq(lambda x: float(dispersion_D(x, resp)), grid[k], grid[k + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)
            )
    return sorted(roots)


def anomalous_carrier(resp: MediumResponse, window: float | None = None) -> float | None:
    """Detuning of the most negative minimum of ``1/v_g``, or None without anomalous dispersion.

    Candidates are the zeros of the dispersion function; with the pump on
    resonance the two minima are mirror images and the deeper one (they
    differ only at order ``delta / omega_31``) is returned.
    """
    window = 1.5 * resp.gamma3 if window is None else window
    roots = zero_dispersion_roots(resp, -window, window)
    best, best_ng = None, 1.0
    for r in roots:
        ng = float(group_index(r, resp))
        if ng < best_ng:
            best, best_ng = r, ng
    return best


def centerline_gain(resp: MediumResponse) -> float:
    """Percentage probe gain ``100 (G_T - 1)`` at two-photon resonance."""
    _, g = medium_transmission(0.0, resp)
    return 100.0 * (float(g) - 1.0)


def spectra(delta_p, resp: MediumResponse) -> dict[str, np.ndarray]:
    """All sampled response quantities on a detuning grid."""
    delta_p = np.asarray(delta_p, dtype=float)
    chi = chi_analytic(delta_p, resp)
    n = refractive_index(chi)
    t, g = medium_transmission(delta_p, resp)
    return {
        "delta_p": delta_p,
        "chi": chi,
        "n": n,
        "T": t,
        "G_T": g,
        "inv_vg": inverse_group_velocity(delta_p, resp),
        "D": dispersion_D(delta_p, resp),
    }
