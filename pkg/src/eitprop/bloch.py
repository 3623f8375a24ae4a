"""Open-system optical Bloch equations for the Lambda atom plus a reservoir.

The density matrix lives on the basis ``{|0>, |1>, |2>, |3>}`` where ``|0>``
is a reservoir. Density matrices are vectorized column-first
(``vec(rho)[i + 4 j] = rho[i, j]``), so a superoperator acting on
``X -> A X B`` is ``kron(B.T, A)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .params import AtomParams, DriveParams, InvalidParameterError, Populations

DIM = 4
RESERVOIR, LEVEL1, LEVEL2, LEVEL3 = range(DIM)

_EYE = np.eye(DIM)


class DegenerateSteadyStateError(RuntimeError):
    """The generator has more than one stationary state."""


class PerturbativityWarning(UserWarning):
    """The probe is strong enough that the response is no longer linear."""


def _ket_bra(i: int, j: int) -> np.ndarray:
    m = np.zeros((DIM, DIM), dtype=complex)
    m[i, j] = 1.0
    return m


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v).reshape(DIM, DIM, order="F")


def trace_functional() -> np.ndarray:
    """Row vector ``t`` with ``t @ vec(rho) == trace(rho)``."""
    return vec(_EYE)


def hamiltonian(drive: DriveParams, delta_p: float) -> np.ndarray:
    """Rotating-frame Hamiltonian (units of hbar, rad/s).

    Ground-state energies are ``-delta_p`` and ``-delta_P`` so that the
    two-photon resonance sits at ``delta_p == delta_P``.
    """
    h = -delta_p * _ket_bra(LEVEL1, LEVEL1) - drive.delta_P * _ket_bra(LEVEL2, LEVEL2)
    h -= 0.5 * drive.omega_p_rabi * (_ket_bra(LEVEL1, LEVEL3) + _ket_bra(LEVEL3, LEVEL1))
    h -= 0.5 * drive.omega_P * (_ket_bra(LEVEL2, LEVEL3) + _ket_bra(LEVEL3, LEVEL2))
    return h


def jump_operators(params: AtomParams, drive: DriveParams) -> list[np.ndarray]:
    channels = [
        (params.gamma_31, LEVEL1, LEVEL3),
        (params.gamma_32, LEVEL2, LEVEL3),
        (params.gamma_3out, RESERVOIR, LEVEL3),
        (params.gamma_1out + drive.loss_1, RESERVOIR, LEVEL1),
        (drive.repump_1, LEVEL1, RESERVOIR),
        (drive.repump_2, LEVEL2, RESERVOIR),
    ]
    return [np.sqrt(rate) * _ket_bra(dst, src) for rate, dst, src in channels if rate > 0]


def build_generator(params: AtomParams, drive: DriveParams, delta_p: float) -> np.ndarray:
    """16x16 Lindblad generator acting on ``vec(rho)``."""
    h = hamiltonian(drive, delta_p)
    gen = -1j * (np.kron(_EYE, h) - np.kron(h.T, _EYE))
    for c in jump_operators(params, drive):
        cdc = c.conj().T @ c
        gen += np.kron(c.conj(), c) - 0.5 * np.kron(_EYE, cdc) - 0.5 * np.kron(cdc.T, _EYE)
    return gen


def steady_state(gen: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    """Unit-trace null vector of ``gen`` as a 4x4 density matrix.

    One redundant population row is replaced by the trace constraint and the
    resulting bordered system is solved directly.
    """
    gen = np.asarray(gen, dtype=complex)
    sv = np.linalg.svd(gen, compute_uv=False)
    scale = sv[0] if sv[0] > 0 else 1.0
    if sv[-2] <= rtol * scale:
        raise DegenerateSteadyStateError(
            "generator null space is not one-dimensional "
            f"(smallest singular values {sv[-2]:.3e}, {sv[-1]:.3e})"
        )
    a = gen.copy()
    b = np.zeros(DIM * DIM, dtype=complex)
    a[0, :] = trace_functional()
    b[0] = 1.0
    return unvec(np.linalg.solve(a, b))


def normalized_populations(rho: np.ndarray) -> Populations:
    """Populations of ``|1>, |2>, |3>`` divided by their sum (reservoir excluded)."""
    p = np.clip(np.real(np.diag(rho)), 0.0, None)
    active = p[LEVEL1:].sum()
    if active <= 0:
        raise DegenerateSteadyStateError("no population left in the optically active levels")
    n1, n2, n3 = p[LEVEL1:] / active
    return Populations(float(n1), float(n2), float(n3))


@dataclass(frozen=True)
class RepumpModel:
    """Rule setting reservoir repump rates from the loss out of ``|1>``.

    ``repump_1 = scale * (gamma_1out + loss_1)`` and
    ``repump_2 = balance * repump_1``. Only ``balance`` affects the
    normalized ground-state split; ``scale`` sets how much population waits
    in the reservoir.
    """

    scale: float = 10.0
    balance: float = 1.0

    def __post_init__(self) -> None:
        if self.scale <= 0 or self.balance < 0:
            raise InvalidParameterError("repump scale must be > 0 and balance >= 0")

    def apply(self, params: AtomParams, drive: DriveParams, loss_1: float | None = None) -> DriveParams:
        loss = drive.loss_1 if loss_1 is None else loss_1
        r1 = self.scale * (params.gamma_1out + loss)
        return drive.replace(loss_1=loss, repump_1=r1, repump_2=self.balance * r1)


def ground_split_at(params: AtomParams, drive: DriveParams) -> Populations:
    """Normalized steady-state populations with the probe switched off."""
    d0 = drive.replace(omega_p_rabi=0.0)
    return normalized_populations(steady_state(build_generator(params, d0, 0.0)))


def calibrate_repump_balance(
    params: AtomParams,
    drive: DriveParams,
    target_n2: float,
    scale: float = 10.0,
) -> RepumpModel:
    """Find the repump balance giving ``n2 == target_n2`` at ``drive.loss_1``."""
    from scipy.optimize import brentq

    def residual(log_balance: float) -> float:
        model = RepumpModel(scale=scale, balance=float(np.exp(log_balance)))
        return ground_split_at(params, model.apply(params, drive)).n2 - target_n2

    lo, hi = np.log(1e-4), np.log(1e4)
    if residual(lo) * residual(hi) > 0:
        raise InvalidParameterError(f"n2 = {target_n2} is not reachable by repump balance")
    log_b = brentq(residual, lo, hi, xtol=1e-14, rtol=1e-14)
    return RepumpModel(scale=scale, balance=float(np.exp(log_b)))


def population_scan(
    params: AtomParams,
    drive: DriveParams,
    losses,
    repump: RepumpModel | None = None,
) -> np.ndarray:
    """Steady-state population ratios versus loss from ``|1>``.

    Returns an ``(len(losses), 3)`` array of ``(loss_1, n2/n1, n3/n1)``.
    Points whose steady state is degenerate are filled with NaN.
    """
    repump = repump or RepumpModel()
    losses = np.asarray(losses, dtype=float).ravel()
    table = np.full((losses.size, 3), np.nan)
    table[:, 0] = losses
    for row, loss in enumerate(losses):
        try:
            pops = ground_split_at(params, repump.apply(params, drive, loss))
        except (DegenerateSteadyStateError, InvalidParameterError, np.linalg.LinAlgError):
            continue
        if pops.n1 > 0:
            table[row, 1] = pops.n2 / pops.n1
            table[row, 2] = pops.n3 / pops.n1
    return table


def _chi_from_rho(rho: np.ndarray, params: AtomParams, omega_p: float) -> complex:
    active = 1.0 - float(np.real(rho[RESERVOIR, RESERVOIR]))
    prefactor = 3.0 * np.pi * params.scaled_density * params.gamma_31
    return prefactor * 2.0 * rho[LEVEL3, LEVEL1] / (omega_p * active)


def default_probe_rabi(params: AtomParams, drive: DriveParams) -> float:
    if drive.omega_p_rabi > 0:
        return drive.omega_p_rabi
    ref = drive.omega_P if drive.omega_P > 0 else params.gamma3
    return 1e-3 * ref


def weak_probe_chi_numeric(
    params: AtomParams,
    drive: DriveParams,
    delta_p,
    check_linearity: bool = False,
):
    """Probe susceptibility from the full steady-state density matrix.

    ``chi = 3 pi N_p Gamma_31 * 2 rho_31 / (Omega_p * (1 - rho_00))``; the
    reservoir is excluded so the normalization matches the analytic
    expression written with normalized populations. With
    ``check_linearity`` the solve is repeated at half the probe Rabi
    frequency and a :class:`PerturbativityWarning` is issued when the two
    differ by more than 0.1 %.
    """
    omega_p = default_probe_rabi(params, drive)
    probe_drive = drive.replace(omega_p_rabi=omega_p)
    half_drive = drive.replace(omega_p_rabi=0.5 * omega_p)
    scalar = np.ndim(delta_p) == 0
    deltas = np.atleast_1d(np.asarray(delta_p, dtype=float))
    out = np.empty(deltas.shape, dtype=complex)
    worst = 0.0
    for k, d in enumerate(deltas):
        rho = steady_state(build_generator(params, probe_drive, d))
        out[k] = _chi_from_rho(rho, params, omega_p)
        if check_linearity:
            rho_half = steady_state(build_generator(params, half_drive, d))
            half = _chi_from_rho(rho_half, params, 0.5 * omega_p)
            if abs(out[k]) > 0:
                worst = max(worst, abs(out[k] - half) / abs(out[k]))
    if worst > 1e-3:
        warnings.warn(
            f"probe response changed by {100 * worst:.3g}% when Omega_p was halved",
            PerturbativityWarning,
            stacklevel=2,
        )
    return complex(out[0]) if scalar else out
