"""Parameter types for the pumped Lambda system.

All rates and detunings are angular frequencies in rad/s. Lengths are in
metres. Level labels follow the usual Lambda convention: ``|1>`` is the
probe ground state, ``|2>`` the pump ground state and ``|3>`` the shared
excited state. A fourth reservoir level ``|0>`` collects population lost
from the system.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

C_LIGHT = 299_792_458.0
RB87_D1_WAVELENGTH = 794.978851156e-9
TWO_PI = 2.0 * np.pi


class InvalidParameterError(ValueError):
    """Raised when a physical parameter is outside its allowed domain."""


def _check_nonnegative(**rates: float) -> None:
    for name, value in rates.items():
        if not np.isfinite(value) or value < 0:
            raise InvalidParameterError(f"{name} must be a finite rate >= 0, got {value!r}")


@dataclass(frozen=True)
class AtomParams:
    """Atomic constants and cell geometry.

    ``gamma_31`` and ``gamma_32`` are the radiative decays of ``|3>`` into the
    two ground states; ``gamma_3out`` sends ``|3>`` to the reservoir and
    ``gamma_1out`` is the baseline loss of ``|1>``. ``scaled_density`` is the
    number density multiplied by ``(lambda_p / 2 pi)**3``.
    """

    gamma_31: float
    gamma_32: float
    gamma_3out: float = 0.0
    gamma_1out: float = 0.0
    lambda_p: float = RB87_D1_WAVELENGTH
    cell_length: float = 0.1
    scaled_density: float = 0.0

    def __post_init__(self) -> None:
        _check_nonnegative(
            gamma_31=self.gamma_31,
            gamma_32=self.gamma_32,
            gamma_3out=self.gamma_3out,
            gamma_1out=self.gamma_1out,
        )
        if not self.lambda_p > 0:
            raise InvalidParameterError("lambda_p must be > 0")
        if not self.cell_length > 0:
            raise InvalidParameterError("cell_length must be > 0")
        if not (np.isfinite(self.scaled_density) and self.scaled_density >= 0):
            raise InvalidParameterError("scaled_density must be >= 0")

    @property
    def gamma3(self) -> float:
        return 0.5 * (self.gamma_31 + self.gamma_32)

    @property
    def omega_31(self) -> float:
        """Probe transition angular frequency, 2 pi c / lambda_p."""
        return TWO_PI * C_LIGHT / self.lambda_p

    def with_density(self, scaled_density: float) -> AtomParams:
        return replace(self, scaled_density=scaled_density)


@dataclass(frozen=True)
class DriveParams:
    """Laser fields and incoherent rates applied to the atoms.

    ``loss_1`` is the scanned incoherent loss out of ``|1>``, kept apart from
    the atomic baseline ``AtomParams.gamma_1out``. ``repump_1`` and
    ``repump_2`` refill ``|1>`` and ``|2>`` from the reservoir.
    """

    omega_P: float = 0.0
    delta_P: float = 0.0
    omega_p_rabi: float = 0.0
    loss_1: float = 0.0
    repump_1: float = 0.0
    repump_2: float = 0.0

    def __post_init__(self) -> None:
        _check_nonnegative(
            omega_P=self.omega_P,
            omega_p_rabi=self.omega_p_rabi,
            loss_1=self.loss_1,
            repump_1=self.repump_1,
            repump_2=self.repump_2,
        )
        if not np.isfinite(self.delta_P):
            raise InvalidParameterError("delta_P must be finite")

    def replace(self, **changes) -> DriveParams:
        return replace(self, **changes)


@dataclass(frozen=True)
class Populations:
    """Normalized populations of the three optically active levels."""

    n1: float
    n2: float
    n3: float = 0.0

    def __post_init__(self) -> None:
        tol = 1e-9
        for name in ("n1", "n2", "n3"):
            value = getattr(self, name)
            if not (-tol <= value <= 1 + tol):
                raise InvalidParameterError(f"{name} must lie in [0, 1], got {value!r}")
        if self.n1 + self.n2 + self.n3 > 1 + tol:
            raise InvalidParameterError("n1 + n2 + n3 must not exceed 1")

    @classmethod
    def ground_split(cls, n2: float) -> Populations:
        """Fraction ``n2`` in ``|2>``, the rest in ``|1>``, nothing excited."""
        return cls(n1=1.0 - n2, n2=n2, n3=0.0)


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform, strictly increasing grid of probe detunings.

    The probe detuning is ``delta_p = omega_31 - omega_p`` so the absolute
    probe frequency is ``omega_31 - delta_p``.
    """

    delta_p: np.ndarray = field(repr=False)
    omega_31: float

    def __post_init__(self) -> None:
        d = np.asarray(self.delta_p, dtype=float)
        if d.ndim != 1 or d.size < 2:
            raise InvalidParameterError("grid needs at least two samples")
        step = np.diff(d)
        if np.any(step <= 0):
            raise InvalidParameterError("grid must be strictly increasing")
        if not np.allclose(step, step[0], rtol=1e-9, atol=0.0):
            raise InvalidParameterError("grid spacing must be uniform")
        object.__setattr__(self, "delta_p", d)

    @classmethod
    def symmetric(cls, half_width: float, num: int, omega_31: float) -> FrequencyGrid:
        return cls(np.linspace(-half_width, half_width, num), omega_31)

    @property
    def omega(self) -> np.ndarray:
        return self.omega_31 - self.delta_p

    def __len__(self) -> int:
        return self.delta_p.size


def derive_dephasings(params: AtomParams, drive: DriveParams) -> tuple[float, float]:
    """Return ``(gamma1, gamma3)``: ground-coherence and optical dephasings.

    The scanned loss from ``|1>`` adds to the ground-coherence dephasing
    along with the baseline loss, ``gamma1 = (gamma_1out + loss_1) / 2``.
    """
    _check_nonnegative(
        gamma_31=params.gamma_31,
        gamma_32=params.gamma_32,
        gamma_1out=params.gamma_1out,
        loss_1=drive.loss_1,
    )
    gamma3 = 0.5 * (params.gamma_31 + params.gamma_32)
    gamma1 = 0.5 * (params.gamma_1out + drive.loss_1)
    return gamma1, gamma3
