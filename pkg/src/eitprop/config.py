"""TOML configuration and unit handling.

Rates may be written as plain numbers (rad/s), as frequencies with a unit
(``"5.75 MHz"``, ``"1 kHz"``; multiplied by 2 pi) or in units of the optical
dephasing (``"0.8 gamma3"``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .bloch import RepumpModel
from .params import TWO_PI, AtomParams, DriveParams, InvalidParameterError, Populations
from .pulse import GaussianPulse
from .response import MediumResponse

_FREQ_UNITS = {"hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9}
_RATE_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*([A-Za-z0-9/]*)\s*$")


class ConfigError(ValueError):
    """Malformed or incomplete configuration."""


def parse_rate(value, gamma3: float | None = None) -> float:
    """Convert a configured rate to rad/s."""
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"cannot interpret rate {value!r}")
    m = _RATE_RE.match(value)
    if not m:
        raise ConfigError(f"cannot interpret rate {value!r}")
    number, unit = float(m.group(1)), m.group(2).lower()
    if unit in ("", "rad/s"):
        return number
    if unit in _FREQ_UNITS:
        return TWO_PI * number * _FREQ_UNITS[unit]
    if unit == "gamma3":
        if gamma3 is None:
            raise ConfigError(f"{value!r}: gamma3 units are not available here")
        return number * gamma3
    raise ConfigError(f"unknown rate unit {m.group(2)!r} in {value!r}")


@dataclass(frozen=True)
class Config:
    atom: AtomParams
    drive: DriveParams
    repump: RepumpModel
    populations: Populations
    awi_populations: Populations
    awi_loss: float
    pulse: GaussianPulse
    grid_half_width: float
    grid_points: int
    target_delay: float
    scan_gamma1_max: float
    scan_loss_max: float
    scan_points: int

    @property
    def gamma3(self) -> float:
        return self.atom.gamma3

    def response(self, populations: Populations | None = None, loss_1: float | None = None) -> MediumResponse:
        drive = self.drive if loss_1 is None else self.drive.replace(loss_1=loss_1)
        return MediumResponse.from_drive(self.atom, drive, populations or self.populations)

    def eit_response(self) -> MediumResponse:
        """All population in ``|1>`` with only the baseline ground loss."""
        return self.response(Populations(1.0, 0.0, 0.0), loss_1=0.0)

    def awi_response(self) -> MediumResponse:
        return self.response(self.awi_populations, loss_1=self.awi_loss)

    def bloch_drive(self, loss_1: float | None = None) -> DriveParams:
        """Drive with repumps set by the repump model at the given loss."""
        return self.repump.apply(self.atom, self.drive, loss_1)

    def with_density(self, scaled_density: float) -> Config:
        return replace(self, atom=self.atom.with_density(scaled_density))


def _section(data: dict, name: str) -> dict:
    sec = data.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"[{name}] must be a table")
    return sec


def config_from_dict(data: dict) -> Config:
    atom_d = _section(data, "atom")
    try:
        g31 = parse_rate(atom_d["gamma_31"])
        g32 = parse_rate(atom_d["gamma_32"])
    except KeyError as exc:
        raise ConfigError(f"[atom] is missing {exc.args[0]}") from None
    gamma3 = 0.5 * (g31 + g32)

    def rate(sec: dict, key: str, default=0.0) -> float:
        return parse_rate(sec.get(key, default), gamma3)

    try:
        atom = AtomParams(
            gamma_31=g31,
            gamma_32=g32,
            gamma_3out=rate(atom_d, "gamma_3out"),
            gamma_1out=rate(atom_d, "gamma_1out"),
            lambda_p=float(atom_d.get("lambda_p", AtomParams.__dataclass_fields__["lambda_p"].default)),
            cell_length=float(atom_d.get("cell_length", 0.1)),
            scaled_density=float(atom_d.get("scaled_density", 0.0)),
        )
        drive_d = _section(data, "drive")
        omega_P = rate(drive_d, "omega_P")
        drive = DriveParams(
            omega_P=omega_P,
            delta_P=rate(drive_d, "delta_P"),
            omega_p_rabi=rate(drive_d, "omega_p_rabi"),
            loss_1=rate(drive_d, "loss_1"),
        )
        rep_d = _section(data, "repump")
        repump = RepumpModel(scale=float(rep_d.get("scale", 10.0)), balance=float(rep_d.get("balance", 1.0)))
        pops = Populations.ground_split(float(_section(data, "populations").get("n2", 0.0)))
        awi_d = _section(data, "awi")
        awi_pops = Populations.ground_split(float(awi_d.get("n2", 0.3)))
        awi_loss = rate(awi_d, "loss_1", "0.2 gamma3")
        pulse_d = _section(data, "pulse")
        pulse = GaussianPulse(
            detuning=0.0,
            tau=float(pulse_d.get("tau", 3.33e-6)),
            window=float(pulse_d.get("window", 16.0)),
            samples=int(pulse_d.get("samples", 2**14)),
        )
        grid_d = _section(data, "grid")
        scan_d = _section(data, "scan")
        return Config(
            atom=atom,
            drive=drive,
            repump=repump,
            populations=pops,
            awi_populations=awi_pops,
            awi_loss=awi_loss,
            pulse=pulse,
            grid_half_width=rate(grid_d, "half_width", "3 gamma3"),
            grid_points=int(grid_d.get("points", 601)),
            target_delay=float(_section(data, "calibration").get("target_delay", 18.9)),
            scan_gamma1_max=rate(scan_d, "gamma1_max", "0.3 gamma3"),
            scan_loss_max=rate(scan_d, "loss_max", "0.6 gamma3"),
            scan_points=int(scan_d.get("points", 61)),
        )
    except InvalidParameterError as exc:
        raise ConfigError(str(exc)) from exc


def default_config_text() -> str:
    return resources.files("eitprop").joinpath("data/rb87_d1.toml").read_text(encoding="utf-8")


def load_config(path: str | Path | None = None) -> Config:
    """Load ``path``, or the bundled 87Rb D1 profile when ``path`` is None."""
    text = default_config_text() if path is None else Path(path).read_text(encoding="utf-8")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    return config_from_dict(data)
