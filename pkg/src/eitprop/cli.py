"""Command-line front end.

Every subcommand writes one tab-separated table (``#`` header naming the
columns and units) into the output directory and prints a one-line summary.
The output directory is ``--output-dir``, else ``$EITPROP_OUTPUT_DIR``,
else the current directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import bloch, scans
from .config import Config, ConfigError, load_config
from .params import InvalidParameterError, Populations
from .pulse import GaussianPulse, PropagationGridError, propagate
from .response import (
    MediumResponse,
    anomalous_carrier,
    chi_analytic,
    dispersion_D,
    group_index,
    inverse_group_velocity,
    medium_transmission,
    zero_dispersion_roots,
)

OUTPUT_ENV = "EITPROP_OUTPUT_DIR"

_PLOT_TEMPLATE = """\
import matplotlib.pyplot as plt
import numpy as np

data = np.loadtxt({path!r}, comments="#", delimiter="\\t", ndmin=2)
names = {names!r}
fig, ax = plt.subplots()
for k in range(1, data.shape[1]):
    ax.plot(data[:, 0], data[:, k], label=names[k])
ax.set_xlabel(names[0])
ax.legend()
fig.savefig({png!r}, dpi=150)
"""


def write_table(path: Path, columns: list[str], data, title: str) -> Path:
    """Write a tab-separated table with a single ``#`` header line."""
    arr = np.asarray(data, dtype=float).reshape(-1, len(columns))
    lines = [f"# {title} | " + "\t".join(columns)]
    lines += ["\t".join(f"{v:.10e}" for v in row) for row in arr]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_plot_script(data_path: Path, columns: list[str]) -> Path:
    script = data_path.with_suffix(".plot.py")
    png = data_path.with_suffix(".png").name
    script.write_text(_PLOT_TEMPLATE.format(path=data_path.name, names=columns, png=png), encoding="utf-8")
    return script


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="TOML config (default: bundled 87Rb D1 profile)")
    p.add_argument("--output-dir", type=Path, help=f"output directory (default: ${OUTPUT_ENV} or .)")
    p.add_argument("--emit-plots", action="store_true", help="also write matplotlib scripts next to the data")
    p.add_argument("--population-split", type=float, metavar="N2", help="fraction of ground population in |2>")
    p.add_argument("--loss", type=float, metavar="X", help="loss from |1> in units of gamma3")
    p.add_argument("--gamma1", type=float, metavar="X", help="override ground dephasing (units of gamma3)")
    p.add_argument("--omega-pump", type=float, metavar="X", help="pump Rabi frequency in units of gamma3")
    p.add_argument("--awi", action="store_true", help="use the gain-without-inversion profile from [awi]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eitprop",
        description="Steady-state EIT / gain-without-inversion spectra and pulse propagation in a Lambda vapor cell.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, description=help_)
        _add_common(p)
        return p

    add("populations", "steady-state ground population ratios versus loss from |1> (Bloch model)")
    p = add("chi", "probe susceptibility versus detuning")
    p.add_argument("--numeric", action="store_true", help="add the full density-matrix susceptibility")
    add("transmission", "cell intensity transmission G_T versus detuning")
    add("groupvel", "reciprocal group velocity versus detuning")
    add("dispersion", "group-velocity dispersion function D versus detuning")
    p = add("roots", "zeros of the dispersion function")
    p.add_argument("--window", type=float, default=1.5, help="search half-width in units of gamma3")
    p = add("propagate", "propagate a Gaussian probe pulse through the cell")
    p.add_argument(
        "--carrier", default="resonance", help="'resonance', 'anomalous' or a detuning in units of gamma3"
    )
    p.add_argument("--tau", type=float, help="pulse 1/e power half-width in seconds")
    p = add("scan-gain", "centre-line gain versus ground dephasing")
    p.add_argument("--self-consistent", action="store_true", help="vary the loss and take populations from the Bloch model")
    add("scan-delay", "resonant delay and anomalous advance versus ground dephasing")
    p = add("calibrate", "scaled density reproducing a pure-EIT resonant delay")
    p.add_argument("--target", type=float, help="target delay in metres (default from config)")
    return parser


def _response(cfg: Config, args) -> MediumResponse:
    g3 = cfg.gamma3
    if args.awi:
        pops, loss = cfg.awi_populations, cfg.awi_loss
    else:
        pops, loss = cfg.populations, cfg.drive.loss_1
    if args.population_split is not None:
        pops = Populations.ground_split(args.population_split)
    if args.loss is not None:
        loss = args.loss * g3
    resp = cfg.response(pops, loss_1=loss)
    if args.omega_pump is not None:
        resp = MediumResponse.from_drive(resp.params, resp.drive.replace(omega_P=args.omega_pump * g3), pops)
    if args.gamma1 is not None:
        resp = resp.with_gamma1(args.gamma1 * g3)
    return resp


def _grid(cfg: Config) -> np.ndarray:
    return np.linspace(-cfg.grid_half_width, cfg.grid_half_width, cfg.grid_points)


def _run(args, out: Path) -> tuple[str, Path, list[str]]:
    cfg = load_config(args.config)
    g3 = cfg.gamma3
    cmd = args.command

    if cmd == "populations":
        drive = cfg.drive if args.omega_pump is None else cfg.drive.replace(omega_P=args.omega_pump * g3)
        losses = np.linspace(0.0, cfg.scan_loss_max, cfg.scan_points)
        table = bloch.population_scan(cfg.atom, drive, losses, cfg.repump)
        table[:, 0] /= g3
        cols = ["loss_1/gamma3", "n2/n1", "n3/n1"]
        path = write_table(out / "fig2_populations.tsv", cols, table, "fig2 steady-state population ratios")
        return f"populations: {len(table)} points, max n3/n1 = {np.nanmax(table[:, 2]):.4g}", path, cols

    resp = _response(cfg, args)
    grid = _grid(cfg)
    x = grid / g3

    if cmd == "chi":
        chi = chi_analytic(grid, resp)
        cols = ["delta_p/gamma3", "Re chi", "Im chi"]
        data = [x, chi.real, chi.imag]
        if args.numeric:
            drive = cfg.bloch_drive(resp.drive.loss_1).replace(omega_P=resp.drive.omega_P)
            num = bloch.weak_probe_chi_numeric(resp.params, drive, grid, check_linearity=True)
            cols += ["Re chi (Bloch)", "Im chi (Bloch)"]
            data += [num.real, num.imag]
        path = write_table(out / "fig3_chi.tsv", cols, np.column_stack(data), "fig3 probe susceptibility")
        return f"chi: max Im chi = {chi.imag.max():.6e}, Im chi(0) = {chi_analytic(0.0, resp).imag:.6e}", path, cols

    if cmd == "transmission":
        _, g = medium_transmission(grid, resp)
        cols = ["delta_p/gamma3", "G_T"]
        path = write_table(out / "fig3_transmission.tsv", cols, np.column_stack([x, g]), "fig3 probe transmission")
        return f"transmission: G_T(0) = {float(medium_transmission(0.0, resp)[1]):.6f}", path, cols

    if cmd == "groupvel":
        inv = inverse_group_velocity(grid, resp)
        cols = ["delta_p/gamma3", "1/v_g [s/m]"]
        path = write_table(out / "fig5_inverse_group_velocity.tsv", cols, np.column_stack([x, inv]), "fig5 reciprocal group velocity")
        return f"groupvel: c/v_g(0) = {float(group_index(0.0, resp)):.4f}", path, cols

    if cmd == "dispersion":
        d = dispersion_D(grid, resp)
        cols = ["delta_p/gamma3", "D [s/m]"]
        path = write_table(out / "fig5_dispersion.tsv", cols, np.column_stack([x, d]), "fig5 dispersion function (unscaled)")
        return f"dispersion: max |D| = {np.abs(d).max():.6e} s/m", path, cols

    if cmd == "roots":
        roots = zero_dispersion_roots(resp, -args.window * g3, args.window * g3)
        cols = ["delta_p/gamma3", "c/v_g"]
        data = [(r / g3, float(group_index(r, resp))) for r in roots]
        path = write_table(out / "fig5_dispersion_roots.tsv", cols, data, "zeros of the dispersion function")
        return "roots: " + ", ".join(f"{r / g3:+.9f}" for r in roots) + " (units of gamma3)", path, cols

    if cmd == "propagate":
        pulse = cfg.pulse if args.tau is None else GaussianPulse(tau=args.tau, window=cfg.pulse.window, samples=cfg.pulse.samples)
        if args.carrier == "resonance":
            carrier = 0.0
        elif args.carrier == "anomalous":
            carrier = anomalous_carrier(resp)
            if carrier is None:
                raise InvalidParameterError("no negative minimum of 1/v_g in the search window")
        else:
            carrier = float(args.carrier) * g3
        result = propagate(pulse.at(carrier), resp)
        peak = result.power_vac.max()
        cols = ["t [s]", "z = c t [m]", "|E_vac|^2", "|E_out|^2"]
        data = np.column_stack([result.time, result.distance, result.power_vac / peak, result.power_out / peak])
        path = write_table(out / "fig6_pulse.tsv", cols, data, "fig6 pulse power density normalized to vacuum peak")
        summary = (
            f"propagate: carrier = {carrier / g3:+.6f} gamma3, delay = {result.delay:.4f} m, "
            f"energy gain = {result.energy_gain:.6f}"
        )
        return summary, path, cols

    if cmd == "scan-gain":
        if args.self_consistent:
            losses = np.linspace(0.0, cfg.scan_loss_max, cfg.scan_points)
            table = scans.gain_vs_loss(resp, losses, cfg.repump)
            cols = ["loss_1/gamma3", "gamma1/gamma3", "n2", "gain [%]"]
            path = write_table(out / "fig4_gain_vs_loss.tsv", cols, table, "fig4 centre-line gain, self-consistent populations")
            gains = table[:, 3]
        else:
            g1 = np.linspace(0.0, cfg.scan_gamma1_max, cfg.scan_points)
            table = scans.gain_vs_dephasing(resp, g1)
            cols = ["gamma1/gamma3", "gain [%]"]
            path = write_table(out / "fig4_gain_vs_dephasing.tsv", cols, table, "fig4 centre-line gain, pinned populations")
            gains = table[:, 1]
        k = int(np.nanargmax(gains))
        return f"scan-gain: max gain {gains[k]:.4f}% at row {k} of {len(gains)}", path, cols

    if cmd == "scan-delay":
        g1 = np.linspace(0.0, cfg.scan_gamma1_max, cfg.scan_points)
        table = scans.delay_advance_vs_dephasing(resp, g1, cfg.pulse)
        cols = ["gamma1/gamma3", "resonant delay [m]", "anomalous delay [m]", "anomalous carrier/gamma3"]
        # "0.25 Gamma1" and "0.25 gamma3" coincide when Gamma_31 == gamma3
        title = f"fig7 delay/advance vs dephasing; Gamma_31/gamma3 = {cfg.atom.gamma_31 / g3:.6g}"
        path = write_table(out / "fig7_delay_advance.tsv", cols, table, title)
        return f"scan-delay: {len(table)} points, delay at gamma1=0: {table[0, 1]:.4f} m", path, cols

    if cmd == "calibrate":
        target = cfg.target_delay if args.target is None else args.target
        density = scans.calibrate_density(target, cfg.eit_response(), cfg.pulse)
        cols = ["target delay [m]", "scaled density"]
        path = write_table(out / "calibration.tsv", cols, [(target, density)], "pure-EIT density calibration")
        return f"calibrate: scaled_density = {density:.10e} for delay {target} m", path, cols

    raise AssertionError(cmd)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is not None and not args.config.is_file():
        parser.error(f"config file not found: {args.config}")
    out = args.output_dir or Path(os.environ.get(OUTPUT_ENV, "."))
    try:
        out.mkdir(parents=True, exist_ok=True)
        summary, path, cols = _run(args, out)
        if args.emit_plots:
            write_plot_script(path, cols)
    except ConfigError as exc:
        parser.error(str(exc))
    except (
        InvalidParameterError,
        bloch.DegenerateSteadyStateError,
        scans.CalibrationError,
        PropagationGridError,
        ArithmeticError,
        np.linalg.LinAlgError,
        OSError,
    ) as exc:
        print(f"eitprop: error: {exc}", file=sys.stderr)
        return 1
    print(summary)
    return 0


def main() -> None:
    sys.exit(run())
