"""Command-line front end.

Every subcommand reads an optional YAML config (``--config``); explicit flags
override config values. Results are written as CSV to ``--out`` or stdout.

Exit codes: 0 success, 2 bad arguments, 3 numerical precision failure,
4 unreachable design target.
"""

import argparse
import logging
import sys
import warnings

import numpy as np
import yaml

from .errors import DomainError, PrecisionError, UnreachableTargetError, UnsupportedFilterError
from .experiments import (
    SWEEP_HEADER,
    SweepSpec,
    design_for_fidelity,
    optimal_lo,
    sweep_negativity,
    write_csv,
)
from .filtered_basis import build_filtered_basis
from .overlaps import LoLeakageWarning
from .scenario import NM, FilterSpec, Scenario
from .supermodes import hermite_functions, zeta_from_db
from .units import SPEED_OF_LIGHT
from .svgplot import heatmap_svg, line_chart_svg
from .wigner import (
    fidelity_closed_form,
    fidelity_numeric,
    heralded_negativity,
    heralded_photon_purity,
    phase_space_axes,
    wigner_heralded,
    wigner_target,
)

EXIT_OK, EXIT_ARGS, EXIT_PRECISION, EXIT_UNREACHABLE = 0, 2, 3, 4

DEFAULTS = {
    "k": 1.0,
    "lo_fwhm_nm": None,
    "filter": "none",
    "filter_fwhm_nm": 1.0,
    "zeta0_db": 3.0,
    "rs2": 0.05,
    "grid_points": 4097,
    "modes": None,
    "pump_wavelength_nm": 780.0,
    "pump_fwhm_nm": 0.5,
    "signal_wavelength_nm": 1560.0,
    "target_f": 0.95,
    "k_values": None,
    "lo_values": None,
    "workers": 1,
    "phase_points": 201,
    "which": "supermodes",
    "count": 3,
    "metric": "negativity",
    "out": None,
    "plot": None,
}


class ArgumentError(Exception):
    pass


def _float_list(text):
    """'1,2,5' or 'start:stop:num' (inclusive linspace)."""
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    text = str(text)
    if ":" in text:
        start, stop, num = text.split(":")
        return [float(v) for v in np.linspace(float(start), float(stop), int(num))]
    return [float(v) for v in text.split(",") if v.strip()]


def _flatten(cfg, prefix=""):
    flat = {}
    for key, value in (cfg or {}).items():
        key = str(key).replace("-", "_")
        if isinstance(value, dict):
            if key == "filter":
                flat["filter"] = value.get("shape", DEFAULTS["filter"])
                if "fwhm_nm" in value:
                    flat["filter_fwhm_nm"] = value["fwhm_nm"]
            else:
                flat.update(_flatten(value))
        else:
            flat[key] = value
    return flat


def _resolve(args):
    opts = dict(DEFAULTS)
    if args.config:
        with open(args.config) as fh:
            cfg = _flatten(yaml.safe_load(fh))
        unknown = set(cfg) - set(DEFAULTS)
        if unknown:
            raise ArgumentError(f"unknown config keys: {', '.join(sorted(unknown))}")
        opts.update(cfg)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    return opts


def _scenario(opts):
    return Scenario(
        signal_wavelength=float(opts["signal_wavelength_nm"]) * NM,
        pump_wavelength=float(opts["pump_wavelength_nm"]) * NM,
        pump_fwhm=float(opts["pump_fwhm_nm"]) * NM,
        zeta0=float(zeta_from_db(float(opts["zeta0_db"]))),
        rs2=float(opts["rs2"]),
        grid_points=int(opts["grid_points"]),
        n_modes=None if opts["modes"] is None else int(opts["modes"]),
    )


def _filter(opts):
    shape = opts["filter"]
    fwhm = float(opts["filter_fwhm_nm"]) if shape in ("rect", "gauss") else 0.0
    return FilterSpec(shape, fwhm)


def _lo(opts, scenario, k):
    lo = opts["lo_fwhm_nm"]
    return scenario.matched_lo_nm(k) if lo is None else float(lo)


def _emit(opts, header, rows):
    if opts["out"]:
        write_csv(opts["out"], header, rows)
    else:
        write_csv(sys.stdout, header, rows)


def _plot(opts, svg_text):
    if opts["plot"]:
        with open(opts["plot"], "w") as fh:
            fh.write(svg_text)


def cmd_basis(opts):
    sc = _scenario(opts)
    k = float(opts["k"])
    basis = sc.basis(k)
    count = int(opts["count"])
    which = opts["which"]
    if which == "supermodes":
        modes = basis.samples[:count]
    else:
        fb = build_filtered_basis(basis, sc.filter_profile(_filter(opts)), m=count, m_perp=count)
        modes = fb.parallel if which == "parallel" else fb.perp
    grid = basis.grid
    lam = 2 * np.pi * SPEED_OF_LIGHT / grid.samples / NM
    header = ["omega_offset", "wavelength_nm"] + [f"{which}_{i}" for i in range(len(modes))]
    rows = [[grid.offsets[i], lam[i]] + list(modes[:, i]) for i in range(grid.n_points)]
    _emit(opts, header, rows)
    x = sc.to_nm(1.0) * grid.offsets
    _plot(opts, line_chart_svg(
        [(f"{which} {i}", x, m) for i, m in enumerate(modes)],
        title=f"{which} modes, K={k:g}", xlabel="detuning (nm equivalent)", ylabel="amplitude",
    ))


def cmd_gamma(opts):
    sc = _scenario(opts)
    k = float(opts["k"])
    g = sc.gamma(k, _filter(opts)).values
    n = g.shape[0]
    _emit(opts, ["k", "n", "gamma"], [(i, j, g[i, j]) for i in range(n) for j in range(n)])
    m = min(n, 40)
    _plot(opts, heatmap_svg(np.arange(m), np.arange(m), g[:m, :m], title="gamma_kn", xlabel="n", ylabel="k"))


def _params(opts):
    sc = _scenario(opts)
    k = float(opts["k"])
    spec = _filter(opts)
    lo_nm = _lo(opts, sc, k)
    return sc, k, spec, lo_nm, sc.params(k, spec, lo_nm)


def cmd_wigner(opts):
    _, _, _, _, params = _params(opts)
    axes = phase_space_axes(params.sigma_x, params.sigma_y, int(opts["phase_points"]))
    w = wigner_heralded(params, axes)
    rows = [(x, y, w.values[i, j]) for i, x in enumerate(w.x_axis) for j, y in enumerate(w.y_axis)]
    _emit(opts, ["x", "y", "W"], rows)
    _plot(opts, heatmap_svg(w.x_axis, w.y_axis, w.values.T, title="W_H(x, y)", xlabel="x", ylabel="y", zlabel="W"))


def cmd_negativity(opts):
    sc, k, spec, lo_nm, params = _params(opts)
    ng = heralded_negativity(params)
    prob = sc.success_probability(k, spec)
    _emit(opts, ["K", "filter", "lo_fwhm_nm", "negativity", "success_probability"],
          [(k, spec.label(), lo_nm, ng, prob)])


def cmd_fidelity(opts):
    sc, k, spec, lo_nm, params = _params(opts)
    target = sc.target()
    f_closed = fidelity_closed_form(params, target)
    axes = phase_space_axes(max(params.sigma_x, np.sqrt(target.s / 2)), max(params.sigma_y, 1.0))
    f_num = fidelity_numeric(wigner_heralded(params, axes), wigner_target(target, axes))
    _emit(opts, ["K", "filter", "lo_fwhm_nm", "fidelity", "fidelity_numeric"],
          [(k, spec.label(), lo_nm, f_closed, f_num)])


def cmd_sweep(opts):
    sc = _scenario(opts)
    ks = _float_list(opts["k_values"] if opts["k_values"] is not None else [opts["k"]])
    if opts["lo_values"] is None:
        raise ArgumentError("sweep needs --lo-values")
    los = _float_list(opts["lo_values"])
    spec = SweepSpec(tuple(ks), tuple(los), _filter(opts), sc)
    rows = sweep_negativity(spec, workers=int(opts["workers"]))
    _emit(opts, SWEEP_HEADER, rows)
    z = np.array([r[2] for r in rows], float).reshape(len(ks), len(los))
    _plot(opts, heatmap_svg(los, ks, z, title=f"N_g, filter {spec.filter.label()}",
                            xlabel="LO FWHM (nm)", ylabel="K", zlabel="N_g"))


def cmd_optimize_lo(opts):
    sc = _scenario(opts)
    ks = _float_list(opts["k_values"]) if opts["k_values"] is not None else [float(opts["k"])]
    results = [optimal_lo(k, _filter(opts), sc, metric=opts["metric"]) for k in ks]
    _emit(opts, list(results[0].as_row()), [list(r.as_row().values()) for r in results])
    _plot(opts, line_chart_svg(
        [("N_g", ks, [r.achieved_negativity for r in results])],
        title="optimal-LO negativity", xlabel="K", ylabel="N_g",
    ))


def cmd_design(opts):
    sc = _scenario(opts)
    ks = _float_list(opts["k_values"]) if opts["k_values"] is not None else [float(opts["k"])]
    shape = opts["filter"] if opts["filter"] in ("rect", "gauss") else "rect"
    results = [design_for_fidelity(k, float(opts["target_f"]), sc, shape=shape) for k in ks]
    _emit(opts, list(results[0].as_row()), [list(r.as_row().values()) for r in results])
    _plot(opts, line_chart_svg(
        [("LO FWHM", ks, [r.optimal_lo_fwhm for r in results]),
         ("filter FWHM", ks, [r.optimal_filter_fwhm for r in results])],
        title=f"F = {float(opts['target_f']):g} design", xlabel="K", ylabel="FWHM (nm)",
    ))


def cmd_purity(opts):
    sc = _scenario(opts)
    k = float(opts["k"])
    spec = _filter(opts)
    sq = sc.squeezing(k)
    if spec.shape == "delta":
        # t -> delta: gamma collapses to the rank-one outer product of psi_k(center)
        h = hermite_functions(sq.n_modes, np.zeros(1))[:, 0]
        gamma = np.outer(h, h)
    else:
        gamma = sc.gamma(k, spec)
    _emit(opts, ["K", "filter", "purity"], [(k, spec.label(), heralded_photon_purity(gamma, sq.zeta))])


COMMANDS = {
    "basis": cmd_basis,
    "gamma": cmd_gamma,
    "wigner": cmd_wigner,
    "negativity": cmd_negativity,
    "fidelity": cmd_fidelity,
    "sweep": cmd_sweep,
    "optimize-lo": cmd_optimize_lo,
    "design": cmd_design,
    "purity": cmd_purity,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML file with default option values")
    common.add_argument("--k", type=float, help="Schmidt number K")
    common.add_argument("--lo-fwhm-nm", type=float, help="LO power-spectrum FWHM (nm); default matches psi_0")
    common.add_argument("--filter", choices=["none", "rect", "gauss", "delta"])
    common.add_argument("--filter-fwhm-nm", type=float)
    common.add_argument("--zeta0-db", type=float, help="first-supermode squeezing (dB below shot noise)")
    common.add_argument("--rs2", type=float, help="subtraction beam-splitter reflectivity r_s**2")
    common.add_argument("--pump-fwhm-nm", type=float)
    common.add_argument("--pump-wavelength-nm", type=float)
    common.add_argument("--signal-wavelength-nm", type=float)
    common.add_argument("--grid-points", type=int, help="spectral grid size (odd)")
    common.add_argument("--modes", type=int, help="number of supermodes (default: automatic)")
    common.add_argument("--out", help="CSV output path (default stdout)")
    common.add_argument("--plot", help="write an SVG figure to this path")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="photonsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("basis", parents=[common], help="dump supermode / filtered mode samples")
    p.add_argument("--which", choices=["supermodes", "parallel", "perp"])
    p.add_argument("--count", type=int)
    sub.add_parser("gamma", parents=[common], help="emit the gamma matrix")
    p = sub.add_parser("wigner", parents=[common], help="emit the heralded Wigner function")
    p.add_argument("--phase-points", type=int)
    sub.add_parser("negativity", parents=[common], help="negativity of the heralded state")
    sub.add_parser("fidelity", parents=[common], help="fidelity with the kitten target")
    p = sub.add_parser("sweep", parents=[common], help="negativity map over K and LO width")
    p.add_argument("--k-values", help="'1,2,5' or 'start:stop:num'")
    p.add_argument("--lo-values", help="LO FWHMs in nm, same syntax")
    p.add_argument("--workers", type=int)
    p = sub.add_parser("optimize-lo", parents=[common], help="best LO width for one or more K")
    p.add_argument("--k-values")
    p.add_argument("--metric", choices=["negativity", "fidelity"])
    p = sub.add_parser("design", parents=[common], help="widest filter meeting a target fidelity")
    p.add_argument("--target-f", type=float)
    p.add_argument("--k-values")
    sub.add_parser("purity", parents=[common], help="heralded single-photon purity")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        opts = _resolve(args)
        with warnings.catch_warnings():
            if not args.verbose:
                warnings.simplefilter("ignore", LoLeakageWarning)
            COMMANDS[args.command](opts)
    except UnreachableTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ArgumentError, DomainError, UnsupportedFilterError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
