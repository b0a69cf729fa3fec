"""Command line front end: simulate / sweep / analytics."""

from __future__ import annotations

import argparse
import math
import sys

from .core import (
    CouplingVariant,
    default_config,
    load_config,
)
from .polariton import dark_polariton_4, mixing_matrix, polariton_velocity
from .scenarios import (
    desk_config,
    run_overlap_scenario,
    run_storage_cycle,
    save_runs,
    sweep_pulse_area,
    with_area_window,
)

_PI_TOKENS = {"pi": math.pi}


def parse_theta(token: str) -> float:
    """Parse an area token: plain float, 'pi', 'pi/2', '3pi/4', ..."""
    text = token.strip().lower().replace(" ", "")
    if "pi" in text:
        head, _, tail = text.partition("pi")
        factor = float(head) if head not in ("", "+", "-") else float(head + "1")
        divisor = float(tail[1:]) if tail.startswith("/") else 1.0
        return factor * math.pi / divisor
    return float(text)


def _resolve_config(args) -> "SimulationConfig":
    variant = CouplingVariant.CASE_A if args.case == "a" else CouplingVariant.CASE_B
    base = default_config(variant) if args.full_scale else desk_config(variant)
    if args.config:
        return load_config(args.config, base=base)
    return base


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--case", choices=("a", "b"), default="a",
                        help="fourth-level coupling variant")
    parser.add_argument("--full-scale", action="store_true",
                        help="full experimental scale instead of the desk profile")


def _cmd_simulate(args) -> int:
    config = _resolve_config(args)
    if args.overlap:
        result = run_overlap_scenario(config)
        reference = run_storage_cycle(with_area_window(config, 0.0))
        entries = [("overlap.csv", result), ("reference.csv", reference)]
        save_runs(args.out, entries, result.config)
    else:
        theta = parse_theta(args.theta)
        run_config = with_area_window(config, theta)
        result = run_storage_cycle(run_config)
        entries = [(f"theta_{theta:.6f}.csv", result)]
        save_runs(args.out, entries, run_config)
    for name, res in entries:
        print(
            f"{name}: area={res.theta:.6f} peak1={res.peak_amp_1:.6e} "
            f"peak3={res.peak_amp_3:.6e} E1={res.released_energy_1:.6e} "
            f"E3={res.released_energy_3:.6e}"
        )
    return 0


def _cmd_sweep(args) -> int:
    config = _resolve_config(args)
    thetas = [parse_theta(tok) for tok in args.thetas.split(",")]
    results = sweep_pulse_area(config, thetas)
    entries = [
        (f"theta_{theta:.6f}.csv", res) for theta, res in zip(thetas, results)
    ]
    save_runs(args.out, entries, config)
    print("theta,peak_amp_1,peak_amp_3,released_energy_1,released_energy_3")
    for res in results:
        print(
            f"{res.theta:.6f},{res.peak_amp_1:.6e},{res.peak_amp_3:.6e},"
            f"{res.released_energy_1:.6e},{res.released_energy_3:.6e}"
        )
    return 0


def _cmd_analytics(args) -> int:
    config = _resolve_config(args)
    scheme, N = config.scheme, config.N
    theta = parse_theta(args.theta)
    omega2 = (
        args.omega2
        if args.omega2 is not None
        else -config.schedule.eps2_max * scheme.d2
    )
    if args.quantity == "velocity":
        v = polariton_velocity(theta, omega2, scheme, N)
        print("theta,omega2,velocity")
        print(f"{theta:.17g},{omega2:.17g},{v:.17g}")
    elif args.quantity == "mixing":
        m = mixing_matrix(theta, scheme, N)
        print("theta,M11,M13,M31,M33")
        print(f"{theta:.17g},{m.M11:.17g},{m.M13:.17g},{m.M31:.17g},{m.M33:.17g}")
    else:
        psi = dark_polariton_4(
            args.eps1, args.eps3, args.sigma_bc, args.sigma_dc,
            theta, omega2, scheme, N,
        )
        print("theta,omega2,re_psi,im_psi")
        print(f"{theta:.17g},{omega2:.17g},{psi.real:.17g},{psi.imag:.17g}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="lightstore",
        description="Light storage and pulse-area controlled release in "
        "four-level atomic media (atomic units throughout).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="one storage/release cycle")
    _add_common(p_sim)
    p_sim.add_argument("--theta", default="0",
                       help="control-4 pulse area (e.g. 0.5, pi/2, 3pi/4)")
    p_sim.add_argument("--overlap", action="store_true",
                       help="overlap control 4 with the release switch-on")
    p_sim.add_argument("--out", required=True, help="output directory")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="storage cycles over a list of areas")
    _add_common(p_sweep)
    p_sweep.add_argument("--thetas", required=True,
                         help="comma separated areas, pi tokens allowed")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_an = sub.add_parser("analytics", help="closed-form polariton quantities")
    _add_common(p_an)
    p_an.add_argument("--quantity", required=True,
                      choices=("velocity", "mixing", "polariton"))
    p_an.add_argument("--theta", default="0")
    p_an.add_argument("--omega2", type=float, default=None,
                      help="control Rabi frequency (default from eps2_max)")
    p_an.add_argument("--eps1", type=float, default=0.0)
    p_an.add_argument("--eps3", type=float, default=0.0)
    p_an.add_argument("--sigma-bc", dest="sigma_bc", type=float, default=0.0)
    p_an.add_argument("--sigma-dc", dest="sigma_dc", type=float, default=0.0)
    p_an.set_defaults(func=_cmd_analytics)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
