"""Command-line front end.

Every subcommand takes a scenario (a JSON path or the name of a bundled
scenario such as ``paper_2g``); flags override values from the file.

Exit codes: 0 success, 1 usage or configuration error, 2 no oscillation.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import analytic, config, locomotion, oscillator, trace
from .errors import CrawlSimError, InvalidConfig, NoOscillation

EXIT_OK, EXIT_CONFIG, EXIT_NO_OSCILLATION = 0, 1, 2

# reference crawls keyed by attached mass: (distance m, elapsed s)
MEASURED_CRAWLS = {2.0e-3: (146.0e-3, 350.1), 1.0e-3: (39.0e-3, 240.0)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _emit(obj, stream=None) -> None:
    (stream or sys.stdout).write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _apply_overrides(cfg: config.ScenarioConfig, args) -> config.ScenarioConfig:
    osc = cfg.oscillator
    if getattr(args, "current", None) is not None:
        osc = dataclasses.replace(osc, supply_current_A=args.current)
    if getattr(args, "dt", None) is not None:
        osc = dataclasses.replace(osc, dt_s=args.dt)
    changes = {"oscillator": osc}
    if getattr(args, "duration", None) is not None:
        changes["duration_s"] = args.duration
    return dataclasses.replace(cfg, **changes)


def _calibration_flags(cfg: config.ScenarioConfig) -> dict:
    return {
        path: {"value": config.lookup(cfg, path), "calibrated": True} for path in cfg.calibrated
    }


def _output_paths(cfg, args, command):
    out_dir = Path(args.out_dir)
    trace_csv = args.trace or cfg.output.trace_csv or str(out_dir / f"{cfg.name}_{command}.csv")
    summary = args.summary or cfg.output.summary_json or str(
        out_dir / f"{cfg.name}_{command}_summary.json"
    )
    return Path(trace_csv), Path(summary)


def _period_or_none(events):
    return oscillator.measure_period(events) if len(events) >= 3 else None


def _write_summary(path: Path, summary: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        _emit(summary, fh)


def cmd_oscillate(args) -> int:
    cfg = _apply_overrides(config.resolve(args.config), args)
    tr, events = oscillator.simulate_oscillator(cfg.oscillator, cfg.duration_s)
    trace_csv, summary_path = _output_paths(cfg, args, "oscillate")
    trace_csv.parent.mkdir(parents=True, exist_ok=True)
    trace.write_csv(tr, trace_csv)
    summary = {
        "command": "oscillate",
        "config": cfg.to_dict(),
        "calibrated_params": _calibration_flags(cfg),
        "period_s": _period_or_none(events),
        "n_events": len(events),
        "n_cycles": len(events) // 2,
        "trace_csv": str(trace_csv),
    }
    _write_summary(summary_path, summary)
    _emit(summary)
    return EXIT_OK


def cmd_crawl(args) -> int:
    cfg = _apply_overrides(config.resolve(args.config), args)
    tr, steps = locomotion.simulate_crawl(cfg.oscillator, cfg.robot, cfg.duration_s)
    trace_csv, summary_path = _output_paths(cfg, args, "crawl")
    trace_csv.parent.mkdir(parents=True, exist_ok=True)
    trace.write_csv(tr, trace_csv)
    total = float(tr.robot_X_m[-1] - tr.robot_X_m[0])
    summary = {
        "command": "crawl",
        "config": cfg.to_dict(),
        "calibrated_params": _calibration_flags(cfg),
        "period_s": _period_or_none(steps),
        "avg_speed_m_s": trace.average_speed(tr) if len(tr) >= 2 else None,
        "total_displacement_m": total,
        "n_events": len(steps),
        "n_cycles": len(steps) // 2,
        "trace_csv": str(trace_csv),
        "steps_csv": str(trace.events_path(trace_csv)),
    }
    if steps:
        dec = locomotion.step_decomposition(steps)
        summary.update(
            mean_d_back_m=dec.mean_d_back_m,
            mean_d_thru_m=dec.mean_d_thru_m,
            mean_d_m=dec.mean_d_m,
        )
    ref = MEASURED_CRAWLS.get(cfg.robot.attached_mass_kg)
    if ref is not None:
        summary["measured_reference"] = {
            "total_displacement_m": ref[0],
            "elapsed_s": ref[1],
            "avg_speed_m_s": ref[0] / ref[1],
        }
    _write_summary(summary_path, summary)
    _emit(summary)
    return EXIT_OK


def cmd_model(args) -> int:
    cfg = config.resolve(args.config)
    inp = cfg.speed_input()
    report = analytic.predict_one_gram(inp, args.compare_mass)
    _emit(
        {
            "command": "model",
            "attached_mass_kg": cfg.robot.attached_mass_kg,
            "compare_mass_kg": args.compare_mass,
            "composed_m_s": analytic.avg_speed_composed(inp),
            "printed": analytic.avg_speed_printed(inp),
            "composed_at_compare_m_s": report["composed_m_s"],
            "printed_at_compare": report["printed"],
            "measured_at_1g_m_s": report["measured_m_s"],
            "printed_ratio": report["printed_ratio"],
            "composed_ratio": report["composed_ratio"],
            "measured_ratio": report["measured_ratio"],
            "calibrated_params": _calibration_flags(cfg),
        }
    )
    return EXIT_OK


def cmd_calibrate(args) -> int:
    cfg = config.resolve(args.config)
    current = args.current if args.current is not None else cfg.oscillator.supply_current_A
    eta_E = analytic.calibrate_eta_E(args.target_speed, cfg.robot, cfg.speed_model.period_s)
    beam = dataclasses.replace(
        cfg.oscillator.beam, barrier_energy_J=eta_E / cfg.robot.efficiency
    )
    fitted = analytic.calibrate_thermal(
        args.target_period, current, cfg.oscillator.left, beam, dt_s=cfg.oscillator.dt_s
    )
    _emit(
        {
            "command": "calibrate",
            "target_speed_m_s": args.target_speed,
            "target_period_s": args.target_period,
            "current_A": current,
            "eta_E_J": {"value": eta_E, "calibrated": True},
            "barrier_energy_J": {"value": beam.barrier_energy_J, "calibrated": True},
            "actuator": {
                **config.to_jsonable(fitted),
                "calibrated": ["heat_loss_W_per_K"],
            },
        }
    )
    return EXIT_OK


def cmd_optimize(args) -> int:
    cfg = config.resolve(args.config)
    inp = cfg.speed_input()
    lo, hi = args.bounds
    m_star = analytic.optimize_attached_mass(inp, (lo, hi))
    masses = np.linspace(lo, hi, args.samples)

    def speed(m):
        return analytic.avg_speed_composed(inp.with_attached_mass(float(m)))

    # map() yields in input order whatever the completion order
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        speeds = list(pool.map(speed, masses))
    _emit(
        {
            "command": "optimize",
            "bounds_kg": [lo, hi],
            "m_star_kg": m_star,
            "speed_at_m_star_m_s": speed(m_star),
            "curve": [[float(m), v] for m, v in zip(masses, speeds)],
        }
    )
    return EXIT_OK


def cmd_analyze(args) -> int:
    tr = trace.read_csv(args.trace_csv)
    try:
        period = trace.detect_period(tr)
    except CrawlSimError:
        period = None
    _emit(
        {
            "command": "analyze",
            "n_samples": len(tr),
            "n_events": len(tr.events),
            "period_s": period,
            "avg_speed_m_s": trace.average_speed(tr) if len(tr) >= 2 else None,
            "total_displacement_m": float(tr.robot_X_m[-1] - tr.robot_X_m[0]) if len(tr) else 0.0,
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crawlsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def sim_parser(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("config", help="scenario JSON path or bundled scenario name")
        p.add_argument("--current", type=float, help="supply current [A]")
        p.add_argument("--dt", type=float, help="integration step [s]")
        p.add_argument("--duration", type=float, help="simulated time [s]")
        p.add_argument("--out-dir", default=".", help="directory for default output names")
        p.add_argument("--trace", help="trace CSV path")
        p.add_argument("--summary", help="summary JSON path")
        p.set_defaults(func=func)

    sim_parser("oscillate", cmd_oscillate, "simulate the oscillator alone")
    sim_parser("crawl", cmd_crawl, "simulate oscillator plus robot")

    p = sub.add_parser("model", help="evaluate the closed-form speed model")
    p.add_argument("config")
    p.add_argument("--compare-mass", type=float, default=1.0e-3, help="attached mass to compare [kg]")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("calibrate", help="fit eta*E and actuator heat loss")
    p.add_argument("config")
    p.add_argument("--target-speed", type=float, default=analytic.MEASURED_SPEED_2G)
    p.add_argument("--target-period", type=float, default=analytic.MEASURED_OSC_PERIOD_S)
    p.add_argument("--current", type=float)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("optimize", help="find the speed-maximizing attached mass")
    p.add_argument("config")
    p.add_argument("--bounds", type=float, nargs=2, default=(0.1e-3, 10e-3), metavar=("LO", "HI"))
    p.add_argument("--samples", type=int, default=21)
    p.add_argument("--jobs", type=int, default=4)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("analyze", help="re-run trace analysis on a CSV")
    p.add_argument("trace_csv")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoOscillation as exc:
        print(f"crawlsim: no oscillation: {exc}", file=sys.stderr)
        return EXIT_NO_OSCILLATION
    except (CrawlSimError, InvalidConfig, FileNotFoundError) as exc:
        print(f"crawlsim: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
