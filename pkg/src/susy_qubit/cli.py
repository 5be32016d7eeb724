"""Command-line surface: simulate / validate / convergence / describe / presets.

Exit codes: 0 on success, 2 when a validation run exceeds its tolerance,
1 on usage or runtime errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import (
    AmplitudeOverflowError,
    InvalidParameterError,
    PoleProximityError,
    regime_constant,
)
from .integrator import convergence_report
from .kernels import KERNEL_BACKEND
from .scenarios import (
    PRESET_NAMES,
    VALIDATION_DT,
    VALIDATION_TOLERANCE,
    ConfigError,
    Scenario,
    UnknownPresetError,
    detect_ground_state_touches,
    emit_csv,
    parse_config,
    preset,
    run,
    w_argmin,
    with_grid,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TOLERANCE = 2


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario", help=f"preset name ({', '.join(PRESET_NAMES)})")
    group.add_argument("--config", help="path to a JSON scenario configuration")
    parser.add_argument("--dt", type=float, help="grid step override")
    parser.add_argument("--t-max", type=float, help="end-time override")
    parser.add_argument("--mag-cap", type=float, help="magnitude cap override")


def _load_scenario(args: argparse.Namespace) -> Scenario:
    if args.scenario is not None:
        scenario = preset(args.scenario)
    else:
        scenario = parse_config(Path(args.config).read_text(encoding="utf-8"))
    return with_grid(scenario, dt=args.dt, t_max=getattr(args, "t_max", None))


def _describe(scenario: Scenario, stream) -> None:
    # repr of a float is the shortest string that round-trips exactly
    p = scenario.params
    print(f"name:           {scenario.name}", file=stream)
    print(f"version:        {scenario.version}", file=stream)
    print(f"k:              {p.k!r}", file=stream)
    print(f"theta:          {p.theta!r}", file=stream)
    print(f"phi:            {p.phi!r}", file=stream)
    print(f"regime:         {p.regime.value}", file=stream)
    print(f"regime constant: {regime_constant(p)!r}", file=stream)
    print(f"frame:          {scenario.frame.value}", file=stream)
    print(f"initial rule:   {scenario.initial_rule}", file=stream)
    state = scenario.initial_state()
    print(f"initial state:  amp1 = {state.amp1!r}, amp2 = {state.amp2!r}", file=stream)
    print(f"t_min:          {scenario.t_min!r}", file=stream)
    print(f"t_max:          {scenario.t_max!r}", file=stream)
    print(f"dt:             {scenario.dt!r}", file=stream)
    print(f"outputs:        {','.join(scenario.outputs)}", file=stream)


def _cmd_presets(args: argparse.Namespace) -> int:
    for name in PRESET_NAMES:
        s = preset(name)
        p = s.params
        print(
            f"{name:15s} k={p.k:<8g} theta={p.theta:<6g} phi={p.phi:<7g} "
            f"frame={s.frame.value} rule={s.initial_rule} "
            f"window=[{s.t_min:g}, {s.t_max:g}] dt={s.dt:g}"
        )
    return EXIT_OK


def _cmd_describe(args: argparse.Namespace) -> int:
    _describe(_load_scenario(args), sys.stdout)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    traj = run(scenario, method=args.method, magnitude_cap=args.mag_cap)
    if args.output is None:
        emit_csv(traj, sys.stdout, columns=scenario.outputs)
    else:
        emit_csv(traj, args.output, columns=scenario.outputs)
        touches = detect_ground_state_touches(traj)
        low = w_argmin(traj)
        print(f"wrote {len(traj)} rows to {args.output} (method={args.method})", file=sys.stderr)
        print(
            f"W minimum {low.w:.6f} at t = {low.t:.6g} "
            f"(bracket [{low.bracket[0]:.6g}, {low.bracket[1]:.6g}]); "
            f"ground-state touches within 2e-3: {len(touches)}",
            file=sys.stderr,
        )
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    dt = args.dt if args.dt is not None else VALIDATION_DT
    exact, numeric, report = run(
        with_grid(scenario, dt=dt), method="both", magnitude_cap=args.mag_cap
    )
    print(f"scenario {scenario.name}: analytic vs rk4 on dt = {dt:g} "
          f"({len(exact)} points, kernel backend: {KERNEL_BACKEND})")
    print("max deviation per column:")
    for line in report.lines():
        print("  " + line)
    verdict = report.amplitude <= args.tol
    print(f"amplitude deviation {report.amplitude:.6e} "
          f"{'<=' if verdict else '>'} tolerance {args.tol:g}")
    return EXIT_OK if verdict else EXIT_TOLERANCE


def _cmd_convergence(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args)
    report = convergence_report(
        scenario.params,
        scenario.initial_state(),
        base_dt=args.base_dt,
        levels=args.levels,
        t_max=scenario.t_max,
        frame=scenario.frame,
        magnitude_cap=args.mag_cap,
    )
    print(f"scenario {scenario.name}: RK4 convergence against the closed form")
    print(f"{'dt':>12s} {'max error':>14s} {'order':>8s}  note")
    for level in report:
        order = "-" if level.observed_order is None else f"{level.observed_order:.3f}"
        note = "floor-saturated" if level.floor_saturated else ""
        print(f"{level.dt:12.6g} {level.max_error:14.6e} {order:>8s}  {note}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="susy-qubit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("presets", help="list preset scenarios").set_defaults(func=_cmd_presets)

    describe = sub.add_parser("describe", help="echo a scenario's fields")
    _add_scenario_flags(describe)
    describe.set_defaults(func=_cmd_describe)

    simulate = sub.add_parser("simulate", help="run a scenario and emit CSV")
    _add_scenario_flags(simulate)
    simulate.add_argument("--method", choices=("analytic", "rk4"), default="analytic")
    simulate.add_argument("--output", help="CSV destination (stdout when omitted)")
    simulate.set_defaults(func=_cmd_simulate)

    validate = sub.add_parser(
        "validate", help="compare analytic and rk4 trajectories"
    )
    _add_scenario_flags(validate)
    validate.add_argument(
        "--tol", type=float, default=VALIDATION_TOLERANCE,
        help="amplitude tolerance (exit 2 beyond it)",
    )
    validate.set_defaults(func=_cmd_validate)

    convergence = sub.add_parser("convergence", help="RK4 step-halving report")
    _add_scenario_flags(convergence)
    convergence.add_argument("--base-dt", type=float, default=4e-3)
    convergence.add_argument("--levels", type=int, default=3)
    convergence.set_defaults(func=_cmd_convergence)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ConfigError, UnknownPresetError, InvalidParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (PoleProximityError, AmplitudeOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
