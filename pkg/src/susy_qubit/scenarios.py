"""Preset scenarios reproducing the three driving families, configuration
ingestion, and deterministic CSV emission.

The three presets pin one reference parameter set per family:

    decaying        k = 1.566, theta = -0.83, phi = 3.14, bounded-branch rule
    hyperbolic      k = -0.49, theta = -25, phi = -0.54, c(0) = (1, 1)/sqrt(2)
    trigonometric   k = -5.8,  theta = -25, phi = 0.455, c(0) = (-1, 1)/sqrt(2)

Default grids are a repository choice: the decaying window is [0, 10] and
the two oscillatory windows [0, 50], which cover the transition features
near t = 25 for the theta = -25 scenarios; dt = 1e-3 for CSV output and
1e-4 for validation runs.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .analytic import analytic_trajectory
from .core import (
    Frame,
    InvalidParameterError,
    ModelParams,
    SpinorState,
    Trajectory,
)
from .driving import eval_f
from .integrator import IntegratorConfig, integrate

PRESETS_VERSION = "1"

VALIDATION_DT = 1e-4
VALIDATION_TOLERANCE = 1e-6

CSV_COLUMNS = (
    "t",
    "a1_re", "a1_im", "a2_re", "a2_im",
    "c1_re", "c1_im", "c2_re", "c2_im",
    "f_re", "f_im",
    "W", "P", "W_over_P",
)

RULE_EXPLICIT = "explicit"
RULE_DECAYING_LIMIT = "decaying_limit"


class UnknownPresetError(LookupError):
    pass


class ConfigError(ValueError):
    """Carries per-key diagnostics for a rejected configuration."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.problems))


@dataclass(frozen=True)
class Scenario:
    """An immutable, version-stamped simulation setup."""

    name: str
    params: ModelParams
    frame: Frame
    initial_rule: str                      # "explicit" or "decaying_limit"
    initial: tuple[complex, complex] | None  # None under the decaying rule
    t_min: float
    t_max: float
    dt: float
    outputs: tuple[str, ...] = CSV_COLUMNS
    version: str = PRESETS_VERSION

    def __post_init__(self):
        if self.initial_rule not in (RULE_EXPLICIT, RULE_DECAYING_LIMIT):
            raise InvalidParameterError(f"unknown initial rule {self.initial_rule!r}")
        if self.initial_rule == RULE_EXPLICIT and self.initial is None:
            raise InvalidParameterError("explicit rule requires initial amplitudes")
        if self.initial_rule == RULE_DECAYING_LIMIT:
            if self.params.k <= 0:
                raise InvalidParameterError(
                    f"decaying_limit requires k > 0, got k = {self.params.k!r}"
                )
            if self.frame is not Frame.A:
                raise InvalidParameterError("decaying_limit produces a rotated-frame state")
        if not (self.t_max > self.t_min):
            raise InvalidParameterError("t_max must exceed t_min")
        if not (self.dt > 0):
            raise InvalidParameterError("dt must be > 0")
        unknown = set(self.outputs) - set(CSV_COLUMNS)
        if unknown:
            raise InvalidParameterError(f"unknown output columns: {sorted(unknown)}")

    def initial_state(self) -> SpinorState:
        """The concrete initial state at t_min (applies the decaying rule)."""
        if self.initial_rule == RULE_EXPLICIT:
            return SpinorState(self.t_min, self.initial[0], self.initial[1], self.frame)
        return decaying_limit_state(self.params, self.t_min)


def decaying_limit_state(params: ModelParams, t: float = 0.0) -> SpinorState:
    """Unit-norm state on the bounded decaying branch: the second amplitude
    is locked to i*a1*(f + sqrt(k)) and a1 normalizes the pair."""
    if params.k <= 0:
        raise InvalidParameterError("the decaying branch requires k > 0")
    f = eval_f(params, t).f
    shifted = f + math.sqrt(params.k)
    a1 = 1.0 / math.sqrt(1.0 + abs(shifted) ** 2)
    return SpinorState(t, complex(a1), 1j * a1 * shifted, Frame.A)


_SQRT_HALF = 1.0 / math.sqrt(2.0)

_PRESETS: dict[str, Scenario] = {
    "decaying": Scenario(
        name="decaying",
        params=ModelParams(k=1.566, theta=-0.83, phi=3.14),
        frame=Frame.A,
        initial_rule=RULE_DECAYING_LIMIT,
        initial=None,
        t_min=0.0, t_max=10.0, dt=1e-3,
    ),
    "hyperbolic": Scenario(
        name="hyperbolic",
        params=ModelParams(k=-0.49, theta=-25.0, phi=-0.54),
        frame=Frame.C,
        initial_rule=RULE_EXPLICIT,
        initial=(complex(_SQRT_HALF), complex(_SQRT_HALF)),
        t_min=0.0, t_max=50.0, dt=1e-3,
    ),
    "trigonometric": Scenario(
        name="trigonometric",
        params=ModelParams(k=-5.8, theta=-25.0, phi=0.455),
        frame=Frame.C,
        initial_rule=RULE_EXPLICIT,
        initial=(complex(-_SQRT_HALF), complex(_SQRT_HALF)),
        t_min=0.0, t_max=50.0, dt=1e-3,
    ),
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> Scenario:
    try:
        return _PRESETS[name]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}"
        ) from None


@dataclass(frozen=True)
class DeviationReport:
    """Per-column max deviation between two trajectories on one grid."""

    columns: dict[str, float]

    @property
    def amplitude(self) -> float:
        """Max deviation over the four amplitude columns (both frames)."""
        return max(self.columns[name] for name in ("a1", "a2", "c1", "c2"))

    def lines(self) -> list[str]:
        return [f"{name:>8s}  {value:.6e}" for name, value in self.columns.items()]


def compare_trajectories(first: Trajectory, second: Trajectory) -> DeviationReport:
    if len(first) != len(second) or not np.array_equal(first.grid, second.grid):
        raise InvalidParameterError("trajectories live on different grids")
    columns = {}
    for name in ("a1", "a2", "c1", "c2", "f"):
        columns[name] = float(np.abs(getattr(first, name) - getattr(second, name)).max())
    for name in ("w", "p"):
        columns[name] = float(np.abs(getattr(first, name) - getattr(second, name)).max())
    return DeviationReport(columns=columns)


def _grid(scenario: Scenario, dt: float) -> np.ndarray:
    n = int(round((scenario.t_max - scenario.t_min) / dt))
    return scenario.t_min + np.arange(n + 1) * dt


def run(
    scenario: Scenario,
    method: str = "analytic",
    dt: float | None = None,
    magnitude_cap: float | None = None,
):
    """Evaluate a scenario.

    method "analytic" or "rk4" returns one Trajectory; "both" returns
    (analytic, rk4, DeviationReport).
    """
    dt = scenario.dt if dt is None else dt
    initial = scenario.initial_state()
    if method == "analytic":
        return analytic_trajectory(scenario.params, initial, _grid(scenario, dt), magnitude_cap)
    if method == "rk4":
        config = IntegratorConfig(
            dt=dt, t_max=scenario.t_max, frame=scenario.frame, magnitude_cap=magnitude_cap
        )
        return integrate(scenario.params, initial, config)
    if method == "both":
        exact = analytic_trajectory(scenario.params, initial, _grid(scenario, dt), magnitude_cap)
        config = IntegratorConfig(
            dt=dt, t_max=scenario.t_max, frame=scenario.frame, magnitude_cap=magnitude_cap
        )
        numeric = integrate(scenario.params, initial, config)
        return exact, numeric, compare_trajectories(exact, numeric)
    raise InvalidParameterError(f"unknown method {method!r}; use analytic, rk4 or both")


def _format_number(x: float) -> str:
    return format(float(x), ".17g")


def _column_arrays(traj: Trajectory) -> dict[str, np.ndarray]:
    return {
        "t": traj.grid,
        "a1_re": traj.a1.real, "a1_im": traj.a1.imag,
        "a2_re": traj.a2.real, "a2_im": traj.a2.imag,
        "c1_re": traj.c1.real, "c1_im": traj.c1.imag,
        "c2_re": traj.c2.real, "c2_im": traj.c2.imag,
        "f_re": traj.f.real, "f_im": traj.f.imag,
        "W": traj.w, "P": traj.p, "W_over_P": traj.w_over_p,
    }


def emit_csv(traj: Trajectory, destination, columns: Iterable[str] | None = None) -> None:
    """Write the trajectory as CSV: header plus one row per grid point,
    numbers at 17 significant digits (lossless for doubles), LF endings,
    comma delimiter, no padding.  Identical trajectories produce identical
    bytes."""
    names = tuple(columns) if columns is not None else CSV_COLUMNS
    unknown = set(names) - set(CSV_COLUMNS)
    if unknown:
        raise InvalidParameterError(f"unknown output columns: {sorted(unknown)}")
    arrays = _column_arrays(traj)
    selected = [arrays[name] for name in names]

    def _write(handle) -> None:
        handle.write(",".join(names) + "\n")
        for i in range(len(traj)):
            handle.write(",".join(_format_number(col[i]) for col in selected) + "\n")

    if isinstance(destination, (str, bytes)) or hasattr(destination, "__fspath__"):
        try:
            with open(destination, "w", encoding="ascii", newline="\n") as handle:
                _write(handle)
        except OSError as exc:
            raise OSError(f"cannot write CSV to {destination!r}: {exc}") from exc
    else:
        _write(destination)


def csv_bytes(traj: Trajectory, columns: Iterable[str] | None = None) -> bytes:
    buffer = io.StringIO()
    emit_csv(traj, buffer, columns)
    return buffer.getvalue().encode("ascii")


def read_csv(source) -> dict[str, np.ndarray]:
    """Parse an emitted CSV back into named columns (lossless round-trip)."""
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "r", encoding="ascii", newline="\n") as handle:
            text = handle.read()
    else:
        text = source.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ConfigError(["CSV source is empty"])
    names = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    for number, row in enumerate(rows, start=2):
        if len(row) != len(names):
            raise ConfigError([f"line {number}: expected {len(names)} fields, got {len(row)}"])
    data = np.array([[float(cell) for cell in row] for row in rows], dtype=float)
    if data.size == 0:
        data = data.reshape(0, len(names))
    return {name: data[:, j] for j, name in enumerate(names)}


_CONFIG_KEYS = (
    "k", "theta", "phi", "t_min", "t_max", "dt", "frame",
    "initial_1_re", "initial_1_im", "initial_2_re", "initial_2_im",
    "initial_rule",
)
_NUMERIC_KEYS = ("k", "theta", "phi", "t_min", "t_max", "dt",
                 "initial_1_re", "initial_1_im", "initial_2_re", "initial_2_im")


def parse_config(text: str) -> Scenario:
    """Validate a flat JSON object into a Scenario.

    Required keys: k, theta, phi, t_min, t_max, dt, frame ("a"/"c") and
    initial_rule ("explicit"/"decaying_limit"); the four initial_* numbers
    are required exactly when the rule is explicit.  All problems are
    reported together, one diagnostic per key.
    """
    problems: list[str] = []
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"not valid JSON: {exc}"]) from None
    if not isinstance(raw, dict):
        raise ConfigError(["top level must be a JSON object of key/value pairs"])

    for key in sorted(set(raw) - set(_CONFIG_KEYS)):
        problems.append(f"{key}: unknown key")

    values: dict[str, float] = {}
    for key in _NUMERIC_KEYS:
        if key not in raw:
            continue
        value = raw[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            problems.append(f"{key}: expected a number, got {value!r}")
        elif not math.isfinite(value):
            problems.append(f"{key}: must be finite")
        else:
            values[key] = float(value)

    rule = raw.get("initial_rule")
    if rule is None:
        problems.append("initial_rule: missing (explicit or decaying_limit)")
    elif rule not in (RULE_EXPLICIT, RULE_DECAYING_LIMIT):
        problems.append(
            f"initial_rule: expected explicit or decaying_limit, got {rule!r}"
        )

    frame_raw = raw.get("frame")
    frame: Frame | None = None
    if frame_raw is None:
        problems.append("frame: missing (a or c)")
    elif frame_raw not in ("a", "c"):
        problems.append(f"frame: expected 'a' or 'c', got {frame_raw!r}")
    else:
        frame = Frame(frame_raw)

    for key in ("k", "theta", "phi", "t_min", "t_max", "dt"):
        if key not in raw:
            problems.append(f"{key}: missing")

    if rule == RULE_EXPLICIT:
        for key in ("initial_1_re", "initial_1_im", "initial_2_re", "initial_2_im"):
            if key not in raw:
                problems.append(f"{key}: missing (required for the explicit rule)")
    if rule == RULE_DECAYING_LIMIT:
        if "k" in values and values["k"] <= 0:
            problems.append(
                f"initial_rule: decaying_limit requires k > 0, got k = {values['k']:g} "
                "(no bounded decaying branch in this regime)"
            )
        if frame is Frame.C:
            problems.append("frame: decaying_limit produces a rotated-frame state; use frame 'a'")

    if "dt" in values and values["dt"] <= 0:
        problems.append("dt: must be > 0")
    if "t_min" in values and "t_max" in values and not values["t_max"] > values["t_min"]:
        problems.append("t_max: must exceed t_min")

    if problems:
        raise ConfigError(problems)

    initial = None
    if rule == RULE_EXPLICIT:
        initial = (
            complex(values["initial_1_re"], values["initial_1_im"]),
            complex(values["initial_2_re"], values["initial_2_im"]),
        )
    return Scenario(
        name="custom",
        params=ModelParams(k=values["k"], theta=values["theta"], phi=values["phi"]),
        frame=frame,
        initial_rule=rule,
        initial=initial,
        t_min=values["t_min"],
        t_max=values["t_max"],
        dt=values["dt"],
    )


@dataclass(frozen=True)
class GroundStateTouch:
    """A local minimum of W that reaches the ground state within tolerance.

    ``bracket`` is the pair of neighbouring grid times; no claim of an
    exact root is made beyond the bracketing interval.
    """

    index: int
    t: float
    w: float
    bracket: tuple[float, float]


def detect_ground_state_touches(
    traj: Trajectory, tolerance: float = 2e-3, min_separation: float = 0.5
) -> list[GroundStateTouch]:
    """Grid-local minima of W with W <= -1 + tolerance, at least
    ``min_separation`` apart in time."""
    touches: list[GroundStateTouch] = []
    w = traj.w
    grid = traj.grid
    threshold = -1.0 + tolerance
    for i in range(1, len(w) - 1):
        if w[i] <= threshold and w[i] <= w[i - 1] and w[i] <= w[i + 1]:
            if touches and grid[i] - touches[-1].t < min_separation:
                if w[i] < touches[-1].w:
                    touches[-1] = GroundStateTouch(
                        i, float(grid[i]), float(w[i]),
                        (float(grid[i - 1]), float(grid[i + 1])),
                    )
                continue
            touches.append(
                GroundStateTouch(
                    i, float(grid[i]), float(w[i]),
                    (float(grid[i - 1]), float(grid[i + 1])),
                )
            )
    return touches


def w_argmin(traj: Trajectory) -> GroundStateTouch:
    """Grid argmin of W with its bracketing interval."""
    i = int(np.argmin(traj.w))
    lo = float(traj.grid[max(i - 1, 0)])
    hi = float(traj.grid[min(i + 1, len(traj) - 1)])
    return GroundStateTouch(i, float(traj.grid[i]), float(traj.w[i]), (lo, hi))


def with_grid(scenario: Scenario, dt: float | None = None, t_max: float | None = None) -> Scenario:
    """A copy of the scenario with grid overrides applied."""
    changes = {}
    if dt is not None:
        changes["dt"] = dt
    if t_max is not None:
        changes["t_max"] = t_max
    return replace(scenario, **changes) if changes else scenario
