"""Event-driven simulation of the self-sustained origami oscillator.

The beam is quasi-static: it sits at the bottom of its current well until the
net antagonistic pull ``tension(powered) - tension(unpowered)`` reaches the
beam's critical force, at which point it snaps instantly to the other well
and the biased contacts swap which actuator is powered.

Thermal states are advanced on a fixed grid with exact exponential updates.
Inside a step the snap instant is solved for directly, the swap is applied
there, and the rest of the step is integrated with the new contact state, so
event times do not depend on the grid spacing.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .actuator import ActuatorParams, ActuatorState, electrical_power
from .beam import BeamParams, BeamState, Well, critical_force
from .errors import InvalidConfig, NoOscillation, TooFewEvents
from .events import SnapEvent, SnapKind
from .trace import Trace


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class OscillatorConfig:
    beam: BeamParams = field(default_factory=BeamParams)
    left: ActuatorParams = field(default_factory=ActuatorParams)
    right: ActuatorParams = field(default_factory=ActuatorParams)
    supply_current_A: float = 0.62
    dt_s: float = 0.01
    initial_well: Well = Well.STATE1

    def __post_init__(self):
        if not self.supply_current_A >= 0:
            raise InvalidConfig(f"supply_current_A must be >= 0, got {self.supply_current_A}")
        if not self.dt_s > 0:
            raise InvalidConfig(f"dt_s must be > 0, got {self.dt_s}")


@dataclass(frozen=True)
class OscState:
    beam: BeamState
    left: ActuatorState
    right: ActuatorState
    time_s: float = 0.0

    def __post_init__(self):
        if self.left.powered == self.right.powered:
            raise InvalidConfig("exactly one actuator must be powered")

    @classmethod
    def initial(cls, cfg: OscillatorConfig) -> "OscState":
        beam = BeamState.at_rest(cfg.initial_well, cfg.beam)
        side = powered_side(beam)
        return cls(
            beam,
            ActuatorState.ambient(cfg.left, side is Side.LEFT),
            ActuatorState.ambient(cfg.right, side is Side.RIGHT),
        )


def powered_side(beam: BeamState) -> Side:
    """Side whose biased contact is closed for the beam's current well."""
    return Side.RIGHT if beam.well is Well.STATE1 else Side.LEFT


def _snap_kind(from_well: Well) -> SnapKind:
    return SnapKind.SNAP_THROUGH if from_well is Well.STATE1 else SnapKind.SNAP_BACK


def equilibrium_pull(cfg: OscillatorConfig, side: Side) -> float:
    """Best-case net pull with ``side`` at powered equilibrium and the other at ambient."""
    p = cfg.left if side is Side.LEFT else cfg.right
    return p.tension_coeff_N_per_K * electrical_power(cfg.supply_current_A, p) / p.heat_loss_W_per_K


def check_oscillation(cfg: OscillatorConfig) -> None:
    """Raise :class:`NoOscillation` if either side can never trigger a snap."""
    f_crit = critical_force(cfg.beam)
    for side in Side:
        pull = equilibrium_pull(cfg, side)
        if pull <= f_crit:
            shortfall = f_crit - pull
            raise NoOscillation(
                f"{side.value} actuator equilibrium pull {pull:.6g} N never exceeds "
                f"critical force {f_crit:.6g} N (shortfall {shortfall:.6g} N)",
                shortfall_N=shortfall,
            )


class _Kernel:
    """Scalar hot loop state; temperatures are rises above ambient."""

    def __init__(self, cfg: OscillatorConfig):
        self.f_crit = critical_force(cfg.beam)
        self.params = {Side.LEFT: cfg.left, Side.RIGHT: cfg.right}
        self.tau = {s: p.time_constant_s for s, p in self.params.items()}
        self.k = {s: p.tension_coeff_N_per_K for s, p in self.params.items()}
        self.rise_eq = {
            s: electrical_power(cfg.supply_current_A, p) / p.heat_loss_W_per_K
            for s, p in self.params.items()
        }
        self.rise = {Side.LEFT: 0.0, Side.RIGHT: 0.0}
        self.well = cfg.initial_well

    @property
    def powered(self) -> Side:
        return Side.RIGHT if self.well is Well.STATE1 else Side.LEFT

    @property
    def unpowered(self) -> Side:
        return Side.LEFT if self.well is Well.STATE1 else Side.RIGHT

    def _rises_after(self, dt: float) -> tuple[float, float]:
        on, off = self.powered, self.unpowered
        eq = self.rise_eq[on]
        r_on = eq + (self.rise[on] - eq) * math.exp(-dt / self.tau[on])
        r_off = self.rise[off] * math.exp(-dt / self.tau[off])
        return r_on, r_off

    def _pull(self, r_on: float, r_off: float) -> float:
        return self.k[self.powered] * max(r_on, 0.0) - self.k[self.unpowered] * max(r_off, 0.0)

    def advance(self, dt: float) -> None:
        if dt <= 0:
            return
        r_on, r_off = self._rises_after(dt)
        self.rise[self.powered] = r_on
        self.rise[self.unpowered] = r_off

    def time_to_snap(self, horizon: float) -> float | None:
        """Delay until the snap condition holds, or None if not within ``horizon``."""
        on, off = self.powered, self.unpowered
        if self._pull(self.rise[on], self.rise[off]) >= self.f_crit:
            return 0.0
        if horizon <= 0 or self._pull(*self._rises_after(horizon)) < self.f_crit:
            return None
        if self.tau[on] == self.tau[off]:
            # pull(t) = A - B exp(-t / tau)
            a = self.k[on] * self.rise_eq[on]
            b = self.k[on] * (self.rise_eq[on] - self.rise[on]) + self.k[off] * self.rise[off]
            t = self.tau[on] * math.log(b / (a - self.f_crit))
            return min(max(t, 0.0), horizon)
        return brentq(lambda t: self._pull(*self._rises_after(t)) - self.f_crit, 0.0, horizon, xtol=1e-14)

    def snap(self) -> SnapKind:
        kind = _snap_kind(self.well)
        self.well = self.well.other()
        return kind


def _validate_duration(duration_s: float) -> None:
    if not (duration_s > 0 and math.isfinite(duration_s)):
        raise InvalidConfig(f"duration_s must be a finite number > 0, got {duration_s}")


def _n_samples(duration_s: float, dt_s: float) -> int:
    return int(math.floor(duration_s / dt_s + 1e-9)) + 1


def snap_events(cfg: OscillatorConfig, duration_s: float) -> list[SnapEvent]:
    """Event times only; same dynamics as :func:`simulate_oscillator` without the trace."""
    _validate_duration(duration_s)
    check_oscillation(cfg)
    kern = _Kernel(cfg)
    t = 0.0
    events = []
    while True:
        te = kern.time_to_snap(duration_s - t)
        if te is None:
            return events
        kern.advance(te)
        t += te
        events.append(SnapEvent(t, kern.snap()))


def simulate_oscillator(cfg: OscillatorConfig, duration_s: float) -> tuple[Trace, list[SnapEvent]]:
    """Run the oscillator from a cold start and sample it every ``cfg.dt_s``.

    Raises
    ------
    InvalidConfig
        Nonpositive duration.
    NoOscillation
        The supply cannot heat either actuator enough to beat the critical force.
    """
    _validate_duration(duration_s)
    check_oscillation(cfg)
    kern = _Kernel(cfg)
    dt = cfg.dt_s
    n = _n_samples(duration_s, dt)
    a = cfg.beam.half_separation_m
    amb_l, amb_r = cfg.left.ambient_K, cfg.right.ambient_K

    beam_x = np.empty(n)
    temp_l = np.empty(n)
    temp_r = np.empty(n)
    powered = np.empty(n, dtype="<U5")
    events: list[SnapEvent] = []

    def record(i):
        beam_x[i] = kern.well.sign * a
        temp_l[i] = amb_l + kern.rise[Side.LEFT]
        temp_r[i] = amb_r + kern.rise[Side.RIGHT]
        powered[i] = kern.powered.value

    record(0)
    t = 0.0
    for i in range(1, n):
        t_next = i * dt
        while True:
            horizon = t_next - t
            te = kern.time_to_snap(horizon)
            if te is None:
                kern.advance(horizon)
                t = t_next
                break
            kern.advance(te)
            t += te
            events.append(SnapEvent(t, kern.snap()))
        record(i)

    trace = Trace(
        dt_s=dt,
        time_s=np.arange(n) * dt,
        beam_x_m=beam_x,
        robot_X_m=np.zeros(n),
        temp_left_K=temp_l,
        temp_right_K=temp_r,
        powered=powered,
        events=tuple(events),
    )
    return trace, events


def measure_period(events) -> float:
    """Mean spacing between consecutive events of the same kind."""
    if len(events) < 3:
        raise TooFewEvents(f"need at least 3 snap events, got {len(events)}")
    gaps = []
    for kind in SnapKind:
        times = np.array([e.time_s for e in events if e.kind is kind])
        gaps.append(np.diff(times))
    return float(np.mean(np.concatenate(gaps)))


def half_periods(events) -> np.ndarray:
    times = np.array([e.time_s for e in events])
    return np.diff(times)
