"""Stick-slip ratchet coupling snap events to robot displacement.

Each snap releases the beam energy into the attached mass, which then merges
inelastically with the body; the lumped robot glides forward until forward
Coulomb friction stops it. Backward recoil is assumed fully stuck by the
larger backward friction, so the robot only ever moves forward and only at
snap instants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beam import released_energy
from .errors import EmptySteps, InvalidConfig
from .events import CrawlStep, SnapKind
from .oscillator import OscillatorConfig, simulate_oscillator
from .trace import Trace

STANDARD_GRAVITY = 9.81


@dataclass(frozen=True)
class RobotParams:
    body_mass_kg: float = 1.8e-3
    attached_mass_kg: float = 2.0e-3
    mu_forward: float = 0.36
    mu_backward: float = 0.72
    efficiency: float = 1.0
    gravity_m_s2: float = STANDARD_GRAVITY
    thru_velocity_factor: float = 1.0

    def __post_init__(self):
        if not self.body_mass_kg > 0:
            raise InvalidConfig(f"body_mass_kg must be > 0, got {self.body_mass_kg}")
        if not self.attached_mass_kg > 0:
            raise InvalidConfig(f"attached_mass_kg must be > 0, got {self.attached_mass_kg}")
        if not 0 < self.mu_forward <= self.mu_backward:
            raise InvalidConfig(
                f"need 0 < mu_forward <= mu_backward, got {self.mu_forward}, {self.mu_backward}"
            )
        if not 0 < self.efficiency <= 1:
            raise InvalidConfig(f"efficiency must be in (0, 1], got {self.efficiency}")
        if not self.gravity_m_s2 > 0:
            raise InvalidConfig(f"gravity_m_s2 must be > 0, got {self.gravity_m_s2}")
        if not 0 <= self.thru_velocity_factor <= 1:
            raise InvalidConfig(
                f"thru_velocity_factor must be in [0, 1], got {self.thru_velocity_factor}"
            )

    @property
    def total_mass_kg(self) -> float:
        return self.body_mass_kg + self.attached_mass_kg


def snap_impulse_velocity(E: float, r: RobotParams, kind: SnapKind = SnapKind.SNAP_BACK) -> float:
    """Initial robot speed right after a snap releases energy ``E``.

    The mass leaves the beam at ``sqrt(2 eta E / m)`` and merges with the
    body, so momentum conservation scales it by ``m / (M + m)``.
    """
    if not E > 0:
        raise InvalidConfig(f"released energy must be > 0, got {E}")
    m = r.attached_mass_kg
    v = math.sqrt(2.0 * r.efficiency * E / m) * m / r.total_mass_kg
    if kind is SnapKind.SNAP_THROUGH:
        v *= r.thru_velocity_factor
    return v


def glide_distance(v_init: float, r: RobotParams) -> float:
    if v_init < 0:
        raise InvalidConfig(f"v_init must be >= 0, got {v_init}")
    return v_init * v_init / (2.0 * r.mu_forward * r.gravity_m_s2)


def step_for(E: float, r: RobotParams, kind: SnapKind) -> float:
    return glide_distance(snap_impulse_velocity(E, r, kind), r)


def simulate_crawl(
    osc: OscillatorConfig, r: RobotParams, duration_s: float
) -> tuple[Trace, list[CrawlStep]]:
    """Oscillator simulation with the robot advancing one glide per snap."""
    otrace, events = simulate_oscillator(osc, duration_s)
    E = released_energy(osc.beam)
    dist = {k: step_for(E, r, k) for k in SnapKind}
    steps = [CrawlStep(e.time_s, e.kind, dist[e.kind]) for e in events]

    times = np.array([s.time_s for s in steps])
    cum = np.concatenate([[0.0], np.cumsum([s.distance_m for s in steps])])
    # events on a grid instant are already applied in that sample
    robot_x = cum[np.searchsorted(times, otrace.time_s, side="right")]
    trace = Trace(
        dt_s=otrace.dt_s,
        time_s=otrace.time_s,
        beam_x_m=otrace.beam_x_m,
        robot_X_m=robot_x,
        temp_left_K=otrace.temp_left_K,
        temp_right_K=otrace.temp_right_K,
        powered=otrace.powered,
        events=tuple(steps),
    )
    return trace, steps


@dataclass(frozen=True)
class StepSummary:
    mean_d_back_m: float
    mean_d_thru_m: float
    mean_d_m: float


def step_decomposition(steps) -> StepSummary:
    """Mean per-kind step lengths and their sum, the per-cycle advance."""
    if not steps:
        raise EmptySteps("step_decomposition needs at least one step")

    def mean_of(kind):
        d = [s.distance_m for s in steps if s.kind is kind]
        return float(np.mean(d)) if d else 0.0

    back = mean_of(SnapKind.SNAP_BACK)
    thru = mean_of(SnapKind.SNAP_THROUGH)
    return StepSummary(back, thru, back + thru)
