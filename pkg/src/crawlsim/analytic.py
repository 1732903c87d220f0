"""Closed-form crawl speed model, calibration, and attached-mass optimization.

Two speed formulas are kept side by side:

* ``avg_speed_composed`` chains impulse velocity -> glide distance -> two
  glides per period. It is dimensionally a velocity and is the canonical
  model used for calibration and optimization.
* ``avg_speed_printed`` is the widely quoted shorthand
  ``2 eta E / (mu g (M/m + 1)^2 T)``. It equals the composed form times the
  attached mass in kilograms, so it is not a velocity, but its mass ratios
  are what the published 2.2x speed-reduction figure comes from.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .actuator import ActuatorParams
from .beam import BeamParams, critical_force
from .errors import InvalidBounds, InvalidConfig, NoOscillation, TooFewEvents, Unachievable
from .events import SnapKind
from .locomotion import RobotParams, glide_distance, snap_impulse_velocity
from .oscillator import OscillatorConfig, equilibrium_pull, Side, measure_period, snap_events

# measured crawls: 146.0 mm in 350.1 s with 2 g, 39 mm in 240 s with 1 g
MEASURED_SPEED_2G = 146.0e-3 / 350.1
MEASURED_SPEED_1G = 39.0e-3 / 240.0
MEASURED_MASS_PERIOD_S = 3.3
MEASURED_OSC_PERIOD_S = 3.4

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SpeedModelInput:
    robot: RobotParams
    eta_E_J: float
    period_s: float

    def __post_init__(self):
        if not self.eta_E_J > 0:
            raise InvalidConfig(f"eta_E_J must be > 0, got {self.eta_E_J}")
        if not self.period_s > 0:
            raise InvalidConfig(f"period_s must be > 0, got {self.period_s}")

    def with_attached_mass(self, m: float) -> "SpeedModelInput":
        return replace(self, robot=replace(self.robot, attached_mass_kg=m))


def _energy_for(inp: SpeedModelInput) -> float:
    # the robot applies its efficiency on top of E, so hand it eta_E / eta
    return inp.eta_E_J / inp.robot.efficiency


def avg_speed_composed(inp: SpeedModelInput) -> float:
    v0 = snap_impulse_velocity(_energy_for(inp), inp.robot, SnapKind.SNAP_BACK)
    return 2.0 * glide_distance(v0, inp.robot) / inp.period_s


def avg_speed_closed_form(inp: SpeedModelInput) -> float:
    """``2 eta E m / (mu g (M + m)^2 T)``; algebraically equal to the composed form."""
    r = inp.robot
    m = r.attached_mass_kg
    return 2.0 * inp.eta_E_J * m / (r.mu_forward * r.gravity_m_s2 * r.total_mass_kg**2 * inp.period_s)


def avg_speed_printed(inp: SpeedModelInput) -> float:
    """Printed closed form, evaluated verbatim; numerically ``m * avg_speed_composed``."""
    r = inp.robot
    ratio = r.body_mass_kg / r.attached_mass_kg + 1.0
    return 2.0 * inp.eta_E_J / (r.mu_forward * r.gravity_m_s2 * ratio**2 * inp.period_s)


def speed_ratio_printed(shared: SpeedModelInput, m1: float, m2: float) -> float:
    """``avg_speed_printed`` at ``m1`` over the same at ``m2``."""
    if not (m1 > 0 and m2 > 0):
        raise InvalidConfig(f"masses must be > 0, got {m1}, {m2}")
    return avg_speed_printed(shared.with_attached_mass(m1)) / avg_speed_printed(
        shared.with_attached_mass(m2)
    )


def speed_ratio_composed(shared: SpeedModelInput, m1: float, m2: float) -> float:
    if not (m1 > 0 and m2 > 0):
        raise InvalidConfig(f"masses must be > 0, got {m1}, {m2}")
    return avg_speed_composed(shared.with_attached_mass(m1)) / avg_speed_composed(
        shared.with_attached_mass(m2)
    )


def golden_section_max(f, lo: float, hi: float, tol: float) -> float:
    """Maximize a unimodal ``f`` on ``[lo, hi]`` down to a bracket narrower than ``tol``."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def optimize_attached_mass(shared: SpeedModelInput, bounds: tuple[float, float]) -> float:
    """Attached mass in ``bounds`` that maximizes the composed average speed."""
    m_lo, m_hi = bounds
    if not (0 < m_lo < m_hi and math.isfinite(m_hi)):
        raise InvalidBounds(f"need 0 < m_lo < m_hi, got {bounds}")

    def speed(m):
        return avg_speed_composed(shared.with_attached_mass(m))

    m_star = golden_section_max(speed, m_lo, m_hi, 1e-9 * m_hi)
    return max((m_star, m_lo, m_hi), key=speed)


def speed_curve(shared: SpeedModelInput, masses) -> list[tuple[float, float]]:
    return [(float(m), avg_speed_composed(shared.with_attached_mass(m))) for m in masses]


def calibrate_eta_E(measured_speed: float, r: RobotParams, period_s: float) -> float:
    """Fused efficiency-times-energy that reproduces ``measured_speed``."""
    if not measured_speed > 0:
        raise InvalidConfig(f"measured_speed must be > 0, got {measured_speed}")
    if not period_s > 0:
        raise InvalidConfig(f"period_s must be > 0, got {period_s}")
    m = r.attached_mass_kg
    return measured_speed * r.mu_forward * r.gravity_m_s2 * r.total_mass_kg**2 * period_s / (2.0 * m)


def oscillator_period(cfg: OscillatorConfig, horizon_s: float) -> float:
    """Period measured from a cold-start run of ``horizon_s`` seconds."""
    return measure_period(snap_events(cfg, horizon_s))


def calibration_horizon(target_period_s: float) -> float:
    return max(60.0, 15.0 * target_period_s)


def calibrate_thermal(
    target_period_s: float,
    current_A: float,
    fixed: ActuatorParams,
    beam: BeamParams,
    *,
    dt_s: float = 0.01,
    rtol: float = 1e-3,
    horizon_s: float | None = None,
) -> ActuatorParams:
    """Bisect the heat-loss coefficient so the oscillator hits ``target_period_s``.

    Both actuators share the returned parameters. ``fixed.heat_loss_W_per_K``
    is ignored. The period is measured on a cold-start run of ``horizon_s``
    (default: the longer of 60 s and 15 target periods).

    The period grows with heat loss: more loss lowers the powered equilibrium
    toward the point where the pull can no longer beat the critical force.
    That point bounds the bracket from above.
    """
    if not target_period_s > 0:
        raise InvalidConfig(f"target_period_s must be > 0, got {target_period_s}")
    if not current_A > 0:
        raise InvalidConfig(f"current_A must be > 0, got {current_A}")
    horizon = calibration_horizon(target_period_s) if horizon_s is None else horizon_s

    def config(h):
        p = fixed.with_heat_loss(h)
        return OscillatorConfig(beam=beam, left=p, right=p, supply_current_A=current_A, dt_s=dt_s)

    # equilibrium pull scales as 1/h, so at h = 1 it equals k_T I^2 R
    h_max = equilibrium_pull(config(1.0), Side.LEFT) / critical_force(beam)

    def excess(h):
        try:
            return oscillator_period(config(h), horizon) - target_period_s
        except (NoOscillation, TooFewEvents):
            return math.inf

    lo, hi = h_max * 1e-6, h_max * (1.0 - 1e-12)
    f_lo = excess(lo)
    if f_lo > 0:
        raise Unachievable(
            f"shortest reachable period {f_lo + target_period_s:.6g} s exceeds target "
            f"{target_period_s} s at I = {current_A} A"
        )
    best_h, best_err = lo, abs(f_lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = excess(mid)
        if abs(f_mid) < best_err:
            best_h, best_err = mid, abs(f_mid)
        if best_err <= 0.1 * rtol * target_period_s or hi - lo <= 1e-15 * hi:
            break
        if f_mid > 0:
            hi = mid
        else:
            lo = mid
    if best_err > rtol * target_period_s:
        raise Unachievable(
            f"closest period misses target {target_period_s} s by {best_err:.3g} s"
        )
    return fixed.with_heat_loss(best_h)


def predict_one_gram(calibrated: SpeedModelInput, one_gram_kg: float = 1.0e-3) -> dict:
    """Both model variants at a 1 g attached mass next to the measured crawl."""
    at_1g = calibrated.with_attached_mass(one_gram_kg)
    printed_2g = avg_speed_printed(calibrated)
    composed_2g = avg_speed_composed(calibrated)
    printed_1g = avg_speed_printed(at_1g)
    composed_1g = avg_speed_composed(at_1g)
    return {
        "attached_mass_kg": one_gram_kg,
        "printed": printed_1g,
        "composed_m_s": composed_1g,
        "measured_m_s": MEASURED_SPEED_1G,
        "printed_ratio": printed_2g / printed_1g,
        "composed_ratio": composed_2g / composed_1g,
        "measured_ratio": MEASURED_SPEED_2G / MEASURED_SPEED_1G,
    }
