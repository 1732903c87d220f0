"""Lumped electro-thermal model of a super-coiled polymer actuator.

Temperature obeys ``C_th dT/dt = [powered] I^2 R - h (T - T_amb)``, which is
linear with constant coefficients over a step, so it is advanced with its
exact exponential solution. Tension is ``k_T (T - T_amb)``, clipped at zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import InvalidConfig


@dataclass(frozen=True)
class ActuatorParams:
    resistance_ohm: float = 3.8
    thermal_capacitance_J_per_K: float = 0.05
    heat_loss_W_per_K: float = 0.1
    tension_coeff_N_per_K: float = 0.004
    ambient_K: float = 295.0

    def __post_init__(self):
        for name in (
            "resistance_ohm",
            "thermal_capacitance_J_per_K",
            "heat_loss_W_per_K",
            "tension_coeff_N_per_K",
            "ambient_K",
        ):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0 and math.isfinite(value)):
                raise InvalidConfig(f"{name} must be a finite number > 0, got {value!r}")

    @property
    def time_constant_s(self) -> float:
        return self.thermal_capacitance_J_per_K / self.heat_loss_W_per_K

    def with_heat_loss(self, h: float) -> "ActuatorParams":
        return replace(self, heat_loss_W_per_K=h)


@dataclass(frozen=True)
class ActuatorState:
    temperature_K: float
    powered: bool = False

    @classmethod
    def ambient(cls, p: ActuatorParams, powered: bool = False) -> "ActuatorState":
        return cls(p.ambient_K, powered)


def electrical_power(current_A: float, p: ActuatorParams) -> float:
    if current_A < 0:
        raise InvalidConfig(f"current must be >= 0, got {current_A}")
    return current_A * current_A * p.resistance_ohm


def equilibrium_temp(current_A: float, powered: bool, p: ActuatorParams) -> float:
    if not powered:
        return p.ambient_K
    return p.ambient_K + electrical_power(current_A, p) / p.heat_loss_W_per_K


def step_thermal(
    s: ActuatorState, current_A: float, dt_s: float, p: ActuatorParams
) -> ActuatorState:
    """Advance the temperature by ``dt_s`` using the exact exponential update."""
    if not dt_s > 0:
        raise InvalidConfig(f"dt_s must be > 0, got {dt_s}")
    t_eq = equilibrium_temp(current_A, s.powered, p)
    decay = math.exp(-dt_s / p.time_constant_s)
    return ActuatorState(t_eq + (s.temperature_K - t_eq) * decay, s.powered)


def tension(s: ActuatorState, p: ActuatorParams) -> float:
    # threads cannot push
    return max(0.0, p.tension_coeff_N_per_K * (s.temperature_K - p.ambient_K))


def time_to_threshold(current_A: float, rise_K: float, p: ActuatorParams) -> float:
    """Heating time from ambient until the temperature rise reaches ``rise_K``.

    Returns ``inf`` when the powered equilibrium never gets there.
    """
    if rise_K <= 0:
        return 0.0
    heat = electrical_power(current_A, p)
    margin = heat - p.heat_loss_W_per_K * rise_K
    if margin <= 0:
        return math.inf
    return p.time_constant_s * math.log(heat / margin)
