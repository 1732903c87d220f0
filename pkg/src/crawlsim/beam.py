"""Bistable buckled beam modeled as a symmetric quartic double well.

``U(x) = E_b * ((x / a)**2 - 1)**2`` has minima at ``x = +-a`` and a barrier
of height ``E_b`` at the origin. Only the barrier energy and the travel
``2a`` feed the locomotion model.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidConfig


class Well(enum.Enum):
    STATE1 = "state1"  # x < 0, left
    STATE2 = "state2"  # x > 0, right

    @property
    def sign(self) -> int:
        return -1 if self is Well.STATE1 else 1

    def other(self) -> "Well":
        return Well.STATE2 if self is Well.STATE1 else Well.STATE1


@dataclass(frozen=True)
class BeamParams:
    barrier_energy_J: float = 17.5e-6
    half_separation_m: float = 0.5e-3

    def __post_init__(self):
        if not self.barrier_energy_J > 0:
            raise InvalidConfig(f"barrier_energy_J must be > 0, got {self.barrier_energy_J}")
        if not self.half_separation_m > 0:
            raise InvalidConfig(f"half_separation_m must be > 0, got {self.half_separation_m}")


@dataclass(frozen=True)
class BeamState:
    position_m: float
    well: Well

    def __post_init__(self):
        if self.position_m != 0 and (self.position_m > 0) != (self.well is Well.STATE2):
            raise InvalidConfig(f"position {self.position_m} inconsistent with {self.well}")

    @classmethod
    def at_rest(cls, well: Well, p: BeamParams) -> "BeamState":
        return cls(well.sign * p.half_separation_m, well)


def potential(x: float, p: BeamParams) -> float:
    u = (x / p.half_separation_m) ** 2 - 1.0
    return p.barrier_energy_J * u * u


def restoring_force(x: float, p: BeamParams) -> float:
    """Return ``-dU/dx``; positive values push toward ``+x``."""
    a = p.half_separation_m
    return -4.0 * p.barrier_energy_J * x * ((x / a) ** 2 - 1.0) / (a * a)


def critical_force(p: BeamParams) -> float:
    """Peak restoring force on one branch, reached at ``|x| = a / sqrt(3)``.

    An external pull larger than this drives the beam over the barrier.
    """
    return 8.0 * p.barrier_energy_J / (3.0 * math.sqrt(3.0) * p.half_separation_m)


def released_energy(p: BeamParams) -> float:
    # efficiency is applied by the locomotion layer
    return p.barrier_energy_J
