"""Discrete events emitted by the oscillator and crawl simulations."""
from __future__ import annotations

import enum
from dataclasses import dataclass


class SnapKind(enum.Enum):
    SNAP_BACK = "snap_back"  # state 2 -> state 1 (leftward)
    SNAP_THROUGH = "snap_through"  # state 1 -> state 2 (rightward)


@dataclass(frozen=True)
class SnapEvent:
    time_s: float
    kind: SnapKind


@dataclass(frozen=True)
class CrawlStep:
    time_s: float
    kind: SnapKind
    distance_m: float

    def __post_init__(self):
        if not self.distance_m >= 0:
            raise ValueError(f"crawl step distance must be >= 0, got {self.distance_m}")
