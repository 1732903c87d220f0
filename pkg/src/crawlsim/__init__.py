"""Simulator and design toolkit for oscillation-driven stick-slip crawling robots."""
from .actuator import (
    ActuatorParams,
    ActuatorState,
    electrical_power,
    equilibrium_temp,
    step_thermal,
    tension,
)
from .analytic import (
    SpeedModelInput,
    avg_speed_composed,
    avg_speed_printed,
    calibrate_eta_E,
    calibrate_thermal,
    optimize_attached_mass,
    predict_one_gram,
    speed_ratio_printed,
)
from .beam import BeamParams, BeamState, Well, critical_force, potential, released_energy, restoring_force
from .errors import (
    CrawlSimError,
    EmptySteps,
    InvalidBounds,
    InvalidConfig,
    MalformedFile,
    NoOscillation,
    NoOscillationDetected,
    TooFewEvents,
    TooShort,
    Unachievable,
)
from .events import CrawlStep, SnapEvent, SnapKind
from .locomotion import (
    RobotParams,
    glide_distance,
    simulate_crawl,
    snap_impulse_velocity,
    step_decomposition,
)
from .oscillator import OscillatorConfig, OscState, Side, measure_period, powered_side, simulate_oscillator
from .trace import Trace, average_speed, detect_period, read_csv, write_csv

__version__ = "0.1.0"
