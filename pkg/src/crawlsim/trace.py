"""Sampled time series, trace analysis, and CSV persistence.

CSV layout
----------
Samples go to ``<name>.csv`` with the fixed header::

    t_s,beam_x_m,robot_X_m,T_left_K,T_right_K,powered

Events go to a sibling ``<name>_events.csv`` with header ``t_s,kind,step_m``;
``step_m`` is blank for bare snap events. Floats are written with 17
significant digits so a read after write reproduces every value bit for bit.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import MalformedFile, NoOscillationDetected, TooShort
from .events import CrawlStep, SnapEvent, SnapKind

TRACE_HEADER = ["t_s", "beam_x_m", "robot_X_m", "T_left_K", "T_right_K", "powered"]
EVENTS_HEADER = ["t_s", "kind", "step_m"]
POWERED_VALUES = ("left", "right")

_FLOAT_COLUMNS = ("time_s", "beam_x_m", "robot_X_m", "temp_left_K", "temp_right_K")


@dataclass(frozen=True, eq=False)
class Trace:
    dt_s: float
    time_s: np.ndarray
    beam_x_m: np.ndarray
    robot_X_m: np.ndarray
    temp_left_K: np.ndarray
    temp_right_K: np.ndarray
    powered: np.ndarray
    events: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for name in _FLOAT_COLUMNS:
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        pw = np.asarray(self.powered, dtype="<U5")
        pw.setflags(write=False)
        object.__setattr__(self, "powered", pw)
        object.__setattr__(self, "events", tuple(self.events))
        n = len(self.time_s)
        if any(len(getattr(self, c)) != n for c in _FLOAT_COLUMNS[1:]) or len(self.powered) != n:
            raise ValueError("trace columns must have equal length")

    def __len__(self):
        return len(self.time_s)

    def __eq__(self, other):
        if not isinstance(other, Trace):
            return NotImplemented
        if len(self) != len(other) or self.events != other.events:
            return False
        if len(self) >= 2 and self.dt_s != other.dt_s:
            return False
        return all(
            np.array_equal(getattr(self, c), getattr(other, c)) for c in _FLOAT_COLUMNS
        ) and np.array_equal(self.powered, other.powered)

    __hash__ = None

    @classmethod
    def empty(cls, dt_s: float = math.nan) -> "Trace":
        z = np.zeros(0)
        return cls(dt_s, z, z, z, z, z, np.zeros(0, dtype="<U5"))

    @property
    def duration_s(self) -> float:
        return float(self.time_s[-1] - self.time_s[0]) if len(self) else 0.0


def average_speed(tr: Trace) -> float:
    """Net robot displacement divided by elapsed time."""
    if len(tr) < 2:
        raise TooShort(f"average_speed needs >= 2 samples, got {len(tr)}")
    return float((tr.robot_X_m[-1] - tr.robot_X_m[0]) / (tr.time_s[-1] - tr.time_s[0]))


def zero_crossings(t, x):
    """Linearly interpolated crossing times, split into rising and falling.

    Samples that are exactly zero are skipped so a crossing through zero is
    counted once.
    """
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    keep = x != 0
    t, x = t[keep], x[keep]
    if len(x) < 2:
        return np.zeros(0), np.zeros(0)
    s = np.sign(x)
    idx = np.nonzero(s[:-1] != s[1:])[0]
    tc = t[idx] - x[idx] * (t[idx + 1] - t[idx]) / (x[idx + 1] - x[idx])
    rising = s[idx] < 0
    return tc[rising], tc[~rising]


def detect_period(tr: Trace) -> float:
    """Oscillation period of the trace.

    Uses the recorded snap events when there are any, otherwise the mean
    spacing of same-direction zero crossings of the beam displacement.
    """
    if len(tr.events) >= 3:
        from .oscillator import measure_period

        return measure_period(tr.events)
    up, down = zero_crossings(tr.time_s, tr.beam_x_m)
    gaps = np.concatenate([np.diff(up), np.diff(down)])
    if len(up) + len(down) < 3 or len(gaps) == 0:
        raise NoOscillationDetected(
            f"found {len(up) + len(down)} zero crossings; need at least 3"
        )
    return float(np.mean(gaps))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def events_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + "_events" + path.suffix)


def write_csv(tr: Trace, destination) -> None:
    destination = Path(destination)
    with destination.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_HEADER)
        for i in range(len(tr)):
            w.writerow(
                [_fmt(tr.time_s[i]), _fmt(tr.beam_x_m[i]), _fmt(tr.robot_X_m[i]),
                 _fmt(tr.temp_left_K[i]), _fmt(tr.temp_right_K[i]), tr.powered[i]]
            )
    with events_path(destination).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(EVENTS_HEADER)
        for e in tr.events:
            step = _fmt(e.distance_m) if isinstance(e, CrawlStep) else ""
            w.writerow([_fmt(e.time_s), e.kind.value, step])


def _parse_float(text: str, line: int, column: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise MalformedFile(f"column {column!r}: not a number: {text!r}", line) from None


def _read_rows(path: Path, header: list[str]):
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        first = next(reader, None)
        if first != header:
            raise MalformedFile(f"expected header {','.join(header)!r}, got {first!r}", 1)
        for row in reader:
            if len(row) != len(header):
                raise MalformedFile(
                    f"expected {len(header)} fields, got {len(row)}", reader.line_num
                )
            yield reader.line_num, row


def read_events(path) -> tuple:
    events = []
    for line, (t, kind, step) in _read_rows(Path(path), EVENTS_HEADER):
        try:
            k = SnapKind(kind)
        except ValueError:
            raise MalformedFile(f"unknown event kind {kind!r}", line) from None
        t_s = _parse_float(t, line, "t_s")
        if step == "":
            events.append(SnapEvent(t_s, k))
        else:
            d = _parse_float(step, line, "step_m")
            if not d >= 0:
                raise MalformedFile(f"negative step {d}", line)
            events.append(CrawlStep(t_s, k, d))
    return tuple(events)


def read_csv(source) -> Trace:
    source = Path(source)
    cols = [[] for _ in range(5)]
    powered = []
    for line, row in _read_rows(source, TRACE_HEADER):
        for j in range(5):
            cols[j].append(_parse_float(row[j], line, TRACE_HEADER[j]))
        if row[5] not in POWERED_VALUES:
            raise MalformedFile(f"powered must be left or right, got {row[5]!r}", line)
        powered.append(row[5])
    ev_file = events_path(source)
    events = read_events(ev_file) if ev_file.exists() else ()
    time_s = np.array(cols[0])
    dt = float(time_s[1] - time_s[0]) if len(time_s) >= 2 else math.nan
    return Trace(
        dt, time_s, np.array(cols[1]), np.array(cols[2]), np.array(cols[3]),
        np.array(cols[4]), np.array(powered, dtype="<U5"), events,
    )
