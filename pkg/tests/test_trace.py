import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crawlsim.errors import MalformedFile, NoOscillationDetected, TooShort
from crawlsim.events import CrawlStep, SnapEvent, SnapKind
from crawlsim.locomotion import simulate_crawl
from crawlsim.oscillator import measure_period, simulate_oscillator
from crawlsim.trace import (
    EVENTS_HEADER,
    TRACE_HEADER,
    Trace,
    average_speed,
    detect_period,
    events_path,
    read_csv,
    write_csv,
)


def make_trace(robot_x, dt=0.5, beam_x=None, events=()):
    n = len(robot_x)
    return Trace(
        dt,
        np.arange(n) * dt,
        np.zeros(n) if beam_x is None else beam_x,
        robot_x,
        np.full(n, 295.0),
        np.full(n, 296.0),
        np.array(["right"] * n),
        events,
    )


def square_wave(period, dt, duration, phase=0.37):
    t = np.arange(int(duration / dt) + 1) * dt
    x = np.where(((t + phase) % period) < period / 2, -5e-4, 5e-4)
    return make_trace(np.zeros(len(t)), dt=dt, beam_x=x)


def test_average_speed_paper_fixture():
    tr = Trace(
        350.1, np.array([0.0, 350.1]), np.zeros(2), np.array([0.0, 0.146]),
        np.full(2, 295.0), np.full(2, 295.0), np.array(["left", "right"]),
    )
    v = average_speed(tr)
    assert v == pytest.approx(0.417e-3, abs=5e-7)
    assert v * 60e3 == pytest.approx(25.0, abs=0.05)


def test_average_speed_constant_and_ramp():
    assert average_speed(make_trace(np.full(10, 3.0))) == 0.0
    ramp = make_trace(np.arange(10) * 0.5 * 0.123)
    assert average_speed(ramp) == pytest.approx(0.123)
    with pytest.raises(TooShort):
        average_speed(make_trace(np.zeros(1)))


def test_detect_period_square_wave():
    assert detect_period(square_wave(3.3, 0.01, 40.0)) == pytest.approx(3.30, abs=0.01)


def test_detect_period_constant():
    tr = make_trace(np.zeros(100), beam_x=np.full(100, 5e-4))
    with pytest.raises(NoOscillationDetected):
        detect_period(tr)


def test_detect_period_on_simulation(paper_osc):
    tr, events = simulate_oscillator(paper_osc, 60.0)
    from_events = detect_period(tr)
    assert from_events == measure_period(events)
    bare = Trace(tr.dt_s, tr.time_s, tr.beam_x_m, tr.robot_X_m, tr.temp_left_K, tr.temp_right_K, tr.powered)
    assert abs(detect_period(bare) - measure_period(events)) <= paper_osc.dt_s


def test_crawl_trace_speed(paper_2g):
    tr, steps = simulate_crawl(paper_2g.oscillator, paper_2g.robot, 60.0)
    total = sum(s.distance_m for s in steps)
    assert abs(average_speed(tr) - total / 60.0) <= max(s.distance_m for s in steps) / 60.0


def test_round_trip_simulation(tmp_path, paper_2g):
    tr, _ = simulate_crawl(paper_2g.oscillator, paper_2g.robot, 20.0)
    path = tmp_path / "run.csv"
    write_csv(tr, path)
    back = read_csv(path)
    assert back == tr
    assert back.dt_s == tr.dt_s
    assert path.read_text().splitlines()[0] == ",".join(TRACE_HEADER)
    assert events_path(path).read_text().splitlines()[0] == ",".join(EVENTS_HEADER)


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=50, deadline=None)
@given(
    n=st.integers(0, 30),
    data=st.data(),
)
def test_round_trip_bit_exact(tmp_path_factory, n, data):
    cols = [np.array(data.draw(st.lists(finite, min_size=n, max_size=n))) for _ in range(4)]
    powered = data.draw(st.lists(st.sampled_from(["left", "right"]), min_size=n, max_size=n))
    kinds = st.sampled_from(list(SnapKind))
    events = data.draw(
        st.lists(
            st.one_of(
                st.builds(SnapEvent, finite, kinds),
                st.builds(CrawlStep, finite, kinds, st.floats(0, 1e3, allow_nan=False)),
            ),
            max_size=8,
        )
    )
    dt = data.draw(st.floats(1e-6, 10.0))
    tr = Trace(dt, np.arange(n) * dt, *cols, np.array(powered, dtype="<U5"), tuple(events))
    path = tmp_path_factory.mktemp("rt") / "t.csv"
    write_csv(tr, path)
    back = read_csv(path)
    assert back == tr
    for name in ("time_s", "beam_x_m", "robot_X_m", "temp_left_K", "temp_right_K"):
        assert getattr(back, name).tobytes() == getattr(tr, name).tobytes()


def test_empty_trace(tmp_path):
    path = tmp_path / "empty.csv"
    write_csv(Trace.empty(0.01), path)
    assert path.read_text() == ",".join(TRACE_HEADER) + "\n"
    back = read_csv(path)
    assert len(back) == 0 and back.events == ()
    assert back == Trace.empty(0.01)


def test_shuffled_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("beam_x_m,t_s,robot_X_m,T_left_K,T_right_K,powered\n")
    with pytest.raises(MalformedFile) as info:
        read_csv(path)
    assert info.value.line == 1


def test_bad_rows_report_line(tmp_path):
    path = tmp_path / "bad.csv"
    header = ",".join(TRACE_HEADER)
    path.write_text(f"{header}\n0,0,0,295,295,left\n0.1,x,0,295,295,left\n")
    with pytest.raises(MalformedFile, match="line 3"):
        read_csv(path)
    path.write_text(f"{header}\n0,0,0,295,295,up\n")
    with pytest.raises(MalformedFile, match="line 2"):
        read_csv(path)
    path.write_text(f"{header}\n0,0,0,295\n")
    with pytest.raises(MalformedFile, match="line 2"):
        read_csv(path)


def test_bad_events_file(tmp_path):
    path = tmp_path / "run.csv"
    write_csv(make_trace(np.zeros(3)), path)
    events_path(path).write_text("t_s,kind,step_m\n1.0,sideways,\n")
    with pytest.raises(MalformedFile, match="line 2"):
        read_csv(path)


def test_trace_is_immutable():
    tr = make_trace(np.zeros(3))
    with pytest.raises(ValueError):
        tr.robot_X_m[0] = 1.0


def test_column_lengths_checked():
    with pytest.raises(ValueError):
        Trace(0.1, np.zeros(3), np.zeros(2), np.zeros(3), np.zeros(3), np.zeros(3), np.array(["left"] * 3))
