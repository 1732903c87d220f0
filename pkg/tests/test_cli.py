import json

import pytest

from crawlsim import config
from crawlsim.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_oscillate(tmp_path, capsys):
    code, out, _ = run(capsys, "oscillate", "paper_2g", "--duration", "60", "--out-dir", str(tmp_path))
    assert code == 0
    summary = json.loads(out)
    assert summary["period_s"] == pytest.approx(3.4, abs=0.1)
    assert summary["n_cycles"] >= 15
    on_disk = json.loads((tmp_path / "paper_2g_oscillate_summary.json").read_text())
    assert on_disk == summary
    assert (tmp_path / "paper_2g_oscillate.csv").exists()
    assert (tmp_path / "paper_2g_oscillate_events.csv").exists()
    flags = summary["calibrated_params"]
    assert flags["oscillator.left.heat_loss_W_per_K"]["calibrated"] is True
    assert summary["config"]["duration_s"] == 60.0


def test_oscillate_zero_current(tmp_path, capsys):
    code, _, err = run(capsys, "oscillate", "paper_2g", "--current", "0", "--out-dir", str(tmp_path))
    assert code == 2
    assert "shortfall" in err


def test_oscillate_dt_robust(tmp_path, capsys):
    periods = []
    for dt in ("0.01", "0.005"):
        code, out, _ = run(capsys, "oscillate", "paper_2g", "--duration", "60", "--dt", dt,
                           "--out-dir", str(tmp_path))
        assert code == 0
        periods.append(json.loads(out)["period_s"])
    assert abs(periods[0] - periods[1]) < 0.01


def test_crawl_2g(tmp_path, capsys):
    code, out, _ = run(capsys, "crawl", "paper_2g", "--out-dir", str(tmp_path))
    assert code == 0
    s = json.loads(out)
    assert s["total_displacement_m"] == pytest.approx(0.146, rel=0.10)
    assert s["measured_reference"]["total_displacement_m"] == 0.146
    assert s["avg_speed_m_s"] == pytest.approx(s["total_displacement_m"] / 350.0)


def test_crawl_1g_reports_measurement(tmp_path, capsys):
    code, out, _ = run(capsys, "crawl", "paper_1g", "--out-dir", str(tmp_path))
    assert code == 0
    s = json.loads(out)
    assert s["measured_reference"]["total_displacement_m"] == 0.039
    assert s["measured_reference"]["elapsed_s"] == 240.0
    assert s["total_displacement_m"] > 0


def test_crawl_zero_duration(tmp_path, capsys):
    code, _, err = run(capsys, "crawl", "paper_2g", "--duration", "0", "--out-dir", str(tmp_path))
    assert code == 1
    assert "duration_s" in err


def test_model(capsys):
    code, out, _ = run(capsys, "model", "paper_2g", "--compare-mass", "1e-3")
    assert code == 0
    s = json.loads(out)
    assert s["printed_ratio"] == pytest.approx(2.17, abs=0.005)
    assert s["measured_ratio"] == pytest.approx(2.57, abs=0.005)
    assert s["composed_ratio"] == pytest.approx(1.086, abs=5e-4)


def test_optimize(capsys):
    code, out, _ = run(capsys, "optimize", "paper_2g", "--samples", "11", "--jobs", "3")
    assert code == 0
    s = json.loads(out)
    assert s["m_star_kg"] == pytest.approx(1.8e-3, rel=1e-6)
    masses = [m for m, _ in s["curve"]]
    assert masses == sorted(masses) and len(masses) == 11
    assert all(v <= s["speed_at_m_star_m_s"] for _, v in s["curve"])


def test_optimize_bad_bounds(capsys):
    code, _, _ = run(capsys, "optimize", "paper_2g", "--bounds", "2e-3", "1e-3")
    assert code == 1


def test_calibrate(capsys):
    code, out, _ = run(capsys, "calibrate", "paper_2g", "--target-speed", "0.417e-3")
    assert code == 0
    s = json.loads(out)
    assert s["eta_E_J"]["value"] == pytest.approx(1.75e-5, rel=0.005)
    assert s["eta_E_J"]["calibrated"] is True
    assert s["actuator"]["calibrated"] == ["heat_loss_W_per_K"]


def test_analyze_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "crawl", "paper_2g", "--duration", "60", "--out-dir", str(tmp_path))
    crawl = json.loads(out)
    code, out, _ = run(capsys, "analyze", crawl["trace_csv"])
    assert code == 0
    s = json.loads(out)
    assert s["period_s"] == pytest.approx(crawl["period_s"], rel=1e-12)
    assert s["total_displacement_m"] == crawl["total_displacement_m"]


def test_analyze_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("nope\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 1
    assert "line 1" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["crawl"])
    assert info.value.code == 1


def test_bad_config_file(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"robot": {"wheels": 4}}))
    code, _, err = run(capsys, "model", str(path))
    assert code == 1
    assert "robot: unknown key(s) wheels" in err


def test_byte_identical_outputs(tmp_path, capsys):
    outputs = []
    for sub in ("a", "b"):
        d = tmp_path / sub
        code, out, _ = run(capsys, "crawl", "paper_2g", "--duration", "30",
                           "--trace", str(tmp_path / "t.csv"), "--summary", str(d / "s.json"))
        assert code == 0
        outputs.append(((tmp_path / "t.csv").read_bytes(), (d / "s.json").read_bytes()))
    assert outputs[0] == outputs[1]


def test_config_file_overrides(tmp_path, capsys, paper_2g):
    path = tmp_path / "scenario.json"
    path.write_text(config.dumps(paper_2g))
    code, out, _ = run(capsys, "oscillate", str(path), "--duration", "20", "--out-dir", str(tmp_path))
    assert code == 0
    assert json.loads(out)["config"]["duration_s"] == 20.0
