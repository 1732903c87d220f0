import json

import pytest

from crawlsim import config
from crawlsim.errors import InvalidConfig


def test_bundled_scenarios_load(paper_2g, paper_1g):
    assert paper_2g.robot.attached_mass_kg == 2e-3
    assert paper_1g.robot.attached_mass_kg == 1e-3
    assert paper_2g.duration_s == 350.0
    assert paper_1g.duration_s == 240.0
    assert paper_1g.oscillator == paper_2g.oscillator


def test_bundled_scenarios_reproduce_calibration(paper_2g):
    rebuilt = config.paper_scenario()
    assert rebuilt.oscillator.left.heat_loss_W_per_K == pytest.approx(
        paper_2g.oscillator.left.heat_loss_W_per_K, rel=1e-9
    )
    assert rebuilt.speed_model.eta_E_J == pytest.approx(paper_2g.speed_model.eta_E_J, rel=1e-12)


def test_round_trip(paper_2g):
    assert config.from_dict(json.loads(config.dumps(paper_2g))) == paper_2g


def test_calibrated_paths_resolve(paper_2g):
    assert paper_2g.calibrated
    for path in paper_2g.calibrated:
        assert isinstance(config.lookup(paper_2g, path), float)


@pytest.mark.parametrize(
    "patch, fragment",
    [
        ({"bogus": 1}, "<root>: unknown key(s) bogus"),
        ({"oscillator": {"left": {"colour": 1}}}, "oscillator.left: unknown key(s) colour"),
        ({"oscillator": {"left": {"resistance_ohm": -1}}}, "oscillator.left: resistance_ohm"),
        ({"oscillator": {"beam": {"half_separation_m": "big"}}}, "oscillator.beam.half_separation_m"),
        ({"robot": {"mu_forward": 0.9}}, "robot: need 0 < mu_forward"),
        ({"oscillator": {"initial_well": "middle"}}, "oscillator.initial_well"),
        ({"duration_s": 0}, "duration_s"),
        ({"robot": []}, "robot: expected an object"),
    ],
)
def test_invalid_configs_have_paths(patch, fragment):
    with pytest.raises(InvalidConfig) as info:
        config.from_dict(patch)
    assert fragment in str(info.value)


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidConfig):
        config.load(bad)
    with pytest.raises(InvalidConfig):
        config.resolve(str(tmp_path / "missing.json"))


def test_resolve_accepts_paths_and_names(tmp_path, paper_2g):
    path = tmp_path / "s.json"
    path.write_text(config.dumps(paper_2g))
    assert config.resolve(str(path)) == paper_2g
    assert config.resolve("paper_2g.json") == paper_2g
