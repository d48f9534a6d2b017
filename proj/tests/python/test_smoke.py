"""End-to-end sanity checks for the python bindings.

Numeric anchors here repeat a few of the frozen references from the C++ unit
suite; the point is that the bindings reach the same code, not re-verifying
the math.
"""

import math

import pytest

import fsorail
from fsorail import atmosphere, config, control, geometry, receiver, scenario


def test_version():
    assert fsorail.__version__ == "0.1.0"


def test_unit_helpers_round_trip():
    assert fsorail.dbm_from_watts(1e-3) == pytest.approx(0.0, abs=1e-12)
    assert fsorail.watts_from_dbm(fsorail.dbm_from_watts(3.7e-5)) == pytest.approx(
        3.7e-5, rel=1e-12
    )
    assert fsorail.mps_from_kmh(400.0) == pytest.approx(111.11111111111111, rel=1e-15)


def test_geometry_chain():
    g = geometry.link_geometry_from_slant(500.0, 5.0, 0.054990398423233954)
    assert g.slant_m == 500.0
    assert g.vertical_m == 5.0
    assert g.half_angle_rad == pytest.approx(
        math.asin(0.054990398423233954 / 500.0), rel=1e-15
    )
    assert g.axial_m < g.slant_m
    theta = control.ideal_divergence(g)
    assert theta == pytest.approx(2.0 * g.half_angle_rad, rel=1e-15)


def test_fog_attenuation_anchor():
    ch = atmosphere.ChannelState()
    ch.visibility_km = 1.0
    ch.wavelength_um = 1.55
    assert atmosphere.fog_attenuation_db_per_km(ch) == pytest.approx(
        10.1266177520816, rel=1e-12
    )


def test_receiver_anchors():
    rx = receiver.ReceiverParams()
    p_req = receiver.required_power_for_ber(rx, 1e-9)
    assert fsorail.dbm_from_watts(p_req) == pytest.approx(-21.9476, abs=1e-3)
    assert receiver.q_function(6.0) == pytest.approx(9.86587645037698e-10, rel=1e-12)


def test_scenario_run_and_determinism():
    cfg = scenario.ScenarioConfig()
    cfg.train_speed_mps = fsorail.mps_from_kmh(400.0)
    cfg.train_start_position_m = 75.0
    cfg.duration_s = 10.0
    cfg.placement.station_spacing_m = 1e7
    cfg.resolve_defaults()
    cfg.validate()

    a = scenario.run(cfg)
    b = scenario.run(cfg)
    assert len(a) == 101
    assert [s.p_rx_dbm for s in a] == [s.p_rx_dbm for s in b]
    assert all(s.link_up for s in a)
    assert a[0].range_m == pytest.approx(math.hypot(75.0, 5.0), rel=1e-12)


def test_max_distance_saturates():
    cfg = scenario.ScenarioConfig()
    res = scenario.max_distance(cfg, 1.0, scenario.SweepMode.Adaptive)
    assert res.saturated
    assert res.distance_m == 2000.0
    fixed = scenario.max_distance(cfg, 1.0, scenario.SweepMode.Fixed)
    assert not fixed.saturated
    assert fixed.distance_m == pytest.approx(500.21, abs=0.1)


def test_config_digest_round_trip():
    cfg = config.load_config("table1")
    text = config.canonical_json(cfg)
    again = config.parse_config(text)
    assert config.config_digest(again) == config.config_digest(cfg)
    assert config.config_digest(cfg).startswith("fnv1a64:")


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        geometry.slant_distance(0.0, 0.0)
    rx = receiver.ReceiverParams()
    rx.apd_gain = -1.0
    with pytest.raises(ValueError):
        rx.validate()
