import json
import math
import random

import pytest

from conftest import random_origin
from skyshot.errors import ExportError, InvalidArgumentError, PlanParseError
from skyshot.flightplan import (
    FlightPlan,
    Waypoint,
    export_litchi_csv,
    export_qgc_plan,
    from_trajectory,
    import_qgc_plan,
    load_plan_json,
    save_plan_json,
)
from skyshot.geometry import EnuPoint, GeoOrigin
from skyshot.shots import ShotSpec, ShotType, TargetRef, generate_shot


def random_plan(rng: random.Random, n_max: int = 12) -> FlightPlan:
    origin = random_origin(rng)
    waypoints = tuple(
        Waypoint(
            position=EnuPoint(rng.uniform(-2000, 2000), rng.uniform(-2000, 2000), rng.uniform(0, 300)),
            speed_mps=round(rng.uniform(0.5, 18.0), 4),
            heading_deg=round(rng.uniform(0, 359.99), 4),
            gimbal_pitch_deg=round(rng.uniform(-30, 90), 4),
            capture=rng.random() < 0.4,
        )
        for _ in range(rng.randint(1, n_max))
    )
    return FlightPlan(origin=origin, waypoints=waypoints)


GOLDEN_PLAN = FlightPlan(
    origin=GeoOrigin(latitude=47.0, longitude=8.0, altitude=12.0),
    waypoints=(
        Waypoint(position=EnuPoint(0.0, 0.0, 30.0), speed_mps=5.0, heading_deg=0.0, gimbal_pitch_deg=35.0),
        Waypoint(position=EnuPoint(100.0, 0.0, 30.0), speed_mps=5.0, heading_deg=90.0, gimbal_pitch_deg=35.0, capture=True),
        Waypoint(position=EnuPoint(100.0, 50.0, 25.0), speed_mps=7.5, heading_deg=180.0, gimbal_pitch_deg=60.0),
    ),
)

# longitude offset checked independently: 8.0 + degrees(100 / (R cos 47 deg))
GOLDEN_LITCHI = (
    "latitude,longitude,altitude(m),heading(deg),curvesize(m),rotationdir,gimbalmode,gimbalpitchangle,actiontype1\r\n"
    "47.0000000,8.0000000,30.000,0.00,0,0,2,-35.00,-1\r\n"
    "47.0000000,8.0013172,30.000,90.00,0,0,2,-35.00,1\r\n"
    "47.0004492,8.0013172,25.000,180.00,0,0,2,-60.00,-1\r\n"
)


class TestQgcExport:
    def test_single_waypoint_at_origin(self):
        plan = FlightPlan(
            origin=GeoOrigin(10.0, 20.0, 100.0),
            waypoints=(Waypoint(position=EnuPoint(0.0, 0.0, 35.0)),),
        )
        doc = json.loads(export_qgc_plan(plan))
        assert doc["fileType"] == "Plan"
        assert doc["version"] == 1
        nav_items = [i for i in doc["mission"]["items"] if i["command"] == 16]
        assert len(nav_items) == 1
        assert nav_items[0]["params"][4] == pytest.approx(10.0, abs=1e-12)
        assert nav_items[0]["params"][5] == pytest.approx(20.0, abs=1e-12)
        assert nav_items[0]["params"][6] == 35.0  # relative altitude
        assert nav_items[0]["frame"] == 3

    def test_round_trip_randomized(self, rng):
        for _ in range(100):
            plan = random_plan(rng)
            restored = import_qgc_plan(export_qgc_plan(plan))
            assert restored.origin.latitude == pytest.approx(plan.origin.latitude, abs=1e-11)
            assert restored.origin.longitude == pytest.approx(plan.origin.longitude, abs=1e-11)
            assert len(restored.waypoints) == len(plan.waypoints)
            for a, b in zip(plan.waypoints, restored.waypoints):
                assert abs(a.position.east - b.position.east) < 1e-6
                assert abs(a.position.north - b.position.north) < 1e-6
                assert abs(a.position.up - b.position.up) < 1e-6
                assert a.speed_mps == b.speed_mps
                assert a.heading_deg == b.heading_deg
                assert a.gimbal_pitch_deg == b.gimbal_pitch_deg
                assert a.capture == b.capture

    def test_byte_deterministic(self, rng):
        plan = random_plan(rng)
        assert export_qgc_plan(plan) == export_qgc_plan(plan)

    def test_speed_and_gimbal_items_only_on_change(self):
        doc = json.loads(export_qgc_plan(GOLDEN_PLAN))
        commands = [item["command"] for item in doc["mission"]["items"]]
        # wp1: speed+gimbal+nav; wp2: nav+capture (unchanged); wp3: speed+gimbal+nav
        assert commands == [178, 205, 16, 16, 203, 178, 205, 16]

    def test_no_nan_tokens(self):
        plan = FlightPlan(
            origin=GeoOrigin(0.0, 0.0, 0.0),
            waypoints=(Waypoint(position=EnuPoint(0.0, 0.0, 10.0)),),
        )
        object.__setattr__(plan.waypoints[0], "speed_mps", math.nan)
        with pytest.raises(ExportError):
            export_qgc_plan(plan)
        with pytest.raises(ExportError):
            export_litchi_csv(plan)

    def test_polar_origin_export_error(self):
        plan = FlightPlan(
            origin=GeoOrigin(89.95, 0.0, 0.0),
            waypoints=(Waypoint(position=EnuPoint(10.0, 10.0, 10.0)),),
        )
        with pytest.raises(ExportError):
            export_qgc_plan(plan)

    def test_empty_plan_rejected(self):
        with pytest.raises(InvalidArgumentError):
            FlightPlan(origin=GeoOrigin(0, 0, 0), waypoints=())


class TestQgcImportErrors:
    def test_truncated_document(self):
        data = export_qgc_plan(GOLDEN_PLAN)[:-40]
        with pytest.raises(PlanParseError):
            import_qgc_plan(data)

    def test_unknown_file_type(self):
        with pytest.raises(PlanParseError, match="fileType"):
            import_qgc_plan(json.dumps({"fileType": "Mission", "mission": {"items": []}}).encode())

    def test_unsupported_command_lists_index(self):
        doc = json.loads(export_qgc_plan(GOLDEN_PLAN))
        doc["mission"]["items"][1]["command"] = 22  # takeoff: outside the subset
        with pytest.raises(PlanParseError, match="item 1"):
            import_qgc_plan(json.dumps(doc).encode())

    def test_minimal_hand_built_document(self):
        doc = {
            "fileType": "Plan",
            "version": 1,
            "mission": {
                "plannedHomePosition": [47.0, 8.0, 300.0],
                "items": [
                    {
                        "command": 16,
                        "frame": 3,
                        "params": [0, 0, 0, 45.0, 47.0001, 8.0001, 25.0],
                    }
                ],
            },
        }
        plan = import_qgc_plan(json.dumps(doc).encode())
        assert len(plan.waypoints) == 1
        assert plan.waypoints[0].heading_deg == 45.0
        assert plan.waypoints[0].position.up == 25.0
        assert plan.waypoints[0].position.north > 0


class TestLitchi:
    def test_golden_file(self):
        assert export_litchi_csv(GOLDEN_PLAN) == GOLDEN_LITCHI

    def test_row_count(self, rng):
        plan = random_plan(rng)
        lines = export_litchi_csv(plan).splitlines()
        assert len(lines) == 1 + len(plan.waypoints)

    def test_gimbal_sign_negative_down(self):
        row = export_litchi_csv(GOLDEN_PLAN).splitlines()[1]
        assert row.split(",")[7] == "-35.00"

    def test_capture_flag_mapping(self):
        rows = export_litchi_csv(GOLDEN_PLAN).splitlines()[1:]
        assert rows[0].split(",")[8] == "-1"
        assert rows[1].split(",")[8] == "1"


class TestNeutralJson:
    def test_round_trip_exact(self, rng):
        for _ in range(50):
            plan = random_plan(rng)
            assert load_plan_json(save_plan_json(plan)) == plan

    def test_malformed_rejected(self):
        with pytest.raises(PlanParseError):
            load_plan_json(b"{not json")
        with pytest.raises(PlanParseError):
            load_plan_json(json.dumps({"origin": {}}).encode())


class TestFromTrajectory:
    def test_waypoint_interval_and_endpoints(self):
        spec = ShotSpec(shot_type=ShotType.ORBIT, target=TargetRef.point(EnuPoint(0, 0, 0)))
        trajectory = generate_shot(spec, dt_s=0.05)
        plan = from_trajectory(trajectory, GeoOrigin(0, 0, 0), waypoint_interval_s=1.0, speed_mps=5.0)
        assert plan.waypoints[0].position == trajectory.samples[0].pose.position
        assert plan.waypoints[-1].position == trajectory.samples[-1].pose.position
        # interior waypoints land exactly on the 1 s grid
        assert plan.waypoints[1].position == trajectory.samples[20].pose.position
