"""The browser client's frozen fixture must match the live service.

frontend/tests/fixtures/freeplay_scripted.json drives the UI tests; here the
same control script is replayed through the real freeplay stream and must
reproduce the fixture's states and exit waypoints exactly.
"""

import json
import pathlib

import pytest

from fastapi.testclient import TestClient

from skyshot.service import create_app

FIXTURE = pathlib.Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures" / "freeplay_scripted.json"

DRONE = {
    "drone_id": 1,
    "name": "manual",
    "start": {"east": 0.0, "north": 0.0, "up": 15.0},
    "cruise_speed_mps": 5.0,
    "limits": {
        "max_horizontal_mps": 10.0,
        "max_climb_mps": 4.0,
        "max_yaw_rate_dps": 90.0,
        "max_gimbal_rate_dps": 60.0,
    },
    "shot_spec_id": None,
}


@pytest.fixture(scope="module")
def fixture_data():
    if not FIXTURE.exists():
        pytest.skip("frontend fixture not generated")
    return json.loads(FIXTURE.read_text())


def test_fixture_replays_identically_through_the_service(fixture_data):
    client = TestClient(create_app())
    sid = client.post("/v1/sessions", json={}).json()["session_id"]
    assert client.post(f"/v1/sessions/{sid}/drones", json=DRONE).status_code == 200
    assert client.post(f"/v1/sessions/{sid}/freeplay/enter", json={"drone_id": 1}).status_code == 200

    states = fixture_data["states"]
    with client.websocket_connect(f"/v1/sessions/{sid}/stream") as ws:
        first = ws.receive_json()
        assert first["tick"] == states[0]["tick"] == 0
        drone = first["payload"]["drones"][0]
        assert (drone["east"], drone["north"], drone["up"]) == (
            states[0]["east"],
            states[0]["north"],
            states[0]["up"],
        )
        for tick, control in enumerate(fixture_data["controls"]):
            ws.send_json({"kind": "control", "tick": tick, "payload": dict(control, drone_id=1)})
            ws.send_json({"kind": "tick"})
            message = ws.receive_json()
            expected = states[tick + 1]
            assert message["tick"] == expected["tick"]
            drone = message["payload"]["drones"][0]
            assert drone["east"] == expected["east"]
            assert drone["north"] == expected["north"]
            assert drone["up"] == expected["up"]
            assert drone["yaw_deg"] == expected["yaw_deg"]
            assert drone["gimbal_pitch_deg"] == expected["gimbal_pitch_deg"]

    result = client.post(f"/v1/sessions/{sid}/freeplay/exit").json()
    assert result["recorded_samples"] == fixture_data["ticks"] + 1
    assert result["waypoints"] == fixture_data["waypoints"]
