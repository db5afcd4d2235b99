"""Delimited-text input logs for deterministic replay.

One record per tick: tick index, drone id, then the five control axes.
Float fields are written with repr so a replayed log reproduces the
original controls bit-for-bit.
"""

from __future__ import annotations

from ..errors import PlanParseError
from .drone import ControlInput

HEADER = "tick,drone_id,forward,right,climb,yaw_rate,gimbal_rate"

InputRecord = tuple[int, int, ControlInput]


def save_input_log(records: list[InputRecord]) -> str:
    lines = [HEADER]
    for tick, drone_id, c in records:
        lines.append(
            f"{tick},{drone_id},{c.forward!r},{c.right!r},{c.climb!r},{c.yaw_rate!r},{c.gimbal_rate!r}"
        )
    return "\n".join(lines) + "\n"


def load_input_log(text: str) -> list[InputRecord]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != HEADER:
        raise PlanParseError("input log missing header line")
    records: list[InputRecord] = []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 7:
            raise PlanParseError(f"input log line {i}: expected 7 fields, got {len(parts)}")
        try:
            tick = int(parts[0])
            drone_id = int(parts[1])
            control = ControlInput(
                forward=float(parts[2]),
                right=float(parts[3]),
                climb=float(parts[4]),
                yaw_rate=float(parts[5]),
                gimbal_rate=float(parts[6]),
            )
        except ValueError as exc:
            raise PlanParseError(f"input log line {i}: {exc}") from exc
        records.append((tick, drone_id, control))
    return records
