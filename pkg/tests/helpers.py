"""Generators and file fixtures shared by the test modules."""

from __future__ import annotations

import random
from pathlib import Path

from sensorsynth import ActivityRecord, DurationStats, Polarity, TransitionMatrix, build_matrix_generator
from sensorsynth import csvio
from sensorsynth.generator import NAMED_PERIODS


def edge_states(sensors):
    return [f"{s}_{p}" for s in sensors for p in ("ON", "OFF")]


def activities_for(sensors, mean=600.0, sd=0.0):
    out = []
    for s in sensors:
        for pol in (Polarity.ON, Polarity.OFF):
            m = mean(s, pol) if callable(mean) else mean
            out.append(ActivityRecord(f"{s}_{pol.value}", pol, s, DurationStats(m, sd)))
    return out


def random_matrix(states, rng: random.Random, floor=0.0):
    rows = []
    for _ in states:
        w = [floor + rng.random() for _ in states]
        total = sum(w)
        rows.append([x / total for x in w])
    return TransitionMatrix.from_rows(states, rows)


def routine_matrix(sensors, period: int, tiny: float = 1e-4, recovery: float = 0.02):
    """A strictly positive matrix that mostly follows a daily routine.

    From ``X_ON`` the sensor is switched off again; from ``X_OFF`` some sensor
    is switched on, with period-dependent preferences. ``recovery`` of each
    OFF row goes to the other sensors' OFF edges, so a sensor left on by a
    rare ``tiny`` move is switched off again quickly.
    """
    states = edge_states(sensors)
    n = len(sensors)
    rows = []
    for i, s in enumerate(states):
        k = i // 2
        row = dict.fromkeys(states, tiny)
        if s.endswith("_ON"):
            row[f"{sensors[k]}_OFF"] = 0.0
            row[f"{sensors[k]}_OFF"] = 1.0 - sum(row.values())
        else:
            for j in range(n):
                if j != k:
                    row[f"{sensors[j]}_OFF"] = recovery / (n - 1)
            free = 1.0 - sum(v for t, v in row.items() if t.endswith("_OFF"))
            weights = [1.0 + ((k + period - j) % n) for j in range(n)]
            for j in range(n):
                row[f"{sensors[j]}_ON"] = free * weights[j] / sum(weights)
        rows.append([row[t] for t in states])
    return TransitionMatrix.from_rows(states, rows)


ROUTINE_SENSORS = ("bed", "toilet", "kitchen")
ROUTINE_MEANS = {"bed": 240.0, "toilet": 90.0, "kitchen": 150.0}


def routine_generator(sd=20.0):
    """Strictly positive 4-period generator; ON holds are twice the OFF holds."""
    sensors = ROUTINE_SENSORS
    acts = activities_for(
        sensors,
        mean=lambda s, pol: ROUTINE_MEANS[s] if pol is Polarity.ON else ROUTINE_MEANS[s] / 2,
        sd=sd,
    )
    night, morning, afternoon, evening = (routine_matrix(sensors, p, tiny=1e-5, recovery=0.005) for p in range(4))
    return build_matrix_generator(morning, afternoon, evening, night, acts)


def write_matrix_inputs(tmp_path: Path, matrices: dict, activities) -> dict:
    """Write the four period matrices and the activities table; returns CLI paths."""
    paths = {}
    for name in NAMED_PERIODS:
        paths[name] = tmp_path / f"{name}.csv"
        csvio.write_matrix(matrices[name], paths[name])
    paths["activities"] = tmp_path / "activities.csv"
    csvio.write_activities(activities, paths["activities"])
    return paths


def gen_matrix_argv(paths: dict, out: Path, *extra: str) -> list[str]:
    argv = ["gen-matrix"]
    for name in (*NAMED_PERIODS, "activities"):
        argv += [f"--{name}", str(paths[name])]
    return argv + ["--out", str(out), *extra]
