"""Deterministic text output: membership CSV, trajectory files, run summary."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .dynamics import BangBangPlan, ControlSign
from .fuzzy_core import MembershipCurve

CSV_HEADER = ("alpha,t_lower,t_upper,p_min_x1,p_min_x2,q_min_x1,q_min_x2,"
              "p_max_x1,p_max_x2,q_max_x1,q_max_x2")


def fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def membership_rows(curve: MembershipCurve) -> list[str]:
    rows = [CSV_HEADER]
    for res in curve.details:
        (pmin, qmin), (pmax, qmax) = res.argmin_pair, res.argmax_pair
        vals = (res.alpha, res.t_lo, res.t_hi, *pmin, *qmin, *pmax, *qmax)
        rows.append(",".join(fmt(v) for v in vals))
    return rows


def write_membership_csv(curve: MembershipCurve, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(("\n".join(membership_rows(curve)) + "\n").encode("ascii"))
    return path


def write_trajectory(path: str | Path, start: Sequence[float], target: Sequence[float],
                     plan: BangBangPlan, endpoint: Sequence[float], polyline: np.ndarray) -> Path:
    """Write a plan header (full precision) followed by ``t,x1,x2`` rows."""
    pts = " ".join(f"{x!r};{y!r}" for x, y in plan.switch_points)
    header = [
        "# fuzzytoc trajectory",
        f"# start = {float(start[0])!r},{float(start[1])!r}",
        f"# target = {float(target[0])!r},{float(target[1])!r}",
        f"# start_sign = {int(plan.start_sign)}",
        f"# num_switches = {plan.num_switches}",
        f"# first_duration = {plan.first_duration!r}",
        f"# last_duration = {plan.last_duration!r}",
        f"# total_time = {plan.total_time!r}",
        f"# switch_points = {pts}",
        f"# endpoint = {float(endpoint[0])!r},{float(endpoint[1])!r}",
        "t,x1,x2",
    ]
    body = [",".join(fmt(v) for v in row) for row in polyline]
    path = Path(path)
    path.write_bytes(("\n".join(header + body) + "\n").encode("ascii"))
    return path


def read_trajectory(path: str | Path) -> dict:
    """Parse a trajectory file back into its start, target, plan, endpoint and samples."""
    meta = {}
    rows = []
    for line in Path(path).read_text(encoding="ascii").splitlines():
        if line.startswith("# ") and " = " in line:
            key, _, value = line[2:].partition(" = ")
            meta[key] = value
        elif line and line[0] not in "#t":
            rows.append([float(v) for v in line.split(",")])

    def pair(s):
        a, b = s.split(",")
        return (float(a), float(b))

    pts = [tuple(float(v) for v in tok.split(";")) for tok in meta.get("switch_points", "").split()]
    plan = BangBangPlan.build(
        ControlSign(int(meta["start_sign"])),
        float(meta["first_duration"]),
        int(meta["num_switches"]),
        float(meta["last_duration"]),
        pts,
    )
    return {
        "start": pair(meta["start"]),
        "target": pair(meta["target"]),
        "plan": plan,
        "endpoint": pair(meta["endpoint"]),
        "samples": np.array(rows),
    }


def write_summary(path: str | Path, summary: dict) -> Path:
    path = Path(path)
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
