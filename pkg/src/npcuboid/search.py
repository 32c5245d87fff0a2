"""Bounded deterministic sweep over seed curves, multiples and parametrizations.

One task per (curve, k, m, parametrization). Tasks are pure functions of
primitive inputs, so they can run on any number of worker processes; records
come back in the enumeration order (N, k, m, parametrization index) and two
runs of one job are byte-identical regardless of the worker count. Output is
append-only JSONL, which makes interrupted sweeps resumable from the last
completed record.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterator

from .cuboids import PARAMETRIZATIONS, build_npc, cuboid_to_json, pc_condition
from .curve import CongruentCurve, CurvePoint, load_seeds, point_from_json, same_parity_pair
from .errors import DegeneratePair, InvalidSeed, ZeroSide
from .rationals import format_rational, max_decimal_digits, parse_rational

DEFAULT_HEIGHT_LIMIT = 200

_PARAM_INDEX = {name: i for i, name in enumerate(PARAMETRIZATIONS)}


@dataclass(frozen=True)
class SearchJob:
    """A sweep description: which seeds, how far, which parametrizations.

    height_limit caps the decimal digits of any cuboid entry; records beyond
    it are emitted truncated (the exact values are cheap to regenerate, the
    JSONL bloat is not).
    """

    seeds: tuple[CurvePoint, ...]
    max_multiple: int
    parity: str = "both"
    parametrizations: tuple[str, ...] = PARAMETRIZATIONS
    height_limit: int = DEFAULT_HEIGHT_LIMIT

    def __post_init__(self):
        if self.max_multiple < 2:
            raise ValueError("max_multiple must be at least 2")
        if self.height_limit < 1:
            raise ValueError("height_limit must be at least 1")
        if self.parity not in ("odd", "even", "both"):
            raise ValueError(f"unknown parity class {self.parity!r}")
        unknown = [p for p in self.parametrizations if p not in _PARAM_INDEX]
        if unknown:
            raise ValueError(f"unknown parametrizations: {unknown}")
        # Normalize to canonical order so record order never depends on how
        # the job file happened to list them.
        object.__setattr__(
            self,
            "parametrizations",
            tuple(sorted(set(self.parametrizations), key=_PARAM_INDEX.__getitem__)),
        )
        seen = set()
        for seed in self.seeds:
            if seed.is_trivial or not seed.on_curve():
                raise InvalidSeed(f"seed {seed} is not a nontrivial curve point")
            if seed.curve.N in seen:
                raise InvalidSeed(f"duplicate seed curve N={seed.curve.N}")
            seen.add(seed.curve.N)


def job_from_json(record: dict, seed_path: str | None = None) -> SearchJob:
    """Build a job from its JSON form; seeds default to the packaged file."""
    if "seeds" in record:
        seeds = tuple(point_from_json(entry) for entry in record["seeds"])
    else:
        seeds = tuple(load_seeds(seed_path))
    return SearchJob(
        seeds=seeds,
        max_multiple=int(record["max_multiple"]),
        parity=record.get("parity", "both"),
        parametrizations=tuple(record.get("parametrizations", PARAMETRIZATIONS)),
        height_limit=int(record.get("height_limit", DEFAULT_HEIGHT_LIMIT)),
    )


def _multiple_pairs(job: SearchJob) -> Iterator[tuple[int, int]]:
    for k in range(1, job.max_multiple + 1):
        if job.parity == "odd" and k % 2 == 0:
            continue
        if job.parity == "even" and k % 2 == 1:
            continue
        for m in range(k + 1, job.max_multiple + 1):
            if job.parity == "odd" and m % 2 == 0:
                continue
            if job.parity == "even" and m % 2 == 1:
                continue
            yield k, m


def _tasks(job: SearchJob) -> list[tuple]:
    tasks = []
    for seed in sorted(job.seeds, key=lambda p: p.curve.N):
        x, y = format_rational(seed.x), format_rational(seed.y)
        for k, m in _multiple_pairs(job):
            for param in job.parametrizations:
                tasks.append((seed.curve.N, x, y, k, m, param, job.height_limit))
    return tasks


def task_key(record: dict) -> tuple[int, int, int, int]:
    return record["N"], record["k"], record["m"], _PARAM_INDEX[record["parametrization"]]


def _run_task(task: tuple) -> dict:
    n, x, y, k, m, param, height_limit = task
    seed = CongruentCurve(n).point(parse_rational(x), parse_rational(y))
    record = {"N": n, "k": k, "m": m, "parametrization": param}
    try:
        pair = same_parity_pair(seed, k, m)
        cuboid = build_npc(pair, param)
    except (DegeneratePair, ZeroSide) as exc:
        record["skipped"] = str(exc)
        return record
    digits = max_decimal_digits(int(v) for v in cuboid.rational_entries())
    record["digits"] = digits
    if digits > height_limit:
        record["truncated"] = True
        return record
    record["pc"] = pc_condition(cuboid)
    record["cuboid"] = cuboid_to_json(cuboid)
    return record


def run_search(
    job: SearchJob, workers: int = 1, skip_through: tuple | None = None
) -> Iterator[dict]:
    """Yield one record per (seed, k, m, parametrization) in sorted order.

    skip_through drops every task up to and including that (N, k, m,
    parametrization-index) key; pass the key of the last completed record to
    resume an interrupted sweep.
    """
    tasks = _tasks(job)
    if skip_through is not None:
        tasks = [t for t in tasks if (t[0], t[3], t[4], _PARAM_INDEX[t[5]]) > skip_through]
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            yield _run_task(task)
        return
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        yield from pool.map(_run_task, tasks, chunksize=1)


def write_records(records: Iterator[dict], stream: IO[str]) -> int:
    """Append records as one compact JSON object per line; returns the count."""
    count = 0
    for record in records:
        stream.write(json.dumps(record, separators=(",", ":")) + "\n")
        count += 1
    return count


def last_record_key(path: str | Path) -> tuple | None:
    """Key of the last complete record in an existing JSONL output file."""
    last = None
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            last = task_key(json.loads(line))
        except (json.JSONDecodeError, KeyError):
            continue  # torn final line from an interrupted run
    return last
