import io
import json

import pytest

from npcuboid import (
    CongruentCurve,
    InvalidSeed,
    cuboid_from_json,
    load_seeds,
    pc_condition,
    verify_npc,
)
from npcuboid.search import (
    SearchJob,
    job_from_json,
    last_record_key,
    run_search,
    task_key,
    write_records,
)


def render(job, workers=1, skip_through=None):
    buffer = io.StringIO()
    write_records(run_search(job, workers=workers, skip_through=skip_through), buffer)
    return buffer.getvalue()


@pytest.fixture(scope="module")
def small_job():
    seeds = tuple(s for s in load_seeds() if s.curve.N in (5, 6))
    return SearchJob(
        seeds=seeds,
        max_multiple=4,
        parity="both",
        parametrizations=("invariant", "first"),
        height_limit=1000,
    )


class TestDeterminism:
    def test_single_and_multi_worker_outputs_are_byte_identical(self, small_job):
        assert render(small_job, workers=1) == render(small_job, workers=4)

    def test_repeated_runs_are_byte_identical(self, small_job):
        assert render(small_job) == render(small_job)

    def test_records_are_sorted_by_task_key(self, small_job):
        records = [json.loads(line) for line in render(small_job).splitlines()]
        keys = [task_key(r) for r in records]
        assert keys == sorted(keys)


class TestRecordContents:
    def test_emitted_cuboids_verify_and_are_not_perfect(self, small_job):
        records = [json.loads(line) for line in render(small_job).splitlines()]
        emitted = [r for r in records if "cuboid" in r]
        assert len(emitted) >= 8
        for record in emitted:
            cuboid = cuboid_from_json(record["cuboid"])
            assert verify_npc(cuboid) == []
            assert record["pc"] == pc_condition(cuboid)
            assert record["digits"] == max(
                len(str(int(v))) for v in cuboid.rational_entries()
            )

    def test_mixed_parity_combos_become_skip_records(self, small_job):
        records = [json.loads(line) for line in render(small_job).splitlines()]
        skips = [r for r in records if "skipped" in r]
        assert skips and all((r["k"] - r["m"]) % 2 == 1 for r in skips)

    def test_max_multiple_two_gives_only_skip_records(self):
        seeds = tuple(s for s in load_seeds() if s.curve.N == 5)
        job = SearchJob(seeds=seeds, max_multiple=2, parametrizations=("invariant",))
        records = [json.loads(line) for line in render(job).splitlines()]
        assert records and all("skipped" in r for r in records)

    def test_height_limit_truncates(self):
        seeds = tuple(s for s in load_seeds() if s.curve.N == 5)
        job = SearchJob(
            seeds=seeds, max_multiple=3, parametrizations=("invariant",), height_limit=1
        )
        records = [json.loads(line) for line in render(job).splitlines()]
        truncated = [r for r in records if r.get("truncated")]
        assert truncated
        for record in truncated:
            assert "cuboid" not in record and "pc" not in record
            assert record["digits"] > 1

    def test_parity_classes_restrict_enumeration(self):
        seeds = tuple(s for s in load_seeds() if s.curve.N == 5)
        for parity, keep in (("odd", {1, 3, 5}), ("even", {2, 4})):
            job = SearchJob(
                seeds=seeds, max_multiple=5, parity=parity, parametrizations=("invariant",)
            )
            records = [json.loads(line) for line in render(job).splitlines()]
            assert records
            for record in records:
                assert {record["k"], record["m"]} <= keep

    def test_height_growth_telemetry(self, small_job):
        # Digit counts look monotone in m for fixed (N, k), but nothing
        # guarantees it; log exceptions instead of failing on them.
        records = [json.loads(line) for line in render(small_job).splitlines()]
        by_base = {}
        for record in records:
            if record.get("parametrization") == "invariant" and "digits" in record:
                by_base.setdefault((record["N"], record["k"]), []).append(
                    (record["m"], record["digits"])
                )
        assert by_base
        for (n, k), entries in sorted(by_base.items()):
            digit_run = [d for _, d in sorted(entries)]
            if digit_run != sorted(digit_run):
                print(f"note: non-monotone height growth on N={n}, k={k}: {digit_run}")


class TestResume:
    def test_resume_completes_an_interrupted_run(self, small_job, tmp_path):
        full = render(small_job)
        lines = full.splitlines(keepends=True)
        partial_path = tmp_path / "out.jsonl"
        partial_path.write_text("".join(lines[: len(lines) // 2]))

        key = last_record_key(partial_path)
        assert key == task_key(json.loads(lines[len(lines) // 2 - 1]))
        with open(partial_path, "a") as stream:
            write_records(run_search(small_job, skip_through=key), stream)
        assert partial_path.read_text() == full

    def test_torn_final_line_is_ignored(self, small_job, tmp_path):
        full = render(small_job).splitlines(keepends=True)
        path = tmp_path / "out.jsonl"
        path.write_text("".join(full[:3]) + '{"N":5,"k":2,"m"')
        assert last_record_key(path) == task_key(json.loads(full[2]))


class TestJobConstruction:
    def test_from_json_with_inline_seeds(self):
        job = job_from_json(
            {
                "seeds": [{"N": 5, "x": "-4", "y": "6"}],
                "max_multiple": 4,
                "parametrizations": ["first", "invariant"],
            }
        )
        assert job.seeds[0].curve.N == 5
        assert job.parity == "both"
        # Canonical ordering regardless of how the job file lists them.
        assert job.parametrizations == ("invariant", "first")

    def test_from_json_defaults_to_packaged_seeds(self):
        job = job_from_json({"max_multiple": 3})
        assert [s.curve.N for s in job.seeds] == [5, 6, 7, 34]
        assert job.parametrizations == (
            "invariant", "first", "first_reflected", "second", "second_reflected",
        )

    def test_rejects_duplicate_curves(self):
        seed = load_seeds()[0]
        with pytest.raises(InvalidSeed):
            SearchJob(seeds=(seed, seed), max_multiple=4)

    def test_rejects_off_curve_seed(self):
        bad = CongruentCurve(5).point(1, 1)
        with pytest.raises(InvalidSeed):
            SearchJob(seeds=(bad,), max_multiple=4)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"max_multiple": 1},
            {"max_multiple": 4, "height_limit": 0},
            {"max_multiple": 4, "parity": "mixed"},
            {"max_multiple": 4, "parametrizations": ("third",)},
        ],
    )
    def test_rejects_bad_parameters(self, kwargs):
        seeds = tuple(load_seeds()[:1])
        with pytest.raises(ValueError):
            SearchJob(seeds=seeds, **kwargs)
