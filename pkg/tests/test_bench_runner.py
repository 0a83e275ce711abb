import io

import pytest

from core.BenchRunner import BenchRow, BenchRunner, linearity_violations, write_csv
from core.PlaneCodec import PlaneCodec

SCHEMES = ["ecb_encode", "ecb_decode", "ecb_planes", "unary", "truncated_unary", "fixed_length", "exp_golomb"]


def run_bench(timings: bool, **kwargs):
    with PlaneCodec(threads=1) as codec:
        runner = BenchRunner(codec, repetitions=1, seed=5, timings=timings)
        return runner.run(kwargs.get("distributions", ["uniform:5"]), kwargs.get("sizes", [2000, 4000]))


def test_rows_cover_every_scheme_and_size():
    rows = run_bench(timings=False)
    assert [r.scheme for r in rows] == SCHEMES * 2
    assert [r.size for r in rows] == [2000] * 7 + [4000] * 7
    assert all(r.wall_time_s == 0.0 and r.time_ratio is None for r in rows)


def test_csv_is_reproducible_without_timings():
    first, second = io.StringIO(), io.StringIO()
    write_csv(run_bench(timings=False), first)
    write_csv(run_bench(timings=False), second)
    assert first.getvalue() == second.getvalue()
    header = first.getvalue().splitlines()[0]
    assert header == "scheme,distribution,size,wall_time_s,time_ratio,bits_per_symbol,source_entropy,ratio"


def test_time_ratios_follow_the_doubling_series():
    rows = run_bench(timings=True)
    first = [r for r in rows if r.size == 2000]
    second = [r for r in rows if r.size == 4000]
    assert all(r.time_ratio is None for r in first)
    for before, after in zip(first, second):
        assert after.wall_time_s > 0
        assert after.time_ratio == pytest.approx(after.wall_time_s / before.wall_time_s)


def test_ecb_rows_sit_near_the_source_entropy():
    rows = run_bench(timings=False, distributions=["geometric:0.3", "uniform:5"], sizes=[20000])
    by_key = {(r.scheme, r.distribution): r for r in rows}
    for spec in ("geometric:0.3", "uniform:5"):
        encoded = by_key[("ecb_encode", spec)]
        planes = by_key[("ecb_planes", spec)]
        assert planes.ratio == pytest.approx(1.0, abs=1e-9)
        # Header, record and flush bytes stay under a kilobyte.
        assert encoded.bits_per_symbol <= encoded.source_entropy * 1.01 + 8 * 1024 / encoded.size
    assert by_key[("unary", "uniform:5")].ratio > 1.2


def test_single_symbol_rows_have_no_ratio():
    rows = run_bench(timings=False, distributions=["uniform:1"], sizes=[100])
    assert all(r.source_entropy == 0.0 and r.ratio is None for r in rows)


def test_linearity_violations():
    def row(size, ratio):
        return BenchRow("ecb_encode", "uniform:5", size, 1.0, ratio, 1.0, 1.0, 1.0)

    rows = [row(1000, None), row(2000, 2.0), row(4000, 3.1), row(8000, 1.2)]
    assert [r.size for r in linearity_violations(rows)] == [4000, 8000]
    baseline = [BenchRow("unary", "uniform:5", 2000, 1.0, 9.0, 1.0, 1.0, 1.0)]
    assert linearity_violations(baseline) == []


def test_repetitions_must_be_positive():
    with PlaneCodec(threads=1) as codec, pytest.raises(ValueError):
        BenchRunner(codec, repetitions=0)
