import csv
import json
import logging

import pytest

from commands import ExitCode, analyze
from core.entropy import ConservationResult
from main import main
from services.ecb_container import read_container
from services.range_coder import decode_plane

EXAMPLE = b"AABCBACBBACCABACB"


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.txt"
    path.write_bytes(EXAMPLE)
    return path


def test_encode_decode_round_trip(example_file, tmp_path, capsys):
    container = tmp_path / "example.ecb"
    restored = tmp_path / "restored.txt"

    assert main(["encode", str(example_file), "-o", str(container), "--order", "explicit:A,B,C"]) == ExitCode.OK
    assert "N=17 m=3 order=A,B,C plane_bits=28" in capsys.readouterr().err

    records = read_container(container.read_bytes()).planes
    assert [decode_plane(r.payload, r.bit_length).to_string() for r in records] == ["11000100010010100", "10101100101"]

    assert main(["decode", str(container), "-o", str(restored)]) == ExitCode.OK
    assert restored.read_bytes() == EXAMPLE


def test_default_output_paths(example_file):
    assert main(["encode", str(example_file)]) == ExitCode.OK
    encoded = example_file.with_name("example.txt.ecb")
    assert encoded.exists()

    example_file.unlink()
    assert main(["decode", str(encoded)]) == ExitCode.OK
    assert example_file.read_bytes() == EXAMPLE


def test_container_does_not_depend_on_threads(example_file, tmp_path):
    one, four = tmp_path / "one.ecb", tmp_path / "four.ecb"
    assert main(["encode", str(example_file), "-o", str(one), "--threads", "1"]) == ExitCode.OK
    assert main(["encode", str(example_file), "-o", str(four), "--threads", "4"]) == ExitCode.OK
    assert one.read_bytes() == four.read_bytes()


def test_empty_file(tmp_path):
    empty = tmp_path / "empty.bin"
    empty.write_bytes(b"")
    container = tmp_path / "empty.ecb"
    restored = tmp_path / "empty.out"

    assert main(["encode", str(empty), "-o", str(container)]) == ExitCode.OK
    assert read_container(container.read_bytes()).total == 0
    assert main(["decode", str(container), "-o", str(restored)]) == ExitCode.OK
    assert restored.read_bytes() == b""
    assert main(["analyze", str(empty)]) == ExitCode.EMPTY_INPUT


def test_error_exit_codes(example_file, tmp_path):
    assert main(["encode", str(example_file), "--order", "explicit:A,B"]) == ExitCode.BAD_ORDER
    assert main(["encode", str(example_file), "--order", "sorted"]) == ExitCode.USAGE
    assert main(["encode", str(tmp_path / "missing.txt")]) == ExitCode.IO
    assert main(["frobnicate"]) == ExitCode.USAGE

    not_a_container = tmp_path / "garbage.ecb"
    not_a_container.write_bytes(b"PK\x03\x04 not ours")
    assert main(["decode", str(not_a_container), "-o", str(tmp_path / "x")]) == ExitCode.CORRUPT


def test_truncated_container_is_corrupt(example_file, tmp_path):
    container = tmp_path / "example.ecb"
    assert main(["encode", str(example_file), "-o", str(container)]) == ExitCode.OK
    container.write_bytes(container.read_bytes()[:-3])
    assert main(["decode", str(container), "-o", str(tmp_path / "x")]) == ExitCode.CORRUPT


def test_analyze_json_report(example_file, tmp_path):
    report_path = tmp_path / "report.json"
    assert main(["analyze", str(example_file), "-o", str(report_path)]) == ExitCode.OK
    report = json.loads(report_path.read_text())
    assert report["h_source"] == pytest.approx(1.5798, abs=1e-4)
    assert report["residual"] <= 1e-12
    assert report["plane_lengths"] == [17, 11]
    assert report["predicted_total_bits"] == 28
    assert len(report["plane_weights"]) == len(report["plane_entropies"]) == 3


def test_analyze_csv_report(example_file, tmp_path):
    report_path = tmp_path / "report.csv"
    assert main(["analyze", str(example_file), "--format", "csv", "-o", str(report_path)]) == ExitCode.OK
    rows = list(csv.DictReader(report_path.read_text().splitlines()))
    assert [r["plane"] for r in rows] == ["0", "1", "2", "total"]
    assert [r["bit_length"] for r in rows] == ["17", "11", "5", "28"]
    assert float(rows[-1]["residual"]) <= 1e-12


def test_analyze_single_symbol_file(tmp_path):
    path = tmp_path / "z.txt"
    path.write_bytes(b"ZZZZ")
    report_path = tmp_path / "report.json"
    assert main(["analyze", str(path), "-o", str(report_path)]) == ExitCode.OK
    report = json.loads(report_path.read_text())
    assert report["h_source"] == 0.0
    assert report["residual"] == 0.0


def test_analyze_reads_settings(example_file, tmp_path, isolated_settings):
    isolated_settings.write_text("report_format: csv\n")
    report_path = tmp_path / "report.out"
    assert main(["analyze", str(example_file), "-o", str(report_path)]) == ExitCode.OK
    assert report_path.read_text().startswith("plane,symbol,bit_length")


def test_trace_prints_both_tables(example_file, capsys):
    assert main(["trace", str(example_file), "--order", "explicit:A,B,C"]) == ExitCode.OK
    out = capsys.readouterr().out
    assert "AABCBACBBACCABACB  11000100010010100" in out
    assert "BCBCBBCCBCB" in out
    assert "11111" in out
    assert "AA101A011A00A1A01" in out
    assert out.rstrip().endswith("AABCBACBBACCABACB")


def test_bench_is_reproducible(tmp_path):
    args = ["bench", "--sizes", "1000,2000", "--dist", "uniform:5", "--dist", "twospike:0.9",
            "--repetitions", "1", "--seed", "3", "--no-timings"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["-o", str(first)]) == ExitCode.OK
    assert main(args + ["-o", str(second), "--threads", "3"]) == ExitCode.OK
    assert first.read_text() == second.read_text()
    assert len(first.read_text().splitlines()) == 1 + 2 * 2 * 7


def test_bench_rejects_unknown_distribution(tmp_path):
    assert main(["bench", "--dist", "poisson:2", "-o", str(tmp_path / "a.csv")]) == ExitCode.USAGE


def test_flipped_payload_byte_is_corrupt(example_file, tmp_path):
    container = tmp_path / "example.ecb"
    assert main(["encode", str(example_file), "-o", str(container)]) == ExitCode.OK
    blob = container.read_bytes()
    first_payload = read_container(blob).planes[0].payload
    # m = 3: the first payload starts at byte 39.
    assert blob[39:39 + len(first_payload)] == first_payload

    for offset in range(39, 39 + len(first_payload)):
        tampered = bytearray(blob)
        tampered[offset] ^= 0x10
        container.write_bytes(bytes(tampered))
        assert main(["decode", str(container), "-o", str(tmp_path / "x")]) == ExitCode.CORRUPT


def test_analyze_fails_on_a_conservation_violation(example_file, tmp_path, monkeypatch):
    monkeypatch.setattr(
        analyze, "verify_conservation", lambda *args, **kwargs: ConservationResult(ok=False, residual=1e-3, tolerance=1e-9)
    )
    report_path = tmp_path / "report.json"
    assert main(["analyze", str(example_file), "-o", str(report_path)]) == ExitCode.CONSERVATION
    assert "h_source" in json.loads(report_path.read_text())


def test_analyze_rejects_a_non_positive_tolerance(example_file, tmp_path, isolated_settings):
    isolated_settings.write_text("conservation_tolerance: 0\n")
    assert main(["analyze", str(example_file), "-o", str(tmp_path / "r.json")]) == ExitCode.USAGE


def test_debug_log_lists_the_loaded_settings(example_file, tmp_path, monkeypatch, caplog):
    monkeypatch.setenv("ECBIN_LOG", "DEBUG")
    with caplog.at_level(logging.DEBUG):
        assert main(["analyze", str(example_file), "-o", str(tmp_path / "r.json")]) == ExitCode.OK
    assert "Settings loaded from" in caplog.text
    assert "'order_policy': 'freq'" in caplog.text
