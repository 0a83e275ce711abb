"""
This module contains the BenchRunner class, the benchmark harness behind `main.py bench`.

For every (distribution, size) pair it draws a seeded i.i.d. sample and measures:
    ecb_encode / ecb_decode   full pipeline; bits/symbol from the container size
    ecb_planes                binarization only; bits/symbol of an ideal coder on the planes
    unary, truncated_unary,   raw codeword bits of the classical binarizations
    fixed_length, exp_golomb
Sizes are usually a doubling series so consecutive wall-time ratios show how run time scales.
"""
import csv
import logging
import time
from dataclasses import dataclass, fields, replace
from typing import Callable, Dict, List, Optional, TextIO, Tuple

from core.alphabet import discover_alphabet, order_by_frequency
from core.baselines import Scheme, baseline_stream_bits
from core.binarizer import binarize
from core.entropy import mary_entropy, weighted_plane_entropy
from core.PlaneCodec import PlaneCodec
from core.sources import parse_distribution

logger = logging.getLogger(__name__)

LINEARITY_BAND = (1.6, 2.5)
TIMED_PIPELINE = ("ecb_encode", "ecb_decode")


@dataclass(frozen=True)
class BenchRow:
    scheme: str
    distribution: str
    size: int
    wall_time_s: float
    time_ratio: Optional[float]
    bits_per_symbol: float
    source_entropy: float
    ratio: Optional[float]


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_csv(rows: List[BenchRow], stream: TextIO) -> None:
    """Write rows as CSV with a header; floats use six decimals so output is byte-stable."""
    names = [f.name for f in fields(BenchRow)]
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(names)
    for row in rows:
        writer.writerow([_format(getattr(row, name)) for name in names])


def linearity_violations(rows: List[BenchRow], band: Tuple[float, float] = LINEARITY_BAND) -> List[BenchRow]:
    """Pipeline rows whose size doubled from the previous row of the series but whose time ratio left `band`."""
    previous: Dict[Tuple[str, str], BenchRow] = {}
    outliers = []
    for row in rows:
        key = (row.scheme, row.distribution)
        before = previous.get(key)
        previous[key] = row
        if row.scheme not in TIMED_PIPELINE or before is None or row.time_ratio is None:
            continue
        if row.size == 2 * before.size and not band[0] <= row.time_ratio <= band[1]:
            outliers.append(row)
    return outliers


class BenchRunner:
    """
    Runs the benchmark matrix.

    Attributes:
        codec (PlaneCodec): Pipeline used for the ecb rows.
        repetitions (int): Timed runs per measurement; the fastest is kept.
        seed (int): Base seed; each (distribution, size) cell derives its own.
        timings (bool): When False every wall time is reported as 0 so the CSV is reproducible byte for byte.
    """

    def __init__(self, codec: PlaneCodec, repetitions: int = 3, seed: int = 0, timings: bool = True):
        if repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        self.codec = codec
        self.repetitions = repetitions
        self.seed = seed
        self.timings = timings

    def _timed(self, fn: Callable):
        best = None
        result = None
        for _ in range(self.repetitions):
            start = time.perf_counter()
            result = fn()
            elapsed = time.perf_counter() - start
            best = elapsed if best is None else min(best, elapsed)
        return (best if self.timings else 0.0), result

    def _cell(self, spec: str, size: int, seed: int) -> List[BenchRow]:
        data = parse_distribution(spec).sample(size, seed)
        alphabet = discover_alphabet(data)
        entropy = mary_entropy(alphabet)

        def row(scheme: str, wall: float, bits: float) -> BenchRow:
            bits_per_symbol = bits / size
            ratio = bits_per_symbol / entropy if entropy > 0 else None
            return BenchRow(scheme, spec, size, wall, None, bits_per_symbol, entropy, ratio)

        rows = []
        wall, encoded = self._timed(lambda: self.codec.encode(data))
        rows.append(row("ecb_encode", wall, 8 * len(encoded.container)))

        wall, decoded = self._timed(lambda: self.codec.decode(encoded.container))
        if decoded != data:
            raise RuntimeError(f"Round trip failed for {spec} at size {size}")
        rows.append(row("ecb_decode", wall, 8 * len(encoded.container)))

        order = order_by_frequency(alphabet)
        wall, _ = self._timed(lambda: binarize(data, alphabet, order))
        report = weighted_plane_entropy(alphabet, order)
        rows.append(row("ecb_planes", wall, report.h_weighted_sum * size))

        for scheme in Scheme:
            wall, bits = self._timed(lambda: baseline_stream_bits(data, alphabet, scheme))
            rows.append(row(scheme.value, wall, bits))
        return rows

    def run(self, distributions: List[str], sizes: List[int]) -> List[BenchRow]:
        """
        Measure every distribution at every size.

        Returns:
            List[BenchRow]: Rows grouped by distribution, then size, with time ratios filled in.
        """
        # Compile the coder loops before anything is timed.
        self.codec.decode(self.codec.encode(b"\x00\x01\x01").container)

        rows: List[BenchRow] = []
        for d, spec in enumerate(distributions):
            for s, size in enumerate(sizes):
                logger.info(f"Benchmarking {spec} at {size} bytes")
                rows.extend(self._cell(spec, size, self.seed + d * len(sizes) + s))

        previous: Dict[Tuple[str, str], BenchRow] = {}
        with_ratios = []
        for row in rows:
            key = (row.scheme, row.distribution)
            before = previous.get(key)
            ratio = None
            if self.timings and before is not None and before.wall_time_s > 0:
                ratio = row.wall_time_s / before.wall_time_s
            updated = replace(row, time_ratio=ratio)
            with_ratios.append(updated)
            previous[key] = updated

        for outlier in linearity_violations(with_ratios):
            logger.warning(
                f"{outlier.scheme} on {outlier.distribution}: time ratio {outlier.time_ratio:.2f} "
                f"at size {outlier.size} is outside {LINEARITY_BAND}"
            )
        return with_ratios
