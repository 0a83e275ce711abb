"""
`bench`: run the benchmark matrix and write its CSV.
"""
import io
import logging

from commands import ExitCode
from core.BenchRunner import BenchRunner, write_csv
from core.PlaneCodec import PlaneCodec
from core.sources import parse_distribution
from utils.utils import parse_sizes, write_text

logger = logging.getLogger(__name__)


def run(args, settings_manager) -> int:
    sizes = parse_sizes(args.sizes) if args.sizes else list(settings_manager.get("bench_sizes"))
    distributions = args.dist or list(settings_manager.get("bench_distributions"))
    # Reject bad distribution specs before any time is spent measuring.
    for spec in distributions:
        parse_distribution(spec)

    repetitions = args.repetitions or settings_manager.get("bench_repetitions")
    seed = args.seed if args.seed is not None else settings_manager.get("seed")
    threads = args.threads if args.threads is not None else settings_manager.get("threads")

    with PlaneCodec(threads) as codec:
        runner = BenchRunner(codec, repetitions=repetitions, seed=seed, timings=not args.no_timings)
        rows = runner.run(distributions, sizes)

    buffer = io.StringIO()
    write_csv(rows, buffer)
    write_text(args.output, buffer.getvalue())
    logger.info(f"📊 Benchmarked {len(distributions)} distributions at {len(sizes)} sizes ({len(rows)} rows)")
    return ExitCode.OK
