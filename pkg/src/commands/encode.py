"""
`encode`: compress a file into an ECB container.
"""
import logging
import sys

from commands import ExitCode
from core.PlaneCodec import PlaneCodec
from utils.utils import read_input, write_output

logger = logging.getLogger(__name__)


def default_output(input_path: str) -> str:
    return "-" if input_path == "-" else input_path + ".ecb"


def run(args, settings_manager) -> int:
    """
    Encode `args.input` and write the container to `args.output` (default: input + ".ecb").

    The summary line (N, m, order, plane bits, compressed bytes) always goes to stderr.
    """
    data = read_input(args.input)
    policy = args.order or settings_manager.get("order_policy")
    threads = args.threads if args.threads is not None else settings_manager.get("threads")

    with PlaneCodec(threads) as codec:
        result = codec.encode(data, policy)

    output = args.output or default_output(args.input)
    write_output(output, result.container)
    print(result.summary(), file=sys.stderr)
    logger.info(f"Wrote {len(result.container)} bytes to {output}")
    return ExitCode.OK
