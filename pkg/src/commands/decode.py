"""
`decode`: reconstruct the original file from an ECB container.
"""
import logging

from commands import ExitCode
from core.PlaneCodec import PlaneCodec
from utils.utils import read_input, write_output

logger = logging.getLogger(__name__)


def default_output(input_path: str) -> str:
    """Strip a trailing ".ecb", otherwise append ".out"."""
    if input_path == "-":
        return "-"
    if input_path.endswith(".ecb") and len(input_path) > len(".ecb"):
        return input_path[:-len(".ecb")]
    return input_path + ".out"


def run(args, settings_manager) -> int:
    blob = read_input(args.input)
    threads = args.threads if args.threads is not None else settings_manager.get("threads")

    with PlaneCodec(threads) as codec:
        data = codec.decode(blob)

    output = args.output or default_output(args.input)
    write_output(output, data)
    logger.info(f"Decoded {len(data)} bytes to {output}")
    return ExitCode.OK
