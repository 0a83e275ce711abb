"""
`trace`: print the step-by-step binarization and de-binarization tables of a small input.
"""
import logging

from commands import ExitCode
from core.alphabet import discover_alphabet, resolve_order
from core.binarizer import binarization_trace, binarize, debinarization_trace
from utils.utils import read_input, render_bytes, write_text

logger = logging.getLogger(__name__)

LARGE_TRACE = 4096


def render_trace(data: bytes, policy: str) -> str:
    """Both tables as plain text, one row per plane."""
    alphabet = discover_alphabet(data)
    order = resolve_order(alphabet, policy)
    symbols = render_bytes(bytes(order.symbols(alphabet)))
    width = max(len(data), len("residual"))

    lines = [f"binarization (order {','.join(symbols)})", f"{'step':<6}{'residual':<{width + 2}}plane"]
    for i, step in enumerate(binarization_trace(data, alphabet, order), start=1):
        lines.append(f"{i:<6}{render_bytes(step.residual):<{width + 2}}{step.plane.to_string()}")

    lines.append("")
    lines.append("de-binarization")
    lines.append(f"{'step':<6}{'filled':<{width + 2}}data")
    for i, step in enumerate(debinarization_trace(binarize(data, alphabet, order)), start=1):
        lines.append(f"{i:<6}{step.filled:<{width + 2}}{step.data}")
    return "\n".join(lines) + "\n"


def run(args, settings_manager) -> int:
    data = read_input(args.input)
    if len(data) > LARGE_TRACE:
        logger.warning(f"Tracing {len(data)} bytes; the tables grow with N * m")
    write_text(args.output, render_trace(data, args.order or settings_manager.get("order_policy")))
    return ExitCode.OK
