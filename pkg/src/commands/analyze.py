"""
`analyze`: report the source entropy, the per-plane entropies and the conservation residual of a file.

The command fails with ExitCode.CONSERVATION when the residual exceeds the configured tolerance.
"""
import csv
import io
import json
import logging

from commands import ExitCode
from core.alphabet import discover_alphabet, resolve_order
from core.entropy import EmptyInput, EntropyReport, verify_conservation, weighted_plane_entropy
from utils.utils import read_input, write_text

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("plane", "symbol", "bit_length", "weight", "entropy", "weighted_entropy", "h_source", "residual")


def render_json(report: EntropyReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render_csv(report: EntropyReport) -> str:
    """
    One row per plane (the implicit final plane included), then a "total" row carrying
    the weighted sum, the source entropy and the residual.
    """
    # The implicit plane covers exactly the positions left after the emitted ones.
    lengths = list(report.plane_lengths)
    if report.m >= 1:
        lengths.append(round(report.plane_weights[-1] * report.total))

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for i, symbol in enumerate(report.order):
        weight, entropy = report.plane_weights[i], report.plane_entropies[i]
        writer.writerow([i, symbol, lengths[i], repr(weight), repr(entropy), repr(weight * entropy), "", ""])
    writer.writerow([
        "total", "", report.predicted_total_bits, "", "", repr(report.h_weighted_sum),
        repr(report.h_source), repr(report.residual),
    ])
    return buffer.getvalue()


def run(args, settings_manager) -> int:
    data = read_input(args.input)
    alphabet = discover_alphabet(data)
    if alphabet.total == 0:
        raise EmptyInput(f"{args.input} is empty; entropy is undefined")

    order = resolve_order(alphabet, args.order or settings_manager.get("order_policy"))
    report = weighted_plane_entropy(alphabet, order)

    report_format = args.format or settings_manager.get("report_format")
    text = render_csv(report) if report_format == "csv" else render_json(report)
    write_text(args.output, text)

    conservation = verify_conservation(alphabet, order, tol=float(settings_manager.get("conservation_tolerance")))
    if not conservation.ok:
        return ExitCode.CONSERVATION
    logger.info(f"H(Y)={report.h_source:.6f} bits/symbol, residual {report.residual:.3e}")
    return ExitCode.OK
