"""
Subcommands of the ECB command-line tool. Every module exposes `run(args, settings_manager) -> int`.

Exit codes are shared by all subcommands; exit_code_for maps a raised error to its code.
"""
from enum import IntEnum

from core.alphabet import NotAPermutation
from core.binarizer import PlaneLengthMismatch, PlaneUnderflow
from core.entropy import EmptyInput
from services.ecb_container import ContainerError
from services.range_coder import CorruptPayload, TruncatedPayload


class ExitCode(IntEnum):
    OK = 0
    UNEXPECTED = 1
    USAGE = 2
    IO = 3
    BAD_ORDER = 4
    CORRUPT = 5
    CONSERVATION = 6
    EMPTY_INPUT = 7


def exit_code_for(error: BaseException) -> ExitCode:
    """Exit code for an error raised by a subcommand. Subclasses are checked before ValueError."""
    if isinstance(error, NotAPermutation):
        return ExitCode.BAD_ORDER
    if isinstance(error, (ContainerError, TruncatedPayload, CorruptPayload, PlaneLengthMismatch, PlaneUnderflow)):
        return ExitCode.CORRUPT
    if isinstance(error, EmptyInput):
        return ExitCode.EMPTY_INPUT
    if isinstance(error, OSError):
        return ExitCode.IO
    if isinstance(error, ValueError):
        return ExitCode.USAGE
    return ExitCode.UNEXPECTED
