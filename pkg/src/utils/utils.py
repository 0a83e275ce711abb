"""
This module provides a collection of helper functions used throughout the ECB toolkit:
parsing of command-line values (order policies, size lists, symbol tokens), thread-count
resolution, file and stdin/stdout access, and rendering of byte streams for the trace output.
"""
import logging
import os
import sys
from dataclasses import dataclass
from typing import List, Tuple

logger = logging.getLogger(__name__)

ORDER_POLICIES = ("freq", "first-seen", "explicit")


@dataclass(frozen=True)
class OrderPolicy:
    """
    A parsed `--order` value.

    Attributes:
        kind (str): One of "freq", "first-seen" or "explicit".
        symbols (Tuple[int, ...]): Byte values of an explicit order, empty otherwise.
    """
    kind: str
    symbols: Tuple[int, ...] = ()


# ------------------------------
# PARSING
# ------------------------------


def parse_symbol_token(token: str) -> int:
    """
    Convert one explicit-order token into a byte value.

    A single character stands for itself, `0xNN` is hexadecimal and any longer run of
    digits is decimal.

    Args:
        token (str): The token, e.g. "A", "0x41" or "65".

    Returns:
        int: The byte value.

    Raises:
        ValueError: If the token is empty or not a byte value.

    Example:
        >>> [parse_symbol_token(t) for t in ("A", "0x41", "65")]
        [65, 65, 65]
    """
    if len(token) == 1:
        return ord(token)
    if token.lower().startswith("0x"):
        value = int(token, 16)
    elif token.isdigit():
        value = int(token)
    else:
        raise ValueError(f"Cannot read symbol token {token!r}")
    if not 0 <= value <= 255:
        raise ValueError(f"Symbol {value} is not a byte value")
    return value


def parse_order_policy(text: str) -> OrderPolicy:
    """
    Parse `freq`, `first-seen` or `explicit:<comma list of symbols>`.

    Raises:
        ValueError: For an unknown policy or an unreadable symbol list.
    """
    kind, _, rest = text.partition(":")
    if kind not in ORDER_POLICIES:
        raise ValueError(f"Unknown order policy {kind!r}, expected one of {ORDER_POLICIES}")
    if kind != "explicit":
        if rest:
            raise ValueError(f"Order policy {kind!r} takes no argument")
        return OrderPolicy(kind)
    if not rest:
        return OrderPolicy(kind, ())
    return OrderPolicy(kind, tuple(parse_symbol_token(tok) for tok in rest.split(",")))


def parse_sizes(text: str) -> List[int]:
    """
    Parse a comma list of positive sizes; each entry may be an integer or `2^k`.

    Example:
        >>> parse_sizes("2^20,2097152")
        [1048576, 2097152]
    """
    sizes = []
    for token in text.split(","):
        token = token.strip()
        if "^" in token:
            base, _, exponent = token.partition("^")
            value = int(base) ** int(exponent)
        else:
            value = int(token)
        if value <= 0:
            raise ValueError(f"Size must be positive, got {value}")
        sizes.append(value)
    return sizes


def resolve_threads(threads: int) -> int:
    """Map a `--threads` value to a worker count; 0 means the available parallelism."""
    if threads < 0:
        raise ValueError("Thread count must not be negative")
    if threads == 0:
        return os.cpu_count() or 1
    return threads


# ------------------------------
# RENDERING
# ------------------------------


def render_bytes(data: bytes) -> str:
    """Render a byte stream one character per byte (latin-1), for trace tables."""
    return bytes(data).decode("latin-1")


# ------------------------------
# INPUT / OUTPUT
# ------------------------------


def read_input(path: str) -> bytes:
    """Read a whole file, or stdin when `path` is "-"."""
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def write_output(path: str, data: bytes) -> None:
    """Write bytes to a file, or to stdout when `path` is "-"."""
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as f:
        f.write(data)


def write_text(path: str, text: str) -> None:
    """Write a report to a file, or to stdout when `path` is "-" or None."""
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
