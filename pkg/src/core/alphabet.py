"""
File: core/alphabet.py

This module discovers the byte alphabet of an input, counts symbol occurrences and
builds the binarization order (the sequence in which symbols are peeled off into planes).
"""
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from utils.utils import parse_order_policy

logger = logging.getLogger(__name__)

MAX_SYMBOLS = 256


class NotAPermutation(ValueError):
    """Raised when a binarization order is not a permutation of the alphabet indices."""

    pass


class InvalidAlphabet(ValueError):
    """Raised when symbols or counts violate the alphabet invariants."""

    pass


@dataclass(frozen=True)
class Alphabet:
    """
    The m-ary symbol set of a byte stream together with its occurrence counts.

    Attributes:
        symbols (Tuple[int, ...]): Distinct byte values, in first-occurrence order for discovered alphabets.
        counts (Tuple[int, ...]): Occurrences of each symbol, aligned with `symbols`.
        total (int): Length N of the stream the counts were taken from.
    """
    symbols: Tuple[int, ...]
    counts: Tuple[int, ...]
    total: int

    def __post_init__(self):
        if len(self.symbols) != len(self.counts):
            raise InvalidAlphabet(f"{len(self.symbols)} symbols but {len(self.counts)} counts")
        if len(self.symbols) > MAX_SYMBOLS:
            raise InvalidAlphabet(f"Alphabet holds {len(self.symbols)} symbols, at most {MAX_SYMBOLS} allowed")
        if len(set(self.symbols)) != len(self.symbols):
            raise InvalidAlphabet("Alphabet symbols must be distinct")
        if any(s < 0 or s > 255 for s in self.symbols):
            raise InvalidAlphabet("Alphabet symbols must be byte values (0-255)")
        # Zero-count symbols are never part of an alphabet.
        if any(c < 1 for c in self.counts):
            raise InvalidAlphabet("Every symbol count must be at least 1")
        if sum(self.counts) != self.total:
            raise InvalidAlphabet(f"Counts sum to {sum(self.counts)}, expected total {self.total}")

    @property
    def m(self) -> int:
        """Number of distinct symbols."""
        return len(self.symbols)

    def probabilities(self) -> np.ndarray:
        """Empirical probabilities counts[i] / total (empty array for an empty alphabet)."""
        if self.total == 0:
            return np.zeros(0, dtype=np.float64)
        return np.asarray(self.counts, dtype=np.float64) / self.total

    def count_of(self, symbol: int) -> int:
        """Return the count of a byte value, 0 if it is not in the alphabet."""
        try:
            return self.counts[self.symbols.index(symbol)]
        except ValueError:
            return 0


@dataclass(frozen=True)
class BinarizationOrder:
    """
    A permutation of alphabet indices: `sequence[i]` is the index of the symbol peeled at iteration i.
    """
    sequence: Tuple[int, ...]

    def symbols(self, alphabet: Alphabet) -> Tuple[int, ...]:
        """Byte values in peel order."""
        return tuple(alphabet.symbols[i] for i in self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)


def discover_alphabet(data: bytes) -> Alphabet:
    """
    Count the symbols of a byte sequence.

    Args:
        data (bytes): The input stream (may be empty).

    Returns:
        Alphabet: symbols in first-occurrence order with exact counts; total == len(data).

    Example:
        >>> discover_alphabet(b"AABCBACBBACCABACB").counts
        (6, 6, 5)
    """
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    if arr.size == 0:
        return Alphabet(symbols=(), counts=(), total=0)

    values, first_index, counts = np.unique(arr, return_index=True, return_counts=True)
    by_first_seen = np.argsort(first_index, kind="stable")
    alphabet = Alphabet(
        symbols=tuple(int(v) for v in values[by_first_seen]),
        counts=tuple(int(c) for c in counts[by_first_seen]),
        total=int(arr.size),
    )
    logger.debug(f"Discovered alphabet m={alphabet.m} over N={alphabet.total} bytes")
    return alphabet


def order_by_frequency(alphabet: Alphabet) -> BinarizationOrder:
    """
    Order the alphabet by descending count, ties broken by ascending index (first occurrence).

    Peeling frequent symbols first minimizes the total number of plane bits.
    """
    ranked = sorted(range(alphabet.m), key=lambda i: (-alphabet.counts[i], i))
    return BinarizationOrder(tuple(ranked))


def order_first_seen(alphabet: Alphabet) -> BinarizationOrder:
    """Identity order: symbols are peeled in the order they first occur."""
    return BinarizationOrder(tuple(range(alphabet.m)))


def validate_order(alphabet: Alphabet, order: BinarizationOrder) -> None:
    """
    Check that an order is a permutation of 0..m-1.

    Raises:
        NotAPermutation: On a wrong length, a duplicate or an out-of-range index.
    """
    m = alphabet.m
    if len(order.sequence) != m:
        raise NotAPermutation(f"Order has {len(order.sequence)} entries, alphabet has {m} symbols")
    seen = set()
    for index in order.sequence:
        if not 0 <= index < m:
            raise NotAPermutation(f"Order index {index} out of range 0..{m - 1}")
        if index in seen:
            raise NotAPermutation(f"Order index {index} appears twice")
        seen.add(index)


def order_from_symbols(alphabet: Alphabet, symbols: Sequence[int]) -> BinarizationOrder:
    """
    Build an order from explicit byte values.

    Raises:
        NotAPermutation: If a byte is not in the alphabet, repeats, or some symbol is missing.
    """
    try:
        sequence = tuple(alphabet.symbols.index(s) for s in symbols)
    except ValueError:
        missing = [s for s in symbols if s not in alphabet.symbols]
        raise NotAPermutation(f"Symbols {missing} are not in the discovered alphabet") from None
    order = BinarizationOrder(sequence)
    validate_order(alphabet, order)
    return order


def resolve_order(alphabet: Alphabet, policy: str) -> BinarizationOrder:
    """
    Turn an order policy string into a validated order for this alphabet.

    Args:
        alphabet (Alphabet): The discovered alphabet.
        policy (str): "freq", "first-seen" or "explicit:<comma list of symbols>".

    Raises:
        ValueError: If the policy string cannot be parsed.
        NotAPermutation: If an explicit order does not cover the alphabet exactly once.
    """
    parsed = parse_order_policy(policy)
    if parsed.kind == "freq":
        return order_by_frequency(alphabet)
    if parsed.kind == "first-seen":
        return order_first_seen(alphabet)
    return order_from_symbols(alphabet, parsed.symbols)
