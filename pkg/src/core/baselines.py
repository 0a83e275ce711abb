"""
File: core/baselines.py

Classical binarization codes used as bit-count references: unary, truncated unary,
fixed-length and k-th order Exp-Golomb. Codewords are strings of '0'/'1' characters.

Conventions:
    unary           n ones followed by a terminating zero
    truncated unary as unary, but n == cMax drops the terminating zero
    fixed-length    `width` bits, most significant first
    Exp-Golomb      z leading zeros, then n + 2**k in binary (z + k + 1 bits)

Baselines code symbol indices. The default index assignment gives the most frequent
symbol index 0 (see frequency_assignment).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from core.alphabet import Alphabet, order_by_frequency

logger = logging.getLogger(__name__)


class OutOfRange(ValueError):
    """Raised when a value cannot be represented under the code's parameters."""

    pass


class Scheme(Enum):
    UNARY = "unary"
    TRUNCATED_UNARY = "truncated_unary"
    FIXED_LENGTH = "fixed_length"
    EXP_GOLOMB = "exp_golomb"


# ------------------------------
# CODES
# ------------------------------


def unary_encode(n: int) -> str:
    if n < 0:
        raise OutOfRange(f"Unary code needs n >= 0, got {n}")
    return "1" * n + "0"


def unary_decode(bits: str, pos: int = 0) -> Tuple[int, int]:
    """Decode one codeword starting at `pos`; returns (value, position after the codeword)."""
    end = bits.find("0", pos)
    if end < 0:
        raise ValueError("Unterminated unary codeword")
    return end - pos, end + 1


def truncated_unary_encode(n: int, c_max: int) -> str:
    if c_max < 1:
        raise OutOfRange(f"cMax must be positive, got {c_max}")
    if not 0 <= n <= c_max:
        raise OutOfRange(f"Truncated unary needs 0 <= n <= {c_max}, got {n}")
    return "1" * n if n == c_max else "1" * n + "0"


def truncated_unary_decode(bits: str, c_max: int, pos: int = 0) -> Tuple[int, int]:
    n = 0
    while n < c_max:
        if pos >= len(bits):
            raise ValueError("Truncated unary codeword runs past the end")
        bit = bits[pos]
        pos += 1
        if bit == "0":
            return n, pos
        n += 1
    return n, pos


def fixed_length_encode(n: int, width: int) -> str:
    if width < 1:
        raise OutOfRange(f"Width must be positive, got {width}")
    if not 0 <= n < (1 << width):
        raise OutOfRange(f"{n} does not fit in {width} bits")
    return format(n, f"0{width}b")


def fixed_length_decode(bits: str, width: int, pos: int = 0) -> Tuple[int, int]:
    if pos + width > len(bits):
        raise ValueError("Fixed-length codeword runs past the end")
    return int(bits[pos:pos + width], 2), pos + width


def exp_golomb_encode(n: int, k: int = 0) -> str:
    """
    k-th order Exp-Golomb codeword of n.

    Example:
        >>> exp_golomb_encode(0), exp_golomb_encode(2), exp_golomb_encode(1, k=1)
        ('1', '011', '11')
    """
    if n < 0 or k < 0:
        raise OutOfRange(f"Exp-Golomb needs n >= 0 and k >= 0, got n={n}, k={k}")
    value = n + (1 << k)
    return "0" * (value.bit_length() - k - 1) + format(value, "b")


def exp_golomb_decode(bits: str, k: int = 0, pos: int = 0) -> Tuple[int, int]:
    first_one = bits.find("1", pos)
    if first_one < 0:
        raise ValueError("Exp-Golomb prefix never terminates")
    zeros = first_one - pos
    end = first_one + zeros + k + 1
    if end > len(bits):
        raise ValueError("Exp-Golomb suffix runs past the end")
    return int(bits[first_one:end], 2) - (1 << k), end


# ------------------------------
# CODEWORD TABLES
# ------------------------------


@dataclass(frozen=True)
class CodewordTable:
    """
    Codewords for symbol indices 0..len(codewords)-1 under one scheme.

    Attributes:
        scheme (Scheme): The code.
        parameter (Optional[int]): cMax, width or k; None for plain unary.
        codewords (Tuple[str, ...]): codewords[i] codes index i.
    """
    scheme: Scheme
    parameter: Optional[int]
    codewords: Tuple[str, ...]

    def lengths(self) -> np.ndarray:
        return np.array([len(c) for c in self.codewords], dtype=np.int64)

    def decode(self, bits: str, pos: int = 0) -> Tuple[int, int]:
        """Decode one index starting at `pos`."""
        if self.scheme is Scheme.UNARY:
            return unary_decode(bits, pos)
        if self.scheme is Scheme.TRUNCATED_UNARY:
            return truncated_unary_decode(bits, self.parameter, pos)
        if self.scheme is Scheme.FIXED_LENGTH:
            return fixed_length_decode(bits, self.parameter, pos)
        return exp_golomb_decode(bits, self.parameter, pos)

    def is_prefix_free(self) -> bool:
        return is_prefix_free(self.codewords)


def default_parameter(scheme: Scheme, m: int) -> Optional[int]:
    """cMax = m-1 for truncated unary, the smallest sufficient width for fixed-length, k = 0 for Exp-Golomb."""
    if scheme is Scheme.TRUNCATED_UNARY:
        return max(m - 1, 1)
    if scheme is Scheme.FIXED_LENGTH:
        return max(1, (m - 1).bit_length())
    if scheme is Scheme.EXP_GOLOMB:
        return 0
    return None


def build_codeword_table(scheme: Scheme, m: int, parameter: Optional[int] = None) -> CodewordTable:
    """
    Codewords for indices 0..m-1.

    Raises:
        OutOfRange: If `parameter` cannot cover m indices.
    """
    if parameter is None:
        parameter = default_parameter(scheme, m)
    if scheme is Scheme.UNARY:
        codewords = [unary_encode(n) for n in range(m)]
    elif scheme is Scheme.TRUNCATED_UNARY:
        codewords = [truncated_unary_encode(n, parameter) for n in range(m)]
    elif scheme is Scheme.FIXED_LENGTH:
        codewords = [fixed_length_encode(n, parameter) for n in range(m)]
    else:
        codewords = [exp_golomb_encode(n, parameter) for n in range(m)]
    return CodewordTable(scheme=scheme, parameter=parameter, codewords=tuple(codewords))


def is_prefix_free(codewords: Sequence[str]) -> bool:
    """True when no codeword is a prefix of another (duplicates count as prefixes)."""
    ordered = sorted(codewords)
    return all(not b.startswith(a) for a, b in zip(ordered, ordered[1:]))


# ------------------------------
# BIT COUNTS
# ------------------------------


def frequency_assignment(alphabet: Alphabet) -> Tuple[int, ...]:
    """Code index of every alphabet index: the most frequent symbol gets 0."""
    assignment = [0] * alphabet.m
    for rank, index in enumerate(order_by_frequency(alphabet).sequence):
        assignment[index] = rank
    return tuple(assignment)


def baseline_bits(alphabet: Alphabet, scheme: Scheme, assignment: Optional[Sequence[int]] = None,
                  parameter: Optional[int] = None) -> int:
    """
    Total codeword bits for the stream summarized by `alphabet`.

    Args:
        alphabet (Alphabet): Symbol counts of the stream.
        scheme (Scheme): The baseline code.
        assignment (Sequence[int], optional): Code index per alphabet index; defaults to frequency_assignment.
        parameter (int, optional): Code parameter; defaults to default_parameter.
    """
    if assignment is None:
        assignment = frequency_assignment(alphabet)
    table = build_codeword_table(scheme, alphabet.m, parameter)
    lengths = table.lengths()
    return int(sum(count * lengths[assignment[i]] for i, count in enumerate(alphabet.counts)))


def baseline_stream_bits(data: bytes, alphabet: Alphabet, scheme: Scheme) -> int:
    """Codeword bits for `data` counted symbol by symbol (the timed path of the benchmark)."""
    table = build_codeword_table(scheme, alphabet.m)
    by_byte = np.zeros(256, dtype=np.int64)
    for index, code_index in enumerate(frequency_assignment(alphabet)):
        by_byte[alphabet.symbols[index]] = len(table.codewords[code_index])
    return int(by_byte[np.frombuffer(bytes(data), dtype=np.uint8)].sum())
