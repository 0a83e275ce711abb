"""
File: core/binarizer.py

This module converts an m-ary byte stream into m-1 binary planes and reconstructs the
stream from them. Plane i marks where symbol order[i] sits in the residual stream left
after the symbols order[0..i-1] have been removed. The final symbol's plane would be all
ones and is never emitted.

Planes are packed most-significant-bit first, so a hex dump reads left to right like the
bit strings printed in the examples below.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.alphabet import Alphabet, BinarizationOrder, InvalidAlphabet, NotAPermutation, validate_order

logger = logging.getLogger(__name__)


class SymbolNotInAlphabet(ValueError):
    """Raised when the data holds a byte the declared alphabet does not list."""

    pass


class PlaneLengthMismatch(ValueError):
    """Raised when plane lengths or ones-counts do not chain (corrupt input)."""

    pass


class PlaneUnderflow(ValueError):
    """Raised when a plane runs out of bits before every open position was assigned."""

    pass


@dataclass(frozen=True)
class BitPlane:
    """
    A packed binary sequence.

    Attributes:
        bits (bytes): MSB-first packed bits; pad bits in the last byte are zero.
        length (int): Number of meaningful bits.
    """
    bits: bytes
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("Plane length must be non-negative")
        if len(self.bits) != (self.length + 7) // 8:
            raise ValueError(f"{len(self.bits)} packed bytes cannot hold exactly {self.length} bits")
        tail = self.length % 8
        if tail and self.bits[-1] & ((1 << (8 - tail)) - 1):
            raise ValueError("Pad bits of the last byte must be zero")

    @classmethod
    def from_array(cls, flags: np.ndarray) -> "BitPlane":
        """Pack a boolean (or 0/1) array."""
        flags = np.asarray(flags, dtype=bool)
        return cls(bits=np.packbits(flags).tobytes(), length=int(flags.size))

    @classmethod
    def from_string(cls, text: str) -> "BitPlane":
        """Build a plane from a string of '0' and '1' characters."""
        if set(text) - {"0", "1"}:
            raise ValueError(f"Not a bit string: {text!r}")
        return cls.from_array(np.frombuffer(text.encode("ascii"), dtype=np.uint8) == ord("1"))

    @classmethod
    def ones_of_length(cls, length: int) -> "BitPlane":
        """An all-ones plane (the redundant plane of the last symbol)."""
        return cls.from_array(np.ones(length, dtype=bool))

    def to_array(self) -> np.ndarray:
        """Unpack into a boolean array of `length` entries."""
        packed = np.frombuffer(self.bits, dtype=np.uint8)
        return np.unpackbits(packed, count=self.length).astype(bool)

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.to_array())

    def ones(self) -> int:
        """Number of 1-bits."""
        return int(np.count_nonzero(self.to_array()))


@dataclass(frozen=True)
class PlaneSet:
    """
    The binarized form of a stream: m-1 planes plus the alphabet and order that produced them.
    """
    planes: Tuple[BitPlane, ...]
    alphabet: Alphabet
    order: BinarizationOrder

    @property
    def total_bits(self) -> int:
        return sum(p.length for p in self.planes)

    @classmethod
    def from_decoded(cls, symbols: Sequence[int], order: Sequence[int], total: int,
                     planes: Sequence[BitPlane]) -> "PlaneSet":
        """
        Rebuild a PlaneSet from decoded planes; symbol counts are recovered from the bits.

        Raises:
            PlaneLengthMismatch: If the planes cannot describe a valid alphabet.
        """
        m = len(symbols)
        if sorted(order) != list(range(m)):
            raise NotAPermutation(f"Order {list(order)} is not a permutation of 0..{m - 1}")
        if len(planes) != max(m - 1, 0):
            raise PlaneLengthMismatch(f"Expected {max(m - 1, 0)} planes for m={m}, got {len(planes)}")

        counts = [0] * m
        if m == 1:
            counts[0] = total
        elif m >= 2:
            for index, plane in zip(order, planes):
                counts[index] = plane.ones()
            counts[order[-1]] = planes[-1].length - planes[-1].ones()

        try:
            alphabet = Alphabet(symbols=tuple(symbols), counts=tuple(counts), total=total)
        except InvalidAlphabet as e:
            raise PlaneLengthMismatch(f"Decoded planes do not describe a valid alphabet: {e}") from e
        return cls(planes=tuple(planes), alphabet=alphabet, order=BinarizationOrder(tuple(order)))


@dataclass
class WorkCounter:
    """Tally of plane bits written or read, for checking the linear work bound."""
    bits_touched: int = 0


@dataclass(frozen=True)
class BinarizationStep:
    """One iteration of the literal binarization: the residual stream and its indicator plane."""
    residual: bytes
    plane: BitPlane


@dataclass(frozen=True)
class DebinarizationStep:
    """
    One iteration of the literal de-binarization.

    Attributes:
        filled (str): The stream after the plane's bits were written into the open positions.
        data (str): The stream after that plane's 1-bits were replaced by its symbol.
    """
    filled: str
    data: str


def _check_members(arr: np.ndarray, alphabet: Alphabet) -> None:
    member = np.zeros(256, dtype=bool)
    member[list(alphabet.symbols)] = True
    outside = ~member[arr]
    if outside.any():
        position = int(np.argmax(outside))
        raise SymbolNotInAlphabet(f"Byte 0x{int(arr[position]):02x} at offset {position} is not in the alphabet")

    tally = np.bincount(arr, minlength=256)
    if arr.size != alphabet.total or any(tally[s] != c for s, c in zip(alphabet.symbols, alphabet.counts)):
        raise InvalidAlphabet("Alphabet counts do not match the data (stale alphabet)")


def binarize(data: bytes, alphabet: Alphabet, order: BinarizationOrder,
             counter: Optional[WorkCounter] = None) -> PlaneSet:
    """
    Split a byte stream into m-1 indicator planes.

    Args:
        data (bytes): The source stream.
        alphabet (Alphabet): Alphabet of `data` (as returned by discover_alphabet).
        order (BinarizationOrder): Peel order.
        counter (WorkCounter, optional): Receives the number of plane bits written.

    Returns:
        PlaneSet: planes[i] is the indicator of order[i] over the residual stream.

    Raises:
        NotAPermutation: If the order is invalid.
        SymbolNotInAlphabet: If `data` holds a byte outside the alphabet.

    Example:
        >>> a = discover_alphabet(b"AABCBACBBACCABACB")
        >>> [p.to_string() for p in binarize(b"AABCBACBBACCABACB", a, order_first_seen(a)).planes]
        ['11000100010010100', '10101100101']
    """
    validate_order(alphabet, order)
    residual = np.frombuffer(bytes(data), dtype=np.uint8)
    _check_members(residual, alphabet)

    planes: List[BitPlane] = []
    for index in order.sequence[:-1]:
        hit = residual == alphabet.symbols[index]
        planes.append(BitPlane.from_array(hit))
        if counter is not None:
            counter.bits_touched += int(residual.size)
        residual = residual[~hit]

    plane_set = PlaneSet(planes=tuple(planes), alphabet=alphabet, order=order)
    logger.debug(f"Binarized N={alphabet.total} into {len(planes)} planes ({plane_set.total_bits} bits)")
    return plane_set


def debinarize(plane_set: PlaneSet, counter: Optional[WorkCounter] = None) -> bytes:
    """
    Reconstruct the source stream from its planes.

    Each plane is scattered over the positions still open, in peel order; positions left
    open after the last plane take the final symbol. Every stored bit is read exactly once.

    Raises:
        PlaneLengthMismatch: If plane count, lengths or ones-counts do not chain.
        PlaneUnderflow: If a plane is shorter than the number of open positions.
    """
    alphabet, order = plane_set.alphabet, plane_set.order
    validate_order(alphabet, order)
    m = alphabet.m
    if len(plane_set.planes) != max(m - 1, 0):
        raise PlaneLengthMismatch(f"Expected {max(m - 1, 0)} planes for m={m}, got {len(plane_set.planes)}")

    out = np.empty(alphabet.total, dtype=np.uint8)
    open_positions = np.arange(alphabet.total)

    for i, plane in enumerate(plane_set.planes):
        if plane.length < open_positions.size:
            raise PlaneUnderflow(f"Plane {i} holds {plane.length} bits but {open_positions.size} positions are open")
        if plane.length > open_positions.size:
            raise PlaneLengthMismatch(f"Plane {i} holds {plane.length} bits, only {open_positions.size} positions are open")

        bits = plane.to_array()
        if counter is not None:
            counter.bits_touched += plane.length

        index = order.sequence[i]
        hits = open_positions[bits]
        if hits.size != alphabet.counts[index]:
            raise PlaneLengthMismatch(f"Plane {i} marks {hits.size} symbols, alphabet expects {alphabet.counts[index]}")
        out[hits] = alphabet.symbols[index]
        open_positions = open_positions[~bits]

    if m >= 1:
        last = order.sequence[-1]
        if open_positions.size != alphabet.counts[last]:
            raise PlaneLengthMismatch(f"{open_positions.size} positions left for the last symbol, expected {alphabet.counts[last]}")
        out[open_positions] = alphabet.symbols[last]

    return out.tobytes()


def plane_lengths(alphabet: Alphabet, order: BinarizationOrder) -> List[int]:
    """
    Bit length of every emitted plane: N minus the counts of the symbols already peeled.

    Example:
        counts (6, 6, 5) in order A, B, C give [17, 11].
    """
    validate_order(alphabet, order)
    lengths = []
    remaining = alphabet.total
    for index in order.sequence[:-1]:
        lengths.append(remaining)
        remaining -= alphabet.counts[index]
    return lengths


def binarization_trace(data: bytes, alphabet: Alphabet, order: BinarizationOrder) -> List[BinarizationStep]:
    """
    Run the literal iterate-and-remove procedure, keeping every residual stream and
    including the final all-ones plane. Intended for small inputs.
    """
    validate_order(alphabet, order)
    residual = bytes(data)
    _check_members(np.frombuffer(residual, dtype=np.uint8), alphabet)

    steps = []
    for index in order.sequence:
        symbol = alphabet.symbols[index]
        plane = BitPlane.from_array(np.frombuffer(residual, dtype=np.uint8) == symbol)
        steps.append(BinarizationStep(residual=residual, plane=plane))
        residual = bytes(b for b in residual if b != symbol)
    return steps


def debinarization_trace(plane_set: PlaneSet) -> List[DebinarizationStep]:
    """
    Run the literal two-step de-binarization: write each plane's bits into the open
    positions, then replace its 1-bits with the plane's symbol. The last step uses the
    implicit all-ones plane, and its `data` equals debinarize(plane_set) rendered as text.
    """
    alphabet, order = plane_set.alphabet, plane_set.order
    validate_order(alphabet, order)
    if alphabet.m == 0:
        return []

    open_after = alphabet.total - sum(alphabet.counts[i] for i in order.sequence[:-1])
    planes = list(plane_set.planes) + [BitPlane.ones_of_length(open_after)]

    cells = [""] * alphabet.total
    open_positions = list(range(alphabet.total))
    steps = []
    for i, plane in enumerate(planes):
        bits = plane.to_string()
        if len(bits) != len(open_positions):
            raise PlaneLengthMismatch(f"Plane {i} holds {len(bits)} bits, {len(open_positions)} positions are open")
        for pos, bit in zip(open_positions, bits):
            cells[pos] = bit
        filled = "".join(cells)

        symbol = chr(alphabet.symbols[order.sequence[i]])
        still_open = []
        for pos, bit in zip(open_positions, bits):
            if bit == "1":
                cells[pos] = symbol
            else:
                still_open.append(pos)
        open_positions = still_open
        steps.append(DebinarizationStep(filled=filled, data="".join(cells)))
    return steps
