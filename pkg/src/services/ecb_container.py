"""
File: services/ecb_container.py

On-disk format binding the alphabet, the binarization order, the plane lengths and the
compressed plane payloads into one self-describing file.

Layout (all integers little-endian):

    "ECB1" (4) | version u8 | m u16 | symbols m x u8 | order m x u8 | N u64 |
    plane_count u16 | per plane: bit_len u64, payload_len u64, payload bytes

Symbol counts are not stored; the decoder recovers them from the decoded planes.
"""
import logging
import struct
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from core.alphabet import BinarizationOrder, MAX_SYMBOLS
from core.binarizer import PlaneSet

logger = logging.getLogger(__name__)

MAGIC = b"ECB1"
VERSION = 1

_PREAMBLE = struct.Struct("<4sBH")
_U64 = struct.Struct("<Q")
_U16 = struct.Struct("<H")
_RECORD = struct.Struct("<QQ")


class InconsistentInput(ValueError):
    """Raised when the planes and payloads handed to write_container do not match up."""

    pass


class ContainerError(ValueError):
    """
    Base class for malformed containers.

    Attributes:
        field (str): Name of the first offending field.
        offset (int): Byte offset of that field in the container.
    """

    def __init__(self, message: str, field: str, offset: int):
        super().__init__(f"{message} (field '{field}' at offset {offset})")
        self.field = field
        self.offset = offset


class BadMagic(ContainerError):
    """The file does not start with the container magic."""


class UnsupportedVersion(ContainerError):
    """The container version is not one this reader understands."""


class TruncatedHeader(ContainerError):
    """The container ends inside a header field or payload."""


class ChainInvariantViolated(ContainerError):
    """N, the plane count and the plane bit lengths do not chain."""


class InvalidField(ContainerError):
    """A symbol or order field holds an impossible value."""


class TrailingBytes(ContainerError):
    """Bytes follow the last plane record."""


@dataclass(frozen=True)
class PlaneRecord:
    """A compressed plane: its bit length and the range-coder payload."""
    bit_length: int
    payload: bytes


@dataclass(frozen=True)
class EcbContainer:
    """
    Decoded container fields.

    Attributes:
        symbols (Tuple[int, ...]): Alphabet symbols in alphabet-index order.
        order (BinarizationOrder): Full m-entry peel order.
        total (int): Original stream length N.
        planes (Tuple[PlaneRecord, ...]): One record per emitted plane.
    """
    symbols: Tuple[int, ...]
    order: BinarizationOrder
    total: int
    planes: Tuple[PlaneRecord, ...]

    @property
    def m(self) -> int:
        return len(self.symbols)


class _Cursor:
    """Sequential reader over the container bytes that reports offsets in its errors."""

    def __init__(self, blob: bytes):
        self.blob = blob
        self.offset = 0

    def take(self, size: int, field: str) -> bytes:
        if self.offset + size > len(self.blob):
            raise TruncatedHeader(f"Container ends before {size} bytes of {field}", field, self.offset)
        chunk = self.blob[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def unpack(self, layout: struct.Struct, field: str) -> tuple:
        return layout.unpack(self.take(layout.size, field))


def write_container(plane_set: PlaneSet, payloads: Sequence[bytes]) -> bytes:
    """
    Serialize a PlaneSet's header fields and the compressed payload of each plane.

    Raises:
        InconsistentInput: If the number of payloads differs from the number of planes.
    """
    if len(payloads) != len(plane_set.planes):
        raise InconsistentInput(f"{len(payloads)} payloads for {len(plane_set.planes)} planes")

    alphabet = plane_set.alphabet
    out = bytearray(_PREAMBLE.pack(MAGIC, VERSION, alphabet.m))
    out += bytes(alphabet.symbols)
    out += bytes(plane_set.order.sequence)
    out += _U64.pack(alphabet.total)
    out += _U16.pack(len(plane_set.planes))
    for plane, payload in zip(plane_set.planes, payloads):
        out += _RECORD.pack(plane.length, len(payload))
        out += payload
    logger.debug(f"Wrote container: m={alphabet.m}, N={alphabet.total}, {len(out)} bytes")
    return bytes(out)


def read_container(blob: bytes) -> EcbContainer:
    """
    Parse and structurally validate a container.

    Raises:
        BadMagic, UnsupportedVersion, TruncatedHeader, ChainInvariantViolated,
        InvalidField, TrailingBytes: each naming the first offending field and its offset.
    """
    cursor = _Cursor(bytes(blob))
    if len(cursor.blob) < len(MAGIC):
        raise TruncatedHeader("Container shorter than its magic", "magic", 0)
    if cursor.blob[:len(MAGIC)] != MAGIC:
        raise BadMagic(f"Expected magic {MAGIC!r}", "magic", 0)
    _, version, m = cursor.unpack(_PREAMBLE, "preamble")
    if version != VERSION:
        raise UnsupportedVersion(f"Version {version} is not supported (expected {VERSION})", "version", 4)
    if m > MAX_SYMBOLS:
        raise InvalidField(f"m={m} exceeds {MAX_SYMBOLS}", "m", 5)

    symbols_offset = cursor.offset
    symbols = tuple(cursor.take(m, "symbols"))
    if len(set(symbols)) != m:
        raise InvalidField("Alphabet symbols repeat", "symbols", symbols_offset)

    order_offset = cursor.offset
    order = tuple(cursor.take(m, "order"))
    if sorted(order) != list(range(m)):
        raise InvalidField("Order is not a permutation of the alphabet indices", "order", order_offset)

    total_offset = cursor.offset
    (total,) = cursor.unpack(_U64, "N")
    # Every stored symbol occurs at least once.
    if total < m or (m == 0 and total != 0):
        raise ChainInvariantViolated(f"N={total} cannot hold {m} distinct symbols", "N", total_offset)

    count_offset = cursor.offset
    (plane_count,) = cursor.unpack(_U16, "plane_count")
    if plane_count != max(m - 1, 0):
        raise ChainInvariantViolated(f"{plane_count} planes for m={m}", "plane_count", count_offset)

    records: List[PlaneRecord] = []
    previous = None
    for i in range(plane_count):
        record_offset = cursor.offset
        bit_length, payload_length = cursor.unpack(_RECORD, f"plane[{i}]")
        if i == 0 and bit_length != total:
            raise ChainInvariantViolated(f"First plane holds {bit_length} bits, N={total}", f"plane[{i}].bit_len", record_offset)
        # Each peel removes at least one symbol and leaves m - i symbols of at least one occurrence.
        if previous is not None and not (m - i <= bit_length < previous):
            raise ChainInvariantViolated(f"Plane length {bit_length} does not follow {previous}", f"plane[{i}].bit_len", record_offset)
        payload = cursor.take(payload_length, f"plane[{i}].payload")
        records.append(PlaneRecord(bit_length=bit_length, payload=payload))
        previous = bit_length

    if cursor.offset != len(cursor.blob):
        raise TrailingBytes(f"{len(cursor.blob) - cursor.offset} bytes after the last plane", "end", cursor.offset)

    return EcbContainer(symbols=symbols, order=BinarizationOrder(order), total=total, planes=tuple(records))
