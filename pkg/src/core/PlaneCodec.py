"""
This module contains the PlaneCodec class, which runs the full compression pipeline:
alphabet discovery, binarization, per-plane range coding and container serialization,
and the reverse path for decoding.

Planes are independent once binarized, so their payloads are coded on a worker pool.
Results are collected in plane order, so the output bytes never depend on the thread count.
"""
import concurrent.futures
import logging
from dataclasses import dataclass
from typing import List, Optional

from core.alphabet import BinarizationOrder, discover_alphabet, resolve_order, validate_order
from core.binarizer import BitPlane, PlaneSet, binarize, debinarize
from services.ecb_container import EcbContainer, read_container, write_container
from services.range_coder import decode_plane, encode_plane
from utils.utils import render_bytes, resolve_threads

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EncodeResult:
    """
    Output of PlaneCodec.encode.

    Attributes:
        container (bytes): The serialized container.
        plane_set (PlaneSet): The planes that were coded, with their alphabet and order.
    """
    container: bytes
    plane_set: PlaneSet

    def summary(self) -> str:
        """One-line description: N, m, order, total plane bits and compressed size."""
        alphabet = self.plane_set.alphabet
        order = ",".join(_symbol_label(s) for s in self.plane_set.order.symbols(alphabet))
        return (
            f"N={alphabet.total} m={alphabet.m} order={order} "
            f"plane_bits={self.plane_set.total_bits} compressed_bytes={len(self.container)}"
        )


def _symbol_label(symbol: int) -> str:
    text = render_bytes(bytes([symbol]))
    return text if text.isprintable() and text not in ", " else f"0x{symbol:02x}"


class PlaneCodec:
    """
    Encodes byte streams into containers and back.

    Attributes:
        threads (int): Worker count used for plane coding.
        thread_pool (ThreadPoolExecutor): Persistent pool for plane encode/decode jobs.
    """

    def __init__(self, threads: int = 0):
        """
        Args:
            threads (int): Number of workers; 0 uses the available parallelism.
        """
        self.threads = resolve_threads(threads)
        self.thread_pool = concurrent.futures.ThreadPoolExecutor(max_workers=self.threads)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.shutdown()

    def shutdown(self):
        """Stop the worker pool."""
        self.thread_pool.shutdown(wait=True)

    def encode(self, data: bytes, policy: str = "freq", order: Optional[BinarizationOrder] = None) -> EncodeResult:
        """
        Compress a byte stream.

        Args:
            data (bytes): The input.
            policy (str): Order policy used when `order` is not given.
            order (BinarizationOrder, optional): Explicit order over the discovered alphabet.

        Raises:
            NotAPermutation: If the order does not fit the discovered alphabet.
        """
        alphabet = discover_alphabet(data)
        if order is None:
            order = resolve_order(alphabet, policy)
        validate_order(alphabet, order)

        plane_set = binarize(data, alphabet, order)
        payloads: List[bytes] = list(self.thread_pool.map(encode_plane, plane_set.planes))
        container = write_container(plane_set, payloads)
        result = EncodeResult(container=container, plane_set=plane_set)
        logger.debug(f"Encoded: {result.summary()}")
        return result

    def decode_planes(self, container: EcbContainer) -> PlaneSet:
        """
        Decompress every plane record of a parsed container.

        Raises:
            TruncatedPayload, CorruptPayload: If a payload is cut short or damaged.
            PlaneLengthMismatch: If the decoded planes do not describe a valid alphabet.
        """
        planes: List[BitPlane] = list(self.thread_pool.map(
            lambda record: decode_plane(record.payload, record.bit_length), container.planes
        ))
        return PlaneSet.from_decoded(container.symbols, container.order.sequence, container.total, planes)

    def decode(self, blob: bytes) -> bytes:
        """
        Reconstruct the original stream from a container.

        Raises:
            ContainerError: If the container is malformed.
            TruncatedPayload, CorruptPayload, PlaneLengthMismatch, PlaneUnderflow: If the payloads are corrupt.
        """
        container = read_container(blob)
        data = debinarize(self.decode_planes(container))
        logger.debug(f"Decoded {len(data)} bytes from a {len(blob)} byte container")
        return data
