"""
Whole-plane entry points: one fresh model per plane, coded by the compiled loops in kernels.
"""
import logging

import numpy as np

from core.binarizer import BitPlane

from .kernels import decode_bits, encode_bits
from .range_decoder import TruncatedPayload, check_payload_end

logger = logging.getLogger(__name__)


def encode_plane(plane: BitPlane) -> bytes:
    """
    Compress one bit plane with a fresh adaptive model.

    Args:
        plane (BitPlane): The plane to encode (a zero-length plane is allowed).

    Returns:
        bytes: The payload; decode it with decode_plane(payload, plane.length).
    """
    payload = encode_bits(plane.to_array().astype(np.uint8)).tobytes()
    logger.debug(f"Encoded {plane.length} bits into {len(payload)} bytes")
    return payload


def decode_plane(payload: bytes, length: int) -> BitPlane:
    """
    Decompress a plane of `length` bits.

    Raises:
        TruncatedPayload: If the payload is shorter than the encoder produced.
        CorruptPayload: If the payload has trailing bytes or does not start and end the way the encoder writes them.
    """
    bits, position, code, truncated = decode_bits(np.frombuffer(payload, dtype=np.uint8), length)
    if truncated:
        raise TruncatedPayload(f"Payload ended after {len(payload)} bytes")
    check_payload_end(payload, position, code)
    logger.debug(f"Decoded {length} bits from {position} bytes")
    return BitPlane.from_array(bits)
