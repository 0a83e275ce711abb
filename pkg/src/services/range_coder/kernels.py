"""
Compiled whole-plane loops for the range coder.

These run the same integer arithmetic as RangeEncoder/RangeDecoder and AdaptiveBitModel,
one plane per call, so a payload is byte-identical whichever path produced it.
All state is int64: low stays below 2**33 and range * c1 below 2**48.
The plane loops release the GIL, so PlaneCodec's worker threads code planes in parallel.
"""
import numpy as np
from numba import njit

from .bit_model import RESCALE_LIMIT
from .range_encoder import FLUSH_BYTES, MASK32, TOP

# A coded bit shrinks the range by at most 2**16, so it renormalizes at most 3 bytes.
MAX_BYTES_PER_BIT = 3


@njit(cache=True)
def _shift_low(low, cache, pending, out, n_out):
    if low < 0xFF000000 or low > MASK32:
        carry = low >> 32
        byte = cache
        while pending:
            out[n_out] = (byte + carry) & 0xFF
            n_out += 1
            byte = 0xFF
            pending -= 1
        cache = (low >> 24) & 0xFF
    pending += 1
    low = (low << 8) & MASK32
    return low, cache, pending, n_out


@njit(cache=True, nogil=True)
def encode_bits(bits):
    """Encode a uint8 array of 0/1 bits; returns the payload as a uint8 array."""
    out = np.empty(MAX_BYTES_PER_BIT * bits.size + 2 * FLUSH_BYTES, dtype=np.uint8)
    n_out = 0
    low = np.int64(0)
    rng = np.int64(MASK32)
    cache = np.int64(0)
    pending = np.int64(1)
    c0 = np.int64(1)
    c1 = np.int64(1)

    for i in range(bits.size):
        bound = (rng * c1) // (c0 + c1)
        if bits[i]:
            rng = bound
            c1 += 1
        else:
            low += bound
            rng -= bound
            c0 += 1
        if c0 + c1 > RESCALE_LIMIT:
            c0 = (c0 + 1) >> 1
            c1 = (c1 + 1) >> 1
        while rng < TOP:
            rng <<= 8
            low, cache, pending, n_out = _shift_low(low, cache, pending, out, n_out)

    for _ in range(FLUSH_BYTES):
        low, cache, pending, n_out = _shift_low(low, cache, pending, out, n_out)
    return out[:n_out]


@njit(cache=True, nogil=True)
def decode_bits(payload, length):
    """
    Decode `length` bits from a uint8 payload.

    Returns (bits, position, code, truncated): the bits as uint8, the number of payload bytes
    consumed, the final code register and whether the payload ran out first.
    """
    bits = np.zeros(length, dtype=np.uint8)
    size = payload.size
    position = 0
    rng = np.int64(MASK32)
    code = np.int64(0)
    c0 = np.int64(1)
    c1 = np.int64(1)

    for _ in range(FLUSH_BYTES):
        if position >= size:
            return bits, position, code, True
        code = ((code << 8) | payload[position]) & MASK32
        position += 1

    for i in range(length):
        bound = (rng * c1) // (c0 + c1)
        if code < bound:
            bits[i] = 1
            rng = bound
            c1 += 1
        else:
            code -= bound
            rng -= bound
            c0 += 1
        if c0 + c1 > RESCALE_LIMIT:
            c0 = (c0 + 1) >> 1
            c1 = (c1 + 1) >> 1
        while rng < TOP:
            if position >= size:
                return bits, position, code, True
            rng <<= 8
            code = ((code << 8) | payload[position]) & MASK32
            position += 1
    return bits, position, code, False
