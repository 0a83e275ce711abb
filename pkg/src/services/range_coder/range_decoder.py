"""
Range decoder mirroring range_encoder.RangeEncoder step for step.
"""
from .bit_model import AdaptiveBitModel
from .range_encoder import FLUSH_BYTES, MASK32, TOP


class TruncatedPayload(ValueError):
    """Raised when the payload ends before every requested bit was decoded."""

    pass


class CorruptPayload(ValueError):
    """Raised when a payload decodes but does not end the way the encoder's flush leaves it."""

    pass


class RangeDecoder:
    """
    Decodes bits from a payload produced by RangeEncoder.

    Attributes:
        code (int): Offset of the coded value inside the current interval.
        range (int): Width of the interval, identical to the encoder's after every bit.
    """

    def __init__(self, payload: bytes):
        self.payload = payload
        self.position = 0
        self.range = MASK32
        self.code = 0
        # The first byte is the encoder's initial cache and is always zero.
        for _ in range(FLUSH_BYTES):
            self.code = ((self.code << 8) | self._next_byte()) & MASK32

    def _next_byte(self) -> int:
        if self.position >= len(self.payload):
            raise TruncatedPayload(f"Payload ended after {len(self.payload)} bytes")
        byte = self.payload[self.position]
        self.position += 1
        return byte

    def decode_bit(self, model: AdaptiveBitModel) -> int:
        """Decode one bit and update the model exactly as the encoder did."""
        bound = (self.range * model.c1) // (model.c0 + model.c1)
        if self.code < bound:
            bit = 1
            self.range = bound
        else:
            bit = 0
            self.code -= bound
            self.range -= bound
        model.update(bit)
        while self.range < TOP:
            self.range <<= 8
            self.code = ((self.code << 8) | self._next_byte()) & MASK32
        return bit


    def finish(self) -> None:
        """
        Check the end of the stream once every bit was decoded.

        The flush writes out the whole low register, so a clean payload is fully consumed
        and leaves the code register at zero.

        Raises:
            CorruptPayload: If the payload does not start and end the way the encoder writes it.
        """
        check_payload_end(self.payload, self.position, self.code)


def check_payload_end(payload: bytes, position: int, code: int) -> None:
    """
    Raise CorruptPayload unless the payload starts with the zero carry byte and was consumed
    to its last byte, leaving the code register at zero.
    """
    if payload[0] != 0:
        raise CorruptPayload(f"Payload starts with {payload[0]:#04x}, expected the zero carry byte")
    if position != len(payload):
        raise CorruptPayload(f"Decoding used {position} of {len(payload)} payload bytes")
    if code != 0:
        raise CorruptPayload(f"Code register ends at {code:#010x}, expected 0")
