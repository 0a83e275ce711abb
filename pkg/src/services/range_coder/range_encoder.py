"""
Range encoder for binary symbols.

32-bit range, low kept in a 64-bit accumulator. A byte whose final value may still change
through a carry is held back in `cache`, followed by `pending` bytes of 0xFF; once the carry
is known they are released together.
"""
from .bit_model import AdaptiveBitModel

TOP = 1 << 24
MASK32 = (1 << 32) - 1
FLUSH_BYTES = 5


class RangeEncoder:
    """
    Encodes bits under an adaptive model into a byte payload.

    Attributes:
        low (int): Lower end of the current interval (carry lands in bit 32).
        range (int): Width of the interval, kept in [2**24, 2**32) between bits.
    """

    def __init__(self):
        self.low = 0
        self.range = MASK32
        self.cache = 0
        self.pending = 1
        self.output = bytearray()

    def _shift_low(self) -> None:
        if self.low < 0xFF000000 or self.low > MASK32:
            carry = self.low >> 32
            byte = self.cache
            while self.pending:
                self.output.append((byte + carry) & 0xFF)
                byte = 0xFF
                self.pending -= 1
            self.cache = (self.low >> 24) & 0xFF
        self.pending += 1
        self.low = (self.low << 8) & MASK32

    def encode_bit(self, bit: int, model: AdaptiveBitModel) -> None:
        """
        Encode one bit and update the model.

        A 1-bit takes the lower part of the interval, of width range * c1 / (c0 + c1).
        """
        bound = (self.range * model.c1) // (model.c0 + model.c1)
        if bit:
            self.range = bound
        else:
            self.low += bound
            self.range -= bound
        model.update(bit)
        while self.range < TOP:
            self.range <<= 8
            self._shift_low()

    def finish(self) -> bytes:
        """Flush the interval and return the payload."""
        for _ in range(FLUSH_BYTES):
            self._shift_low()
        return bytes(self.output)

