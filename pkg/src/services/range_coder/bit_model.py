"""
Adaptive probability model for one bit plane.

The model keeps occurrence counts of 0-bits and 1-bits, both starting at 1. When their sum
passes RESCALE_LIMIT both are halved (rounding up) so they stay at least 1.
"""
from dataclasses import dataclass

RESCALE_LIMIT = 1 << 16


@dataclass
class AdaptiveBitModel:
    """
    Counts-based estimate of P(bit == 1) = c1 / (c0 + c1).

    Attributes:
        c0 (int): Number of 0-bits seen, plus one.
        c1 (int): Number of 1-bits seen, plus one.
    """
    c0: int = 1
    c1: int = 1

    @property
    def total(self) -> int:
        return self.c0 + self.c1

    def update(self, bit: int) -> None:
        """Record one coded bit."""
        if bit:
            self.c1 += 1
        else:
            self.c0 += 1
        if self.c0 + self.c1 > RESCALE_LIMIT:
            self.c0 = (self.c0 + 1) >> 1
            self.c1 = (self.c1 + 1) >> 1
