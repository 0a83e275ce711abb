"""
File: core/sources.py

Seeded i.i.d. byte sources for the benchmark harness and the tests.

Distribution specs:
    uniform[:m]        m equiprobable symbols (default 256)
    geometric:<p>      P(i) proportional to p * (1 - p)**i over 256 symbols
    zipf:<s>           P(i) proportional to 1 / (i + 1)**s over 256 symbols
    twospike:<p>       two symbols, the first with probability p
    dyadic:<m>         P(i) = 2**-(i+1) for i < m-1, the last symbol takes the remaining 2**-(m-1)
"""
import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

FULL_ALPHABET = 256


@dataclass(frozen=True)
class Distribution:
    """
    A named probability vector over symbols 0..len(probabilities)-1.

    Attributes:
        name (str): The spec the distribution was parsed from, e.g. "geometric:0.3".
        probabilities (np.ndarray): Non-negative entries summing to 1.
    """
    name: str
    probabilities: np.ndarray

    @property
    def entropy(self) -> float:
        """Model entropy in bits/symbol."""
        p = self.probabilities[self.probabilities > 0]
        return float(-np.sum(p * np.log2(p)))

    def sample(self, size: int, seed: int) -> bytes:
        """Draw `size` i.i.d. symbols as bytes; identical seeds give identical output."""
        rng = np.random.default_rng(seed)
        symbols = rng.choice(self.probabilities.size, size=size, p=self.probabilities)
        return symbols.astype(np.uint8).tobytes()


def _normalized(weights: np.ndarray) -> np.ndarray:
    weights = np.asarray(weights, dtype=np.float64)
    return weights / weights.sum()


def dyadic_probabilities(m: int) -> np.ndarray:
    """Truncated dyadic-geometric probabilities; the sum is exactly 1."""
    if m < 1:
        raise ValueError("dyadic source needs at least one symbol")
    if m == 1:
        return np.ones(1)
    p = 0.5 ** np.arange(1, m, dtype=np.float64)
    return np.append(p, 0.5 ** (m - 1))


def parse_distribution(spec: str) -> Distribution:
    """
    Parse a distribution spec such as "zipf:1.2".

    Raises:
        ValueError: For an unknown name or a parameter out of range.
    """
    name, _, arg = spec.partition(":")
    if name == "uniform":
        m = int(arg) if arg else FULL_ALPHABET
        if not 1 <= m <= FULL_ALPHABET:
            raise ValueError(f"uniform needs 1..{FULL_ALPHABET} symbols, got {m}")
        return Distribution(spec, np.full(m, 1.0 / m))
    if name == "geometric":
        p = float(arg)
        if not 0.0 < p < 1.0:
            raise ValueError(f"geometric parameter must lie in (0, 1), got {p}")
        return Distribution(spec, _normalized(p * (1.0 - p) ** np.arange(FULL_ALPHABET)))
    if name == "zipf":
        s = float(arg)
        if s <= 0:
            raise ValueError(f"zipf exponent must be positive, got {s}")
        return Distribution(spec, _normalized(1.0 / np.arange(1, FULL_ALPHABET + 1) ** s))
    if name == "twospike":
        p = float(arg)
        if not 0.0 < p < 1.0:
            raise ValueError(f"twospike parameter must lie in (0, 1), got {p}")
        return Distribution(spec, np.array([p, 1.0 - p]))
    if name == "dyadic":
        m = int(arg) if arg else 16
        if not 1 <= m <= FULL_ALPHABET:
            raise ValueError(f"dyadic needs 1..{FULL_ALPHABET} symbols, got {m}")
        return Distribution(spec, dyadic_probabilities(m))
    raise ValueError(f"Unknown distribution {spec!r}")
