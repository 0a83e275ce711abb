"""
File: core/entropy.py

Empirical entropy of an alphabet and the per-plane decomposition of it.

Peeling symbol order[i] off the residual stream leaves a binary source whose probability of a
1-bit is p(order[i]) / (1 - sum of the earlier p). Weighting each plane's binary entropy by
the fraction of the stream it covers gives back the m-ary entropy exactly, for every order.
This module computes both sides and reports the residual between them. All entropies are in bits.
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import List

import numpy as np
from scipy.special import entr

from core.alphabet import Alphabet, BinarizationOrder, validate_order
from core.binarizer import plane_lengths

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9

_LN2 = np.log(2.0)


class EmptyInput(ValueError):
    """Raised when an entropy is requested for an empty stream."""

    pass


class DomainError(ValueError):
    """Raised when a probability lies outside [0, 1]."""

    pass


@dataclass(frozen=True)
class EntropyReport:
    """
    Both sides of the conservation identity for one alphabet and order.

    The lists hold m entries: the m-1 emitted planes followed by the implicit all-ones
    plane of the last symbol (its entropy is always 0).

    Attributes:
        h_source (float): m-ary entropy H(Y), bits/symbol.
        plane_weights (List[float]): Fraction of the stream each plane covers, non-increasing from 1.0.
        plane_entropies (List[float]): Binary entropy of each plane, bits/bit.
        h_weighted_sum (float): Sum of weight * plane entropy, bits/symbol.
        residual (float): |h_source - h_weighted_sum|.
    """
    h_source: float
    plane_weights: List[float]
    plane_entropies: List[float]
    h_weighted_sum: float
    residual: float
    order: List[int] = field(default_factory=list)
    plane_lengths: List[int] = field(default_factory=list)
    predicted_total_bits: int = 0
    m: int = 0
    total: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ConservationResult:
    """Outcome of verify_conservation: `ok` when the residual is within tolerance."""
    ok: bool
    residual: float
    tolerance: float


def mary_entropy(alphabet: Alphabet) -> float:
    """
    Shannon entropy of the empirical symbol distribution, in bits/symbol.

    Raises:
        EmptyInput: If the alphabet was taken from an empty stream.

    Example:
        >>> round(mary_entropy(Alphabet((65, 66, 67), (6, 6, 5), 17)), 4)
        1.5798
    """
    if alphabet.total == 0:
        raise EmptyInput("Entropy is undefined for an empty stream")
    return float(entr(alphabet.probabilities()).sum() / _LN2)


def _binary_entropies(p: np.ndarray) -> np.ndarray:
    return (entr(p) + entr(1.0 - p)) / _LN2


def binary_entropy(p: float) -> float:
    """
    Entropy of a Bernoulli(p) source in bits, with 0 * log 0 taken as 0.

    Raises:
        DomainError: If p is outside [0, 1] or not a number.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Probability {p} outside [0, 1]")
    return float(_binary_entropies(np.array([p], dtype=np.float64))[0])


def weighted_plane_entropy(alphabet: Alphabet, order: BinarizationOrder) -> EntropyReport:
    """
    Decompose H(Y) over the planes produced by `order`.

    Raises:
        EmptyInput: If the alphabet is empty.
        NotAPermutation: If the order is invalid.
    """
    validate_order(alphabet, order)
    h_source = mary_entropy(alphabet)

    counts = np.asarray([alphabet.counts[i] for i in order.sequence], dtype=np.float64)
    # Symbols still present before each peel, as counts: N, N - c0, N - c0 - c1, ...
    remaining = alphabet.total - np.concatenate(([0.0], np.cumsum(counts)[:-1]))
    weights = remaining / alphabet.total
    entropies = _binary_entropies(counts / remaining)
    h_weighted = float(np.sum(weights * entropies))

    lengths = plane_lengths(alphabet, order)
    return EntropyReport(
        h_source=h_source,
        plane_weights=[float(w) for w in weights],
        plane_entropies=[float(h) for h in entropies],
        h_weighted_sum=h_weighted,
        residual=abs(h_source - h_weighted),
        order=[alphabet.symbols[i] for i in order.sequence],
        plane_lengths=lengths,
        predicted_total_bits=sum(lengths),
        m=alphabet.m,
        total=alphabet.total,
    )


def verify_conservation(alphabet: Alphabet, order: BinarizationOrder,
                        tol: float = DEFAULT_TOLERANCE) -> ConservationResult:
    """
    Check that the weighted plane entropies add up to the source entropy.

    A violation is a result, not an exception.
    """
    if tol <= 0:
        raise ValueError("Tolerance must be positive")
    report = weighted_plane_entropy(alphabet, order)
    ok = report.residual <= tol
    if not ok:
        logger.warning(f"Conservation residual {report.residual:.3e} exceeds tolerance {tol:.1e}")
    return ConservationResult(ok=ok, residual=report.residual, tolerance=tol)


def predicted_total_bits(alphabet: Alphabet, order: BinarizationOrder) -> int:
    """Total bits in all emitted planes, computed from integer counts."""
    return sum(plane_lengths(alphabet, order))
