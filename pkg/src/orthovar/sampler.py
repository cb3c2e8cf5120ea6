"""Inverse-distance sampling of variant candidates.

Randomness comes from :class:`SeededRng`, which draws raw 64-bit words
from numpy's PCG64 bit generator. Only the raw stream is used (uniforms
are the top 53 bits scaled to [0, 1)), so a seed yields the same draws
on every platform and numpy release that keeps PCG64 stable.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_EPSILON = 1e-4
_MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / (1 << 53)


class SeededRng:
    def __init__(self, seed: int, *stream: int):
        seed = int(seed)
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self.stream = tuple(int(s) for s in stream)
        self._bits = np.random.PCG64(np.random.SeedSequence([seed, *self.stream]))

    def derive(self, *stream: int) -> "SeededRng":
        """Independent generator for a sub-task, keyed by (seed, stream...)."""
        return SeededRng(self.seed, *self.stream, *stream)

    def next_u64(self) -> int:
        return int(self._bits.random_raw())

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * _INV_2_53

    def below(self, n: int) -> int:
        """Integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return min(int(self.uniform() * n), n - 1)

    def sample_indices(self, m: int, k: int) -> list[int]:
        """k distinct indices from range(m), as the first k slots of a
        partial Fisher-Yates shuffle. Smaller k gives a prefix of larger k."""
        if not 0 <= k <= m:
            raise ValueError(f"cannot draw {k} of {m} without replacement")
        pool = list(range(m))
        for i in range(k):
            j = i + self.below(m - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


@dataclass(frozen=True)
class VariantDistribution:
    candidates: tuple
    Z: float
    epsilon: float

    @property
    def probabilities(self) -> list[float]:
        return [c.probability for c in self.candidates]

    def __len__(self):
        return len(self.candidates)


def inverse_distance_weights(distances: Sequence[float], epsilon: float = DEFAULT_EPSILON):
    d = np.maximum(np.asarray(distances, dtype=float), epsilon)
    inv = 1.0 / d
    z = float(inv.sum())
    return inv / z, z


def candidate_probabilities(candidates, epsilon: float = DEFAULT_EPSILON) -> VariantDistribution:
    """p_i = (1 / max(d_i, epsilon)) / Z with Z the sum of the inverse distances."""
    if not candidates:
        raise ValueError("no candidates to weight")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    dists = []
    for c in candidates:
        if c.distance is None or c.distance < 0:
            raise ValueError(f"candidate {c.surface!r} has no valid distance")
        dists.append(c.distance)
    probs, z = inverse_distance_weights(dists, epsilon)
    filled = tuple(dataclasses.replace(c, probability=float(p)) for c, p in zip(candidates, probs))
    return VariantDistribution(filled, z, epsilon)


def sample_index(probabilities: Sequence[float], rng: SeededRng) -> int:
    u = rng.uniform()
    acc = 0.0
    for i, p in enumerate(probabilities):
        acc += p
        if u < acc:
            return i
    return len(probabilities) - 1


def sample_variant(dist: VariantDistribution, rng: SeededRng):
    """Draw one candidate by inverse CDF over the candidate order."""
    return dist.candidates[sample_index(dist.probabilities, rng)]
