"""Keyed counter-based random numbers.

All randomness in this package is derived by mixing a 64-bit key with a
64-bit counter (an edge id, a step number, a trial index, ...) through a
splitmix64-style permutation.  Draws are therefore

  * reproducible: the same (seed, counter) always gives the same value,
  * order-independent: a batch of counters can be evaluated in any order
    or in parallel and merged deterministically,
  * couplable: the uniform attached to an edge id is shared between the
    H(n;p) sampler and the one-edge-at-a-time process stream, so the
    hypergraphs at p1 < p2 are nested and the stream prefix of length
    |{u < p}| is exactly H(n;p).

Everything here is pure integer arithmetic on uint64, identical across
platforms.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1

# splitmix64 constants (Steele, Lea, Flood 2014)
_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """One splitmix64 finalization round on a 64-bit integer."""
    z = (z + _GAMMA) & _MASK
    z = ((z ^ (z >> 30)) * _M1) & _MASK
    z = ((z ^ (z >> 27)) * _M2) & _MASK
    return z ^ (z >> 31)


def derive_key(seed: int, *parts: int) -> int:
    """Fold a seed and any number of domain-separation integers into a key.

    Used to give every consumer of randomness (injection j, nibble step t,
    pipeline stage, retry attempt, ...) its own independent stream.
    """
    key = mix64(seed & _MASK)
    for p in parts:
        key = mix64(key ^ (p & _MASK))
    return key


def uniform(key: int, counter: int) -> float:
    """Uniform in [0, 1) for one (key, counter) pair."""
    return mix64(key ^ mix64(counter & _MASK)) / 2.0**64


def randbelow(key: int, counter: int, n: int) -> int:
    """Integer in [0, n) for one (key, counter) pair."""
    return int(uniform(key, counter) * n) % n


def mix64_array(z: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 round over a uint64 array."""
    with np.errstate(over="ignore"):
        z = (z + np.uint64(_GAMMA)).astype(np.uint64)
        z = ((z ^ (z >> np.uint64(30))) * np.uint64(_M1)).astype(np.uint64)
        z = ((z ^ (z >> np.uint64(27))) * np.uint64(_M2)).astype(np.uint64)
        return z ^ (z >> np.uint64(31))


def uniform_array(key: int, counters: np.ndarray) -> np.ndarray:
    """Uniforms in [0, 1) for an array of counters under one key."""
    c = np.asarray(counters, dtype=np.uint64)
    bits = mix64_array(np.uint64(key) ^ mix64_array(c))
    return bits.astype(np.float64) / 2.0**64


def permutation(key: int, n: int) -> np.ndarray:
    """A uniformly random permutation of range(n), determined by the key.

    Implemented as the argsort of n keyed uniforms; ties (probability
    ~ n^2 / 2^64) are broken by index, which perturbs uniformity by a
    negligible amount.
    """
    u = mix64_array(np.uint64(key) ^ mix64_array(np.arange(n, dtype=np.uint64)))
    return np.argsort(u, kind="stable")
