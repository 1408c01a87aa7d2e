"""Outcome streams: seeded fair k-outcome trials and last digits of primes.

Random streams
--------------
Every simulated run draws from numpy's PCG64 bit generator seeded through
``SeedSequence(entropy=seed, spawn_key=(stream_index,))``. numpy keeps both
the bit generator output and the seed expansion stable across releases and
platforms. Outcomes are taken from the raw 64-bit words, not from
``Generator.integers`` (whose algorithm numpy may change): a word ``x`` is
kept only if ``x < 2**64 - (2**64 mod k)`` and then maps to ``x mod k``.
Rejecting the top partial block removes modulo bias. For a power-of-two
``k`` nothing is ever rejected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EmptyDomainError, InvalidDigitError, InvalidParameterError

ALGORITHM_ID = "pcg64-seedseq-rejection-v1"

_TWO_64 = 1 << 64


@dataclass(frozen=True)
class RngSpec:
    algorithm_id: str = ALGORITHM_ID
    seed: int = 0
    stream_index: int = 0

    def __post_init__(self):
        if self.algorithm_id != ALGORITHM_ID:
            raise InvalidParameterError(f"unknown generator {self.algorithm_id!r}")
        if not 0 <= self.seed < _TWO_64:
            raise InvalidParameterError("seed must fit in an unsigned 64-bit integer")
        if self.stream_index < 0:
            raise InvalidParameterError("stream_index must be non-negative")

    def bit_generator(self) -> np.random.PCG64:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_index,))
        return np.random.PCG64(ss)


def simulate_uniform(spec: RngSpec, k: int, n: int) -> np.ndarray:
    """``n`` independent fair draws from ``{0, ..., k-1}`` as an int64 array."""
    if k < 2:
        raise InvalidParameterError(f"k must be at least 2, got {k}")
    if n < 1:
        raise InvalidParameterError(f"n must be positive, got {n}")

    bitgen = spec.bit_generator()
    excess = _TWO_64 % k
    if excess == 0:
        return (bitgen.random_raw(n) % np.uint64(k)).astype(np.int64)

    limit = np.uint64(_TWO_64 - excess)
    chunks = []
    have = 0
    while have < n:
        # rejection rate is below 1/2, so a little headroom nearly always suffices
        raw = bitgen.random_raw(n - have + 64)
        kept = raw[raw < limit]
        chunks.append(kept)
        have += kept.size
    out = np.concatenate(chunks)[:n]
    return (out % np.uint64(k)).astype(np.int64)


def sieve_primes(limit: int) -> np.ndarray:
    """All primes ``<= limit`` in increasing order (Eratosthenes, odd numbers only)."""
    if limit < 2:
        raise EmptyDomainError(f"no primes below {limit}")
    # slot i stands for the odd number 2*i + 1
    is_odd_prime = np.ones((limit + 1) // 2, dtype=bool)
    is_odd_prime[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if is_odd_prime[i]:
            p = 2 * i + 1
            is_odd_prime[p * p // 2::p] = False
    odd = 2 * np.flatnonzero(is_odd_prime) + 1
    return np.concatenate(([2], odd)).astype(np.int64)


@lru_cache(maxsize=None)
def coprime_residues(base: int) -> tuple[int, ...]:
    """Residues in ``[1, base)`` that share no factor with ``base``."""
    if base < 2:
        raise InvalidParameterError(f"base must be at least 2, got {base}")
    return tuple(r for r in range(1, base) if math.gcd(r, base) == 1)


@dataclass(frozen=True)
class PrimeDigitStream:
    limit: int
    base: int
    excluded_primes: tuple[int, ...]
    digits: np.ndarray

    def __len__(self):
        return len(self.digits)

    def digit_counts(self) -> dict[int, int]:
        vals, cnt = np.unique(self.digits, return_counts=True)
        counts = dict.fromkeys(coprime_residues(self.base), 0)
        counts.update({int(v): int(c) for v, c in zip(vals, cnt)})
        return counts

    def outcomes(self) -> np.ndarray:
        """Digits mapped to tally indices, same order as ``digits``."""
        table = np.full(self.base, -1, dtype=np.int64)
        for idx, r in enumerate(coprime_residues(self.base)):
            table[r] = idx
        return table[self.digits]


def prime_last_digits(limit: int, base: int = 10) -> PrimeDigitStream:
    """Last digits (``p mod base``) of the primes up to ``limit``.

    Primes that divide ``base`` (2 and 5 in base 10) are left out, which
    leaves only digits coprime to the base.
    """
    if base < 2:
        raise InvalidParameterError(f"base must be at least 2, got {base}")
    primes = sieve_primes(limit)
    divides_base = (base % primes) == 0
    return PrimeDigitStream(
        limit=limit,
        base=base,
        excluded_primes=tuple(int(p) for p in primes[divides_base]),
        digits=primes[~divides_base] % base,
    )


def digit_to_outcome(digit: int, base: int = 10) -> int:
    residues = coprime_residues(base)
    try:
        return residues.index(digit)
    except ValueError:
        raise InvalidDigitError(
            f"{digit} is not a residue coprime to base {base}") from None


def benford_expected(d: int) -> float:
    """Benford leading-digit probability log10(1 + 1/d)."""
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or not 1 <= d <= 9:
        raise InvalidDigitError(f"leading digit must be 1..9, got {d!r}")
    return math.log10(1 + 1 / d)
