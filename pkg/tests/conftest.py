import math

import pytest


def trial_division_primes(limit):
    """Primes <= limit by trial division; independent of the sieve."""
    out = []
    for m in range(2, limit + 1):
        if all(m % p for p in out if p * p <= m):
            out.append(m)
    return out


def recount(outcomes, k):
    counts = [0] * k
    for o in outcomes:
        counts[o] += 1
    return counts


@pytest.fixture(scope="session")
def primes_to_1e5():
    return trial_division_primes(100_000)


@pytest.fixture(scope="session")
def digit_counts_to_100():
    ps = [p for p in trial_division_primes(100) if p not in (2, 5)]
    counts = {1: 0, 3: 0, 7: 0, 9: 0}
    for p in ps:
        counts[p % 10] += 1
    return counts


def exact_mean_abs_walk(n):
    """E|heads - tails| after n fair tosses, summed over the binomial."""
    return sum(math.comb(n, h) * abs(2 * h - n) for h in range(n + 1)) / 2 ** n
