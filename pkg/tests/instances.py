"""Random instance generators shared by the property and acceptance suites."""

import random
from functools import lru_cache

from tropnet.multipath import enumerate_gd_paths, enumerate_kpaths
from tropnet.network import gamma0_delta0, truncate
from tropnet.recombine import FIRST, SECOND, THIRD


@lru_cache(maxsize=None)
def gd_paths(n, k, i):
    if not 0 <= i <= k <= n:
        return ()
    return tuple(enumerate_gd_paths(gamma0_delta0(n), k, i))


def union_pair(rng: random.Random, n: int, variant: str):
    """Pick (k, i) and a pair of path systems whose union fits ``variant``."""
    for _ in range(50):
        k = rng.randint(1, n)
        i = rng.randint(1, k)
        if variant == FIRST:
            a, b = gd_paths(n, k - 1, i), gd_paths(n, k, i - 1)
        elif variant == SECOND:
            a, b = gd_paths(n, k - 1, i - 1), gd_paths(n, k, i + 1)
        elif variant == THIRD:
            a, b = gd_paths(n, k + 1, i), gd_paths(n, k - 1, i - 1)
        else:
            raise ValueError(variant)
        if a and b:
            return (k, i), rng.choice(a), rng.choice(b)
    return None


def dor_pair(rng: random.Random, net, kind: str):
    """Inputs for even/odd recombination on a random network.

    Returns ``(f, g, k)`` or ``None`` when the network has no such pair.
    """
    n = net.rank
    if n < 2:
        return None
    k = rng.randint(2, n)
    top, low = truncate(net, k), truncate(net, k - 1)
    i = rng.randint(1, k)
    if kind == "shift":
        fs, gs = enumerate_kpaths(top, i - 1), enumerate_kpaths(low, i)
    else:
        fs, gs = enumerate_kpaths(top, i + 1), enumerate_kpaths(low, i - 1)
    if not fs or not gs or (kind == "balance" and i < 1):
        return None
    return rng.choice(fs), rng.choice(gs), k
