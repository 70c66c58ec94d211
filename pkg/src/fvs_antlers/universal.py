"""(n, k)-universal set families.

Three backends:

``exhaustive``
    every subset of the ground set (only for ``n <= 20``);
``random``
    ``ceil(c * 2^k * k * ln(max(n, 2)))`` uniform random subsets, with the
    union-bound failure probability recorded on the family;
``random_verified``
    ``random`` followed by an exhaustive check, retried with fresh seeds.

All randomness comes from :class:`random.Random` (Mersenne Twister) seeded
with the caller's integer seed, so families are reproducible across
platforms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import FamilyConstructionError, GraphDomainError, RefusalError

__all__ = ["UniversalFamily", "build_universal", "verify_universal", "random_family_size"]

EXHAUSTIVE_CAP = 20
VERIFY_N_CAP = 16
VERIFY_K_CAP = 4
BACKENDS = ("exhaustive", "random", "random_verified")


@dataclass(frozen=True)
class UniversalFamily:
    ground: tuple
    sets: tuple
    n: int
    k: int
    backend: str = "explicit"
    failure_probability: float = 0.0

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @classmethod
    def from_sets(cls, ground: Sequence, sets, k: int) -> "UniversalFamily":
        ground = tuple(ground)
        members = tuple(frozenset(s) for s in sets)
        allowed = set(ground)
        for s in members:
            if not s <= allowed:
                raise GraphDomainError("family member not contained in the ground set")
        return cls(ground, members, len(ground), k)


def random_family_size(n: int, k: int, c: float = 8.0) -> int:
    if k == 0:
        return 1
    return max(1, math.ceil(c * 2 ** k * k * math.log(max(n, 2))))


def _failure_bound(n, k, m):
    if k == 0:
        return 0.0
    return min(1.0, n ** k * 2 ** k * (1 - 2.0 ** -k) ** m)


def _random_sets(ground, m, rng):
    n = len(ground)
    out = []
    for _ in range(m):
        bits = rng.getrandbits(n) if n else 0
        out.append(frozenset(x for i, x in enumerate(ground) if bits >> i & 1))
    return tuple(out)


def build_universal(D: Sequence, k: int, backend: str = "exhaustive", seed: int = 0,
                    c: float = 8.0, max_retries: int = 10) -> UniversalFamily:
    ground = tuple(D)
    n = len(ground)
    if k < 0 or k > n:
        raise GraphDomainError(f"need 0 <= k <= |D| (got k={k}, |D|={n})")
    if backend not in BACKENDS:
        raise GraphDomainError(f"unknown backend {backend!r}")

    if backend == "exhaustive":
        if n > EXHAUSTIVE_CAP:
            raise RefusalError(f"exhaustive family capped at n={EXHAUSTIVE_CAP} (got {n})")
        sets = tuple(frozenset(x for i, x in enumerate(ground) if mask >> i & 1)
                     for mask in range(1 << n))
        return UniversalFamily(ground, sets, n, k, backend, 0.0)

    m = random_family_size(n, k, c)
    if backend == "random":
        rng = random.Random(seed)
        return UniversalFamily(ground, _random_sets(ground, m, rng), n, k, backend,
                               _failure_bound(n, k, m))

    if n > VERIFY_N_CAP or k > VERIFY_K_CAP:
        raise RefusalError(
            f"verified family needs n <= {VERIFY_N_CAP} and k <= {VERIFY_K_CAP}")
    seeds = random.Random(seed)
    attempt_seed = seed
    for _ in range(max_retries):
        fam = UniversalFamily(ground, _random_sets(ground, m, random.Random(attempt_seed)),
                              n, k, backend, 0.0)
        if verify_universal(fam):
            return fam
        attempt_seed = seeds.getrandbits(64)
    raise FamilyConstructionError(f"no verified ({n},{k})-universal family after "
                                  f"{max_retries} attempts")


def verify_universal(fam: UniversalFamily, k: int | None = None) -> bool:
    """Exhaustively check that every trace on every ``<= k``-subset occurs."""
    k = fam.k if k is None else k
    n = len(fam.ground)
    if n > VERIFY_N_CAP or k > VERIFY_K_CAP:
        raise RefusalError(
            f"verification needs n <= {VERIFY_N_CAP} and k <= {VERIFY_K_CAP}")
    index = {x: i for i, x in enumerate(fam.ground)}
    masks = {sum(1 << index[x] for x in s) for s in fam.sets}
    for size in range(min(k, n) + 1):
        for combo in combinations(range(n), size):
            smask = sum(1 << i for i in combo)
            traces = {m & smask for m in masks}
            if len(traces) != 1 << size:
                return False
    return True
