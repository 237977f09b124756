"""Reproducible randomness.

Every randomized routine takes a Seed (or plain int) and derives all draws
from numpy's PCG64 keyed by SeedSequence(value, spawn_key=key). Identical
(value, key) pairs reproduce identical draws under this implementation;
sub-streams come from child() and are independent of how many draws the
parent made.
"""

from dataclasses import dataclass, field

import numpy as np

_U64 = 1 << 64


@dataclass(frozen=True)
class Seed:
    value: int
    key: tuple = field(default=())

    def __post_init__(self):
        if not (0 <= self.value < _U64):
            raise ValueError("seed value must fit in 64 bits")
        if any((not isinstance(k, int)) or k < 0 for k in self.key):
            raise ValueError("stream key parts must be nonnegative ints")

    def rng(self):
        ss = np.random.SeedSequence(self.value, spawn_key=self.key)
        return np.random.Generator(np.random.PCG64(ss))

    def child(self, *idx):
        """Derived sub-stream seed; child(i) streams never collide with the
        parent or with child(j) for j != i."""
        return Seed(self.value, self.key + tuple(int(i) for i in idx))

    def describe(self):
        return {"value": self.value, "key": list(self.key)}


def as_seed(seed):
    if isinstance(seed, Seed):
        return seed
    return Seed(int(seed))
