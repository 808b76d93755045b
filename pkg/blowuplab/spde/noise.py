"""
@file spde/noise.py
@brief Space-time white noise on the lattice from a counter-based generator.

@details
Cell (n, j) of a path with seed s holds sqrt(dt dx) times a standard normal
drawn from Philox keyed by s, with the counter set to n << 64 for time row n.
Any row is regenerated on its own, so the field never has to be produced
sequentially and parallel scheduling cannot change it.
"""

import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import DomainError

SEED_LIMIT = 2**64


def derive_seed(master_seed, index):
    """
    @brief 64-bit per-path seed mixed from (master_seed, index) by SeedSequence.
    """
    sequence = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(index),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def _check_seed(seed):
    if not 0 <= int(seed) < SEED_LIMIT:
        raise DomainError(f"seed must be a 64-bit unsigned value, got {seed}")
    return int(seed)


@dataclass(frozen=True)
class NoiseField:
    """
    @brief Lattice of iid Normal(0, dt dx) increments, nt rows of nx cells.
    """
    seed: int
    nt: int
    nx: int
    dt: float
    dx: float

    @property
    def cell_variance(self):
        return self.dt * self.dx

    def row(self, n):
        """
        @brief The nx increments of time row n.
        """
        if not 0 <= n < self.nt:
            raise DomainError(f"time row {n} outside 0..{self.nt - 1}")
        generator = np.random.Generator(np.random.Philox(key=self.seed, counter=int(n) << 64))
        return math.sqrt(self.cell_variance) * generator.standard_normal(self.nx)

    def cell(self, n, j):
        if not 0 <= j < self.nx:
            raise DomainError(f"cell {j} outside 0..{self.nx - 1}")
        return float(self.row(n)[j])

    def values(self):
        """
        @brief The whole lattice as an (nt, nx) array.
        """
        return np.stack([self.row(n) for n in range(self.nt)]) if self.nt else np.empty((0, self.nx))


def sample_noise(grid, nt, seed, dt):
    """
    @brief Noise lattice for nt time rows over the grid cells.

    @raises DomainError For a negative row count or a seed outside 64 bits.
    """
    if nt < 0:
        raise DomainError(f"row count must be non-negative, got {nt}")
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    return NoiseField(seed=_check_seed(seed), nt=int(nt), nx=grid.nx, dt=dt, dx=grid.dx)
