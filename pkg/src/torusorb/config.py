"""Dataclass configs shared by the experiment scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import exact_linalg as la
from .orbifold import DEFAULT_CAP


@dataclass(frozen=True)
class SweepConfig:
    """Random nonsingular characteristic matrices."""

    seed: int = 20261015
    count: int = 200
    dims: tuple[int, ...] = (2, 3, 4)
    lo: int = -9
    hi: int = 9
    max_abs_det: int | None = None

    def matrices(self):
        rnd = random.Random(self.seed)
        made = 0
        while made < self.count:
            n = self.dims[made % len(self.dims)]
            A = [[rnd.randint(self.lo, self.hi) for _ in range(n)] for _ in range(n)]
            d = la.determinant(A)
            if d == 0 or (self.max_abs_det is not None and abs(d) > self.max_abs_det):
                continue
            made += 1
            yield A


@dataclass(frozen=True)
class VerifyConfig:
    max_degree: int | None = None  # None: the per-n default bound
    cap: int = DEFAULT_CAP
    sweep: SweepConfig = field(default_factory=lambda: SweepConfig(count=20, dims=(2,), max_abs_det=12))
