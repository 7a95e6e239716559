"""Arithmetic operation counting for complexity checks."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# slot layout of the int64 count buffers filled by the compiled loops
ADDS, MULS, EXPS = 0, 1, 2
NSLOTS = 3


@dataclass
class OpCounter:
    """Running totals of additions, multiplications and exponentials.

    Subtractions count as additions and divisions as multiplications.
    """

    adds: int = 0
    muls: int = 0
    exps: int = 0

    def absorb(self, buf: np.ndarray) -> None:
        self.adds += int(buf[ADDS])
        self.muls += int(buf[MULS])
        self.exps += int(buf[EXPS])

    def reset(self) -> None:
        self.adds = self.muls = self.exps = 0

    def snapshot(self) -> "OpCounter":
        return OpCounter(self.adds, self.muls, self.exps)


def new_buffer() -> np.ndarray:
    return np.zeros(NSLOTS, dtype=np.int64)
