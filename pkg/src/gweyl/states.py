from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford_core import GammaBasis
from .operators import FourMomentum


@dataclass(frozen=True, eq=False)
class SpinorState:
    """A 4-component (or 2-component) complex spinor tied to a momentum and a basis."""

    components: np.ndarray
    momentum: FourMomentum | None = None
    basis: GammaBasis | None = None

    def __post_init__(self):
        v = np.array(self.components, dtype=np.complex128).reshape(-1)
        if v.shape not in ((2,), (4,)):
            raise ValueError(f"spinor must have 2 or 4 components, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "components", v)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def normalized(self) -> "SpinorState":
        n = self.norm
        if n == 0:
            raise ValueError("cannot normalize the zero spinor")
        return SpinorState(self.components / n, self.momentum, self.basis)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.components, dtype=dtype)
