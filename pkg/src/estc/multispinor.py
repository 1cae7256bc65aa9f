"""Amplitude container: one 4-component complex bispinor per lattice site.

A multispinor is zero off its finite support, so operators truncated to a
window act on it exactly.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np

from .lattice import Site

_ZERO = np.zeros(4, dtype=complex)


class Multispinor:
    def __init__(self, data: dict[Site, np.ndarray] | None = None):
        self.data: dict[Site, np.ndarray] = {}
        if data:
            for site, value in data.items():
                self[site] = value

    def __getitem__(self, site: Site) -> np.ndarray:
        return self.data.get(site, _ZERO)

    def __setitem__(self, site: Site, value) -> None:
        self.data[site] = np.asarray(value, dtype=complex).reshape(4)

    def __contains__(self, site: Site) -> bool:
        return site in self.data

    def __iter__(self) -> Iterator[Site]:
        return iter(self.data)

    def sites(self) -> list[Site]:
        return sorted(self.data)

    def add_to(self, site: Site, value: np.ndarray) -> None:
        if site in self.data:
            self.data[site] = self.data[site] + value
        else:
            self[site] = value

    def copy(self) -> "Multispinor":
        return Multispinor({site: value.copy() for site, value in self.data.items()})

    def __add__(self, other: "Multispinor") -> "Multispinor":
        out = self.copy()
        for site, value in other.data.items():
            out.add_to(site, value)
        return out

    def __sub__(self, other: "Multispinor") -> "Multispinor":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "Multispinor":
        return Multispinor({site: scalar * value for site, value in self.data.items()})

    def norm(self) -> float:
        if not self.data:
            return 0.0
        return float(np.sqrt(sum(np.sum(np.abs(v) ** 2) for v in self.data.values())))


def random_multispinor(sites: Iterable[Site], seed: int) -> Multispinor:
    """Standard normal complex amplitudes on the given sites, in their order."""
    rng = np.random.default_rng(seed)
    out = Multispinor()
    for site in sites:
        out[site] = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return out
