"""Frequency grid and colinear uniform linear array geometry."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FrequencyGrid",
    "UlaConfig",
    "build_frequency_grid",
    "element_positions",
    "distance_matrix",
]


@dataclass(frozen=True)
class FrequencyGrid:
    """Equally spaced sub-channel center frequencies.

    Centers are ``f_start + l * delta_f`` for ``l = 0 .. count-1``; they are
    always computed from the index, never by accumulation.
    """

    f_start: float
    delta_f: float
    count: int

    def __post_init__(self):
        if not self.f_start > 0:
            raise ValueError(f"f_start must be positive, got {self.f_start}")
        if not self.delta_f > 0:
            raise ValueError(f"delta_f must be positive, got {self.delta_f}")
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"count must be a positive integer, got {self.count}")

    def __len__(self) -> int:
        return self.count

    @property
    def centers(self) -> np.ndarray:
        return self.f_start + np.arange(self.count) * self.delta_f

    @property
    def f_stop(self) -> float:
        return self.center(self.count - 1)

    def center(self, index: int) -> float:
        if not 0 <= index < self.count:
            raise IndexError(f"sub-channel index {index} outside 0..{self.count - 1}")
        return self.f_start + index * self.delta_f

    def nearest_index(self, f: float) -> int:
        """Index of the center closest to ``f`` (clipped to the grid)."""
        idx = int(round((f - self.f_start) / self.delta_f))
        return min(max(idx, 0), self.count - 1)


def build_frequency_grid(f_start: float, f_stop: float, delta_f: float) -> FrequencyGrid:
    """Grid from ``f_start`` up to the last center not exceeding ``f_stop``.

    >>> build_frequency_grid(1e8, 1.5e8, 1e7).count
    6
    """
    if not (f_start > 0 and delta_f > 0):
        raise ValueError("f_start and delta_f must be positive")
    if not f_stop > f_start:
        raise ValueError(f"f_stop ({f_stop}) must exceed f_start ({f_start})")
    # small slack so that exact multiples are not lost to rounding
    count = math.floor((f_stop - f_start) / delta_f + 1e-9) + 1
    return FrequencyGrid(float(f_start), float(delta_f), count)


@dataclass(frozen=True)
class UlaConfig:
    """Colinear ULA of identical Chu-sphere elements.

    Attributes
    ----------
    n_elements : int
        Number of antennas.
    spacing : float
        Center-to-center separation in meters.
    element_radius : float
        Radius of the sphere enclosing each element, in meters.
    """

    n_elements: int
    spacing: float
    element_radius: float

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 1:
            raise ValueError(f"n_elements must be a positive integer, got {self.n_elements}")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if not self.element_radius > 0:
            raise ValueError(f"element_radius must be positive, got {self.element_radius}")
        # a lone element has no neighbour to overlap
        if self.n_elements > 1 and self.element_radius > self.spacing / 2 * (1 + 1e-12):
            raise ValueError(
                f"element_radius {self.element_radius} exceeds spacing/2 = {self.spacing / 2}; "
                "Chu spheres would overlap"
            )


def element_positions(array: UlaConfig) -> np.ndarray:
    """Axial coordinates ``m * spacing`` of each element."""
    return np.arange(array.n_elements) * array.spacing


def distance_matrix(array: UlaConfig) -> np.ndarray:
    idx = np.arange(array.n_elements)
    return np.abs(idx[:, None] - idx[None, :]) * array.spacing
