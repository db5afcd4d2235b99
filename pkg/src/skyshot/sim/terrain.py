"""Heightmap terrain on a uniform east/north lattice."""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from ..errors import InvalidArgumentError, OutOfBoundsError


class Terrain:
    """Uniform grid of heights; row index runs north, column index east.

    The lattice anchors at (east, north) = (0, 0). An optional boolean
    water mask of the same shape flags nodes where boats may operate.
    """

    def __init__(self, heights, cell_size_m: float, water_mask=None):
        grid = np.ascontiguousarray(heights, dtype=np.float64)
        if grid.ndim != 2 or grid.shape[0] < 2 or grid.shape[1] < 2:
            raise InvalidArgumentError("terrain needs a rectangular grid of at least 2x2 nodes")
        if not np.all(np.isfinite(grid)):
            raise InvalidArgumentError("terrain heights must be finite")
        if not (math.isfinite(cell_size_m) and cell_size_m > 0):
            raise InvalidArgumentError("cell_size_m must be > 0")
        self.heights = grid
        self.cell_size_m = float(cell_size_m)
        if water_mask is not None:
            water = np.ascontiguousarray(water_mask, dtype=bool)
            if water.shape != grid.shape:
                raise InvalidArgumentError("water mask shape must match the height grid")
            self.water_mask = water
        else:
            self.water_mask = None

    @classmethod
    def flat(cls, rows: int = 2, cols: int = 2, cell_size_m: float = 100.0, height_m: float = 0.0) -> "Terrain":
        return cls(np.full((rows, cols), height_m, dtype=np.float64), cell_size_m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Terrain):
            return NotImplemented
        if self.cell_size_m != other.cell_size_m:
            return False
        if not np.array_equal(self.heights, other.heights):
            return False
        if (self.water_mask is None) != (other.water_mask is None):
            return False
        return self.water_mask is None or np.array_equal(self.water_mask, other.water_mask)

    @property
    def east_extent_m(self) -> float:
        return (self.heights.shape[1] - 1) * self.cell_size_m

    @property
    def north_extent_m(self) -> float:
        return (self.heights.shape[0] - 1) * self.cell_size_m

    def contains(self, east: float, north: float) -> bool:
        return 0.0 <= east <= self.east_extent_m and 0.0 <= north <= self.north_extent_m

    def height_at(self, east: float, north: float) -> float:
        """Bilinear interpolation of the four surrounding lattice heights."""
        if not self.contains(east, north):
            raise OutOfBoundsError(f"({east}, {north}) outside terrain bounds")
        return kernels.bilinear_height(self.heights, self.cell_size_m, east, north)

    def heights_at(self, easts, norths) -> np.ndarray:
        easts = np.asarray(easts, dtype=np.float64)
        norths = np.asarray(norths, dtype=np.float64)
        # the kernels skip bounds checks; reject bad queries before they
        # reach the compiled path
        if (
            easts.size
            and norths.size
            and (
                easts.min() < 0.0
                or easts.max() > self.east_extent_m
                or norths.min() < 0.0
                or norths.max() > self.north_extent_m
            )
        ):
            raise OutOfBoundsError("height query outside terrain bounds")
        return kernels.bilinear_heights(self.heights, self.cell_size_m, easts, norths)

    def is_water(self, east: float, north: float) -> bool:
        """Water flag of the nearest lattice node."""
        if self.water_mask is None or not self.contains(east, north):
            return False
        col = int(round(east / self.cell_size_m))
        row = int(round(north / self.cell_size_m))
        return bool(self.water_mask[row, col])
