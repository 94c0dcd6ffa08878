"""Pixel grids over rectangular windows of the complex plane.

Pixel (i, j) has i = column, j = row counted from the top (max imaginary),
and represents the complex point at the pixel center:

    re_min + (i + 0.5) dx,   im_max - (j + 0.5) dy

Class arrays are row-major (height, width) uint8, row 0 on top, matching
the PGM serialization order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np


class PixelClass(IntEnum):
    BOUNDED = 0
    ESCAPING = 1
    JULIA = 2
    FATOU = 3
    UNKNOWN = 4
    INDETERMINATE = 5


CLASS_NAMES = {
    PixelClass.BOUNDED: "bounded",
    PixelClass.ESCAPING: "escaping",
    PixelClass.JULIA: "julia",
    PixelClass.FATOU: "fatou",
    PixelClass.UNKNOWN: "unknown",
    PixelClass.INDETERMINATE: "indeterminate",
}

# Complementary class used when a pixel is definitively *not* in the class
# an indicator marks.
COMPLEMENT_CLASS = {
    PixelClass.BOUNDED: PixelClass.ESCAPING,
    PixelClass.ESCAPING: PixelClass.BOUNDED,
    PixelClass.JULIA: PixelClass.FATOU,
    PixelClass.FATOU: PixelClass.JULIA,
}


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("window must satisfy re_min < re_max and im_min < im_max")
        if self.width < 1 or self.height < 1:
            raise ValueError("grid needs width, height >= 1")

    @property
    def dx(self) -> float:
        return (self.re_max - self.re_min) / self.width

    @property
    def dy(self) -> float:
        return (self.im_max - self.im_min) / self.height

    @property
    def pixel_diag(self) -> float:
        return float(np.hypot(self.dx, self.dy))

    def pixel_to_point(self, i: int, j: int) -> complex:
        return complex(self.re_min + (i + 0.5) * self.dx, self.im_max - (j + 0.5) * self.dy)

    def pixel_centers(self) -> np.ndarray:
        """(height, width) complex128 array of pixel-center points."""
        re = self.re_min + (np.arange(self.width) + 0.5) * self.dx
        im = self.im_max - (np.arange(self.height) + 0.5) * self.dy
        return re[None, :] + 1j * im[:, None]

    def point_to_pixel(self, w: complex) -> tuple[int, int] | None:
        """Pixel containing w, or None when w falls outside the window."""
        i = int(np.floor((w.real - self.re_min) / self.dx))
        j = int(np.floor((self.im_max - w.imag) / self.dy))
        if 0 <= i < self.width and 0 <= j < self.height:
            return (i, j)
        return None

    def points_to_pixels(self, w: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Vectorized lookup: (col, row, inside) with col/row valid where inside."""
        with np.errstate(invalid="ignore", over="ignore"):
            fi = np.floor((w.real - self.re_min) / self.dx)
            fj = np.floor((self.im_max - w.imag) / self.dy)
            inside = (
                np.isfinite(fi) & np.isfinite(fj)
                & (fi >= 0) & (fi < self.width) & (fj >= 0) & (fj < self.height)
            )
        i = np.where(inside, fi, 0).astype(np.int64)
        j = np.where(inside, fj, 0).astype(np.int64)
        return i, j, inside


@dataclass
class IndicatorGrid:
    """Per-pixel classification of a window, plus provenance."""

    grid: GridSpec
    classes: np.ndarray  # (height, width) uint8 of PixelClass values
    params: object | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.classes = np.asarray(self.classes, dtype=np.uint8)
        if self.classes.shape != (self.grid.height, self.grid.width):
            raise ValueError(
                f"classes shape {self.classes.shape} does not match grid "
                f"{(self.grid.height, self.grid.width)}"
            )

    def mask(self, cls: PixelClass) -> np.ndarray:
        return self.classes == np.uint8(cls)


def dilate(mask: np.ndarray, k: int = 1) -> np.ndarray:
    """Chebyshev-metric dilation by k pixels (k repeated 3x3 OR passes)."""
    out = mask.astype(bool).copy()
    for _ in range(k):
        m = out.copy()
        m[1:, :] |= out[:-1, :]
        m[:-1, :] |= out[1:, :]
        m[:, 1:] |= out[:, :-1]
        m[:, :-1] |= out[:, 1:]
        m[1:, 1:] |= out[:-1, :-1]
        m[1:, :-1] |= out[:-1, 1:]
        m[:-1, 1:] |= out[1:, :-1]
        m[:-1, :-1] |= out[1:, 1:]
        out = m
    return out


def boundary_band(mask: np.ndarray, band: int) -> np.ndarray:
    """Pixels within `band` (Chebyshev) of the in/out boundary of mask."""
    if band <= 0:
        return np.zeros_like(mask, dtype=bool)
    mask = mask.astype(bool)
    return dilate(mask, band) & dilate(~mask, band)
