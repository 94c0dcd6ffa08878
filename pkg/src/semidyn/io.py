"""Deterministic serialization: binary PGM masks, CSV clouds, text reports.

Images are classification masks, not renders: escape/Julia evidence black,
bounded/Fatou white, unknown/indeterminate mid-gray. Identical inputs must
produce byte-identical files, so all float formatting is pinned to 17
significant digits.
"""

from __future__ import annotations

import numpy as np

from .checks import CheckReport
from .grid import IndicatorGrid, PixelClass
from .julia import PointCloud

CLASS_TO_GRAY = {
    PixelClass.ESCAPING: 0,
    PixelClass.JULIA: 0,
    PixelClass.BOUNDED: 255,
    PixelClass.FATOU: 255,
    PixelClass.UNKNOWN: 128,
    PixelClass.INDETERMINATE: 128,
}

_GRAY_LUT = np.zeros(256, dtype=np.uint8)
for _cls, _gray in CLASS_TO_GRAY.items():
    _GRAY_LUT[int(_cls)] = _gray


def write_pgm(grid: IndicatorGrid, path: str) -> None:
    """Binary PGM (P5), row 0 = top, one byte per pixel."""
    g = grid.grid
    payload = _GRAY_LUT[grid.classes]
    with open(path, "wb") as fh:
        fh.write(f"P5\n{g.width} {g.height}\n255\n".encode("ascii"))
        fh.write(payload.tobytes(order="C"))


def write_pointcloud_csv(cloud: PointCloud, path: str) -> None:
    """CSV with header re,im; 17 significant digits per component."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("re,im\n")
        for z in cloud.points:
            fh.write(f"{z.real:.17g},{z.imag:.17g}\n")


def format_report(reports: list[CheckReport]) -> str:
    lines = []
    for r in reports:
        lines.append(
            f"check={r.name} semigroup={r.semigroup} residual={r.residual:.17g} "
            f"threshold={r.threshold:.17g} verdict={r.verdict}"
        )
        if r.params:
            lines.append(f"  params: {r.params}")
        for s in r.violation_samples:
            lines.append(
                f"  z={s.z.real:.17g},{s.z.imag:.17g} class_before={s.class_before} class_after={s.class_after}"
            )
    return "\n".join(lines) + ("\n" if lines else "")


def write_report(reports: list[CheckReport], path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_report(reports))
