"""Julia/Fatou approximation by two independent routes.

Route 1 (rational power maps only): backward IFS sampling. Each step picks
a uniform random generator and a uniform random inverse branch; after
burn-in, the chain distributes over the Julia set.

Route 2 (whole catalog): escape classification of every word map up to
depth L, pooled over words. A pixel joins the Julia band when escape
evidence and bounded behavior both occur within its 3x3 neighborhood,
the neighborhood outcomes pooled across all words. For a single word this
is plain boundary extraction of its escape region; pooling across words
also captures pixels where different semigroup elements genuinely disagree
(the filled part of J(S) for non-abelian semigroups). For transcendental
generators the escape boundary stands in for the Julia set via the closure
relation between Julia and escaping sets; grids record that as a heuristic
when a generator carries no finite-type claim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import __version__ as _version
from .escape import (
    BOUNDED_CODE,
    ESCAPED,
    EscapeParams,
    OVERFLOW_CODE,
    _run_chunked,
    word_outcome_codes,
)
from .grid import COMPLEMENT_CLASS, GridSpec, IndicatorGrid, PixelClass, dilate
from .maps import (
    MapDescriptor,
    PowerQuotient,
    UnsupportedMapError,
    eval_map_array,
    inverse_branches,
    is_overflow,
)
from .rng import RNG_ALGORITHM, counter_u64
from .semigroup import SemigroupSpec, Word, words_up_to


@dataclass(frozen=True)
class JuliaParams:
    escape: EscapeParams = EscapeParams()
    depth: int | None = None  # word depth; defaults to escape.L
    boundary_band: int = 2

    def __post_init__(self):
        if self.depth is not None and self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.boundary_band < 1:
            raise ValueError("boundary_band must be >= 1")

    @property
    def word_depth(self) -> int:
        return self.escape.L if self.depth is None else self.depth

    def echo(self) -> str:
        return f"{self.escape.echo()} depth={self.word_depth} band={self.boundary_band}"


@dataclass
class PointCloud:
    points: np.ndarray  # complex128
    seed: int
    burn_in: int
    label: str = ""
    producing_gen: np.ndarray | None = None  # generator index that yielded each point


START_POINT = 1.0 + 0.0j  # fixed IFS start; arbitrary after burn-in, fixed for reproducibility


def backward_ifs_sample(spec: SemigroupSpec, count: int, burn_in: int, seed: int) -> PointCloud:
    """Backward random orbit of the semigroup, burn-in discarded.

    Draw 2t is the generator for step t, draw 2t+1 the branch. Landing on
    the critical value 0 restarts the chain from the start point without
    emitting (and repeats the burn-in); that path has measure zero and
    exists only to keep the sampler total.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")
    gens = spec.generators
    for g in gens:
        if not isinstance(g, PowerQuotient):
            raise UnsupportedMapError(
                f"backward IFS needs inverse branches; {type(g).__name__} has none"
            )
    pts = np.empty(count, dtype=np.complex128)
    produced = np.empty(count, dtype=np.int64)
    z = START_POINT
    emitted = 0
    skip = burn_in
    t = 0
    while emitted < count:
        gi = counter_u64(seed, 2 * t) % spec.n
        g = gens[gi]
        if z == 0:
            z = START_POINT
            skip = burn_in
            t += 1
            continue
        branches = inverse_branches(g, z)
        z = branches[counter_u64(seed, 2 * t + 1) % g.d]
        if skip > 0:
            skip -= 1
        else:
            pts[emitted] = z
            produced[emitted] = gi
            emitted += 1
        t += 1
    return PointCloud(points=pts, seed=seed, burn_in=burn_in, label=spec.label, producing_gen=produced)


def word_escape_masks(
    spec: SemigroupSpec, w: Word, g: GridSpec, p: EscapeParams, threads: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """(escape-evidence, bounded) pixel masks for one word map."""
    pts = g.pixel_centers().ravel()

    def run(chunk: np.ndarray) -> np.ndarray:
        codes, _ = word_outcome_codes(spec, w, chunk, p)
        return codes

    codes = _run_chunked(run, pts, threads).reshape(g.height, g.width)
    esc = (codes == ESCAPED) | (codes == OVERFLOW_CODE)
    bnd = codes == BOUNDED_CODE
    return esc, bnd


def word_julia_band(
    spec: SemigroupSpec, w: Word, g: GridSpec, p: EscapeParams, threads: int = 1
) -> np.ndarray:
    """Julia band of one word map: 3x3 neighborhoods mixing escape and bounded."""
    esc, bnd = word_escape_masks(spec, w, g, p, threads)
    return dilate(esc, 1) & dilate(bnd, 1)


def approximate_julia_union(
    spec: SemigroupSpec, g: GridSpec, p: JuliaParams, threads: int = 1
) -> IndicatorGrid:
    """Julia-band indicator pooled over all words of length <= depth."""
    esc_any = np.zeros((g.height, g.width), dtype=bool)
    bnd_any = np.zeros((g.height, g.width), dtype=bool)
    for w in words_up_to(spec, p.word_depth):
        esc, bnd = word_escape_masks(spec, w, g, p.escape, threads)
        esc_any |= esc
        bnd_any |= bnd
    julia = dilate(esc_any, 1) & dilate(bnd_any, 1)
    classes = np.where(julia, np.uint8(PixelClass.JULIA), np.uint8(PixelClass.FATOU))
    heuristic = any(g_.is_entire and not g_.is_rational and not g_.finite_type_claimed for g_ in spec.generators)
    meta = {
        "semigroup": spec.label,
        "version": f"semidyn-{_version}",
        "rng": RNG_ALGORITHM,
        "params": p.echo(),
        "kind": "julia-union",
        "boundary_method": "escape boundary (heuristic: no finite-type claim)" if heuristic else "escape boundary",
    }
    return IndicatorGrid(grid=g, classes=classes, params=p, meta=meta)


def fatou_indicator(julia: IndicatorGrid) -> IndicatorGrid:
    """Complement indicator: Fatou-candidate marks the non-Julia pixels.

    The two classes are complementary, so both sets are already encoded;
    taking the complement swaps which one the grid *indicates* (polarity
    metadata), and any stray non-band class normalizes to Fatou-candidate.
    Double application is the identity.
    """
    jm = julia.mask(PixelClass.JULIA)
    classes = np.where(jm, np.uint8(PixelClass.JULIA), np.uint8(PixelClass.FATOU))
    meta = dict(julia.meta)
    meta["kind"] = "fatou-complement" if meta.get("kind") != "fatou-complement" else "julia-union"
    return IndicatorGrid(grid=julia.grid, classes=classes, params=julia.params, meta=meta)


def preimage_grid(m: MapDescriptor, src: IndicatorGrid, target_class: PixelClass) -> IndicatorGrid:
    """Pull back a class indicator through one map on the same window.

    Output pixel marked target_class iff its center maps inside the window
    onto a target_class pixel; pixels mapping outside the window (or
    overflowing, or landing on unknown/indeterminate pixels) are UNKNOWN
    and stay out of downstream residuals.
    """
    g = src.grid
    w = eval_map_array(m, g.pixel_centers().ravel())
    over = is_overflow(w)
    i, j, inside = g.points_to_pixels(w)
    inside &= ~over
    landing = np.full(w.size, np.uint8(PixelClass.UNKNOWN), dtype=np.uint8)
    landing[inside] = src.classes[j[inside], i[inside]]

    complement = COMPLEMENT_CLASS.get(target_class, PixelClass.UNKNOWN)
    classes = np.full(w.size, np.uint8(complement), dtype=np.uint8)
    classes[landing == np.uint8(target_class)] = np.uint8(target_class)
    unknown = (~inside) | (landing == np.uint8(PixelClass.UNKNOWN)) | (landing == np.uint8(PixelClass.INDETERMINATE))
    classes[unknown] = np.uint8(PixelClass.UNKNOWN)
    meta = dict(src.meta)
    meta["kind"] = f"preimage-{target_class.name.lower()}"
    return IndicatorGrid(grid=g, classes=classes.reshape(g.height, g.width), params=src.params, meta=meta)
