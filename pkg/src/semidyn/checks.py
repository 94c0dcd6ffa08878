"""Numerical checks of the invariance theorems and set identities.

Every check quantifies a residual in [0, 1]: the fraction of tested pixels
violating the property after excluding a boundary band (default 2 pixels)
and Unknown pixels. The identities are exact for the true sets, so the
discretization error they do incur concentrates at set boundaries; the
band exclusion is what keeps the residuals honest.

Verdicts: pass iff residual <= threshold; checks whose hypotheses are not
met (non-abelian semigroup for an abelian-only theorem, or a known
non-invariance witness) report verdict "informational" and never fail a
suite. The abelian gate is numerical: a semigroup counts as abelian only
when every generator pair shows a commutator defect below the gate
tolerance on sampled points, not because a catalog entry claims so.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .escape import approximate_escaping_set
from .grid import CLASS_NAMES, GridSpec, IndicatorGrid, PixelClass, boundary_band, dilate
from .julia import JuliaParams, approximate_julia_union, fatou_indicator, preimage_grid, word_escape_masks
from .maps import PowerQuotient, SampleSpec, commutator_defect, eval_map_array, is_overflow, render_complex
from .semigroup import SemigroupSpec, Word, words_up_to

ABELIAN_GATE_TOL = 1e-9
DEFAULT_BAND = 2
MAX_VIOLATION_SAMPLES = 32


class InvalidParameterError(ValueError):
    pass


@dataclass(frozen=True)
class ViolationSample:
    z: complex
    class_before: str
    class_after: str


@dataclass
class CheckReport:
    name: str
    semigroup: str
    params: str
    residual: float
    threshold: float
    verdict: str  # "pass" | "fail" | "informational"
    violation_samples: list[ViolationSample] = field(default_factory=list)

    def __post_init__(self):
        if not 0.0 <= self.residual <= 1.0:
            raise ValueError(f"residual {self.residual} outside [0, 1]")


def _verdict(residual: float, threshold: float, informational: bool) -> str:
    if informational:
        return "informational"
    return "pass" if residual <= threshold else "fail"


def _sample_violations(
    g: GridSpec, viol: np.ndarray, before: np.ndarray, after: np.ndarray
) -> list[ViolationSample]:
    """First violations in row-major order, up to the report cap."""
    idx = np.flatnonzero(viol.ravel())[:MAX_VIOLATION_SAMPLES]
    centers = g.pixel_centers().ravel()
    b = before.ravel()
    a = after.ravel()
    return [
        ViolationSample(
            z=complex(centers[k]),
            class_before=CLASS_NAMES[PixelClass(int(b[k]))],
            class_after=CLASS_NAMES[PixelClass(int(a[k]))],
        )
        for k in idx
    ]


def is_abelian(spec: SemigroupSpec, sample: SampleSpec | None = None) -> tuple[bool, float]:
    """Numerical abelianness: max pairwise commutator defect under the gate."""
    if sample is None:
        sample = SampleSpec(center=0, radius=1.0, count=1000, seed=20260810)
    worst = 0.0
    for a in range(spec.n):
        for b in range(a + 1, spec.n):
            defect, _ = commutator_defect(spec.generators[a], spec.generators[b], sample)
            worst = max(worst, defect)
    return worst < ABELIAN_GATE_TOL, worst


def _known_mask(grid: IndicatorGrid) -> np.ndarray:
    return (grid.classes != np.uint8(PixelClass.UNKNOWN)) & (
        grid.classes != np.uint8(PixelClass.INDETERMINATE)
    )


def check_forward_invariance(
    set_grid: IndicatorGrid,
    cls: PixelClass,
    spec: SemigroupSpec,
    threshold: float = 0.01,
    band: int = DEFAULT_BAND,
    informational: bool | None = None,
) -> CheckReport:
    """f(U) inside U for every generator, U = the pixels of class `cls`.

    Residual: fraction of tested in-class pixels whose image under some
    generator lands in-window on a non-band pixel of a different class.
    When `informational` is None, forward checks on the Julia band are
    informational: the band is thin, and an expanding map carries band
    pixels many pixels past any fixed tolerance even when the underlying
    set genuinely is forward invariant, so the residual is recorded rather
    than asserted. Area classes (Fatou, escaping) are asserted.
    """
    if informational is None:
        informational = cls == PixelClass.JULIA
    g = set_grid.grid
    in_class = set_grid.mask(cls)
    band_excl = boundary_band(in_class, band)
    tested = in_class & ~band_excl & _known_mask(set_grid)
    centers = g.pixel_centers()
    viol = np.zeros_like(tested)
    after = set_grid.classes.copy()
    flat_tested = tested.ravel()
    src = centers.ravel()[flat_tested]
    for gen in spec.generators:
        w = eval_map_array(gen, src)
        i, j, inside = g.points_to_pixels(w)
        inside &= ~is_overflow(w)
        landing = np.full(w.size, np.uint8(PixelClass.UNKNOWN), dtype=np.uint8)
        landing[inside] = set_grid.classes[j[inside], i[inside]]
        landing_band = np.zeros(w.size, dtype=bool)
        landing_band[inside] = band_excl[j[inside], i[inside]]
        bad = (
            inside
            & ~landing_band
            & (landing != np.uint8(cls))
            & (landing != np.uint8(PixelClass.UNKNOWN))
            & (landing != np.uint8(PixelClass.INDETERMINATE))
        )
        if bad.any():
            pos = np.flatnonzero(flat_tested)[bad]
            viol.ravel()[pos] = True
            after.ravel()[pos] = landing[bad]
    n_tested = int(tested.sum())
    residual = float(viol.sum()) / n_tested if n_tested else 0.0
    return CheckReport(
        name=f"forward-invariance-{CLASS_NAMES[cls]}",
        semigroup=spec.label,
        params=f"band={band}",
        residual=residual,
        threshold=threshold,
        verdict=_verdict(residual, threshold, informational),
        violation_samples=_sample_violations(g, viol, set_grid.classes, after),
    )


def check_backward_invariance(
    set_grid: IndicatorGrid,
    cls: PixelClass,
    spec: SemigroupSpec,
    threshold: float = 0.02,
    band: int = DEFAULT_BAND,
    informational: bool | None = None,
) -> CheckReport:
    """f^{-1}(U) inside U for every generator.

    Per generator: among tested pixels z whose image lands in-window on an
    in-class non-band pixel, the violating ones are those with z itself
    out of class. The report aggregates the worst generator. Backward
    invariance of the Julia set holds in general; of Fatou and escaping
    sets only under the abelian gate (the annulus semigroup <z^2, z^2/a> is
    the standard counterexample), hence the default informational policy.
    """
    if informational is None:
        informational = cls != PixelClass.JULIA and not is_abelian(spec)[0]
    g = set_grid.grid
    in_class = set_grid.mask(cls)
    band_excl = boundary_band(in_class, band)
    known = _known_mask(set_grid)
    tested = known & ~band_excl
    centers = g.pixel_centers().ravel()
    flat_tested = tested.ravel()
    src = centers[flat_tested]
    worst = 0.0
    worst_viol = np.zeros_like(tested)
    after = set_grid.classes.copy()
    for gen in spec.generators:
        w = eval_map_array(gen, src)
        i, j, inside = g.points_to_pixels(w)
        inside &= ~is_overflow(w)
        landing_in = np.zeros(w.size, dtype=bool)
        landing_ok = np.zeros(w.size, dtype=bool)
        landing_in[inside] = in_class[j[inside], i[inside]]
        landing_ok[inside] = (~band_excl & known)[j[inside], i[inside]]
        denom_mask = inside & landing_ok & landing_in
        denom = int(denom_mask.sum())
        src_in_class = in_class.ravel()[flat_tested]
        bad = denom_mask & ~src_in_class
        residual_g = float(bad.sum()) / denom if denom else 0.0
        if residual_g >= worst:
            worst = residual_g
            worst_viol = np.zeros_like(tested)
            pos = np.flatnonzero(flat_tested)[bad]
            worst_viol.ravel()[pos] = True
            after = set_grid.classes.copy()
            after.ravel()[pos] = np.uint8(cls)
    return CheckReport(
        name=f"backward-invariance-{CLASS_NAMES[cls]}",
        semigroup=spec.label,
        params=f"band={band} aggregate=max-over-generators",
        residual=worst,
        threshold=threshold,
        verdict=_verdict(worst, threshold, informational),
        violation_samples=_sample_violations(g, worst_viol, set_grid.classes, after),
    )


def _infer_main_class(grid: IndicatorGrid) -> PixelClass:
    present = set(np.unique(grid.classes).tolist())
    if PixelClass.FATOU in present or PixelClass.JULIA in present:
        return PixelClass.FATOU
    return PixelClass.ESCAPING


def check_intersection_identity(
    set_grid: IndicatorGrid,
    spec: SemigroupSpec,
    cls: PixelClass | None = None,
    threshold: float = 0.02,
    band: int = DEFAULT_BAND,
    informational: bool | None = None,
) -> CheckReport:
    """Set equals the intersection of its generator pre-images.

    Holds for Fatou sets of finitely generated semigroups in general; for
    escaping sets the identity needs no abelian hypothesis either, but the
    residual magnitude for non-abelian transcendental examples is not
    pinned anywhere, so those run informationally and are recorded.
    """
    if cls is None:
        cls = _infer_main_class(set_grid)
    if informational is None:
        informational = cls == PixelClass.ESCAPING and not is_abelian(spec)[0]
    g = set_grid.grid
    m = set_grid.mask(cls)
    inter = np.ones_like(m)
    unknown = ~_known_mask(set_grid)
    for gen in spec.generators:
        pre = preimage_grid(gen, set_grid, cls)
        inter &= pre.mask(cls)
        unknown |= pre.mask(PixelClass.UNKNOWN)
    tested = ~unknown & ~boundary_band(m, band)
    mism = (inter ^ m) & tested
    n_tested = int(tested.sum())
    residual = float(mism.sum()) / n_tested if n_tested else 0.0
    after = np.where(inter, np.uint8(cls), np.uint8(PixelClass.UNKNOWN))
    return CheckReport(
        name=f"intersection-identity-{CLASS_NAMES[cls]}",
        semigroup=spec.label,
        params=f"band={band}",
        residual=residual,
        threshold=threshold,
        verdict=_verdict(residual, threshold, informational),
        violation_samples=_sample_violations(g, mism, set_grid.classes, after),
    )


def _band_symdiff_residual(
    a: np.ndarray, b: np.ndarray, band: int, excluded: np.ndarray | None = None
) -> tuple[float, np.ndarray]:
    """Symmetric difference of two thin pixel sets, each dilated by `band`
    before testing the other; residual relative to the union."""
    if excluded is None:
        excluded = np.zeros_like(a)
    mism = ((a & ~dilate(b, band)) | (b & ~dilate(a, band))) & ~excluded
    denom = int(((a | b) & ~excluded).sum())
    return (float(mism.sum()) / denom if denom else 0.0), mism


def check_union_identity(
    julia: IndicatorGrid,
    spec: SemigroupSpec,
    threshold: float = 0.02,
    band: int = DEFAULT_BAND,
    informational: bool = False,
) -> CheckReport:
    """Julia band equals the union of its generator pre-images (backward
    self-similarity), compared band-dilated because both sets are thin."""
    g = julia.grid
    jm = julia.mask(PixelClass.JULIA)
    union = np.zeros_like(jm)
    unknown = np.zeros_like(jm)
    for gen in spec.generators:
        pre = preimage_grid(gen, julia, PixelClass.JULIA)
        union |= pre.mask(PixelClass.JULIA)
        unknown |= pre.mask(PixelClass.UNKNOWN)
    residual, mism = _band_symdiff_residual(jm, union, band, unknown)
    after = np.where(union, np.uint8(PixelClass.JULIA), np.uint8(PixelClass.FATOU))
    return CheckReport(
        name="union-identity-julia",
        semigroup=spec.label,
        params=f"band={band}",
        residual=residual,
        threshold=threshold,
        verdict=_verdict(residual, threshold, informational),
        violation_samples=_sample_violations(g, mism, julia.classes, after),
    )


def check_abelian_equalities(
    spec: SemigroupSpec,
    g: GridSpec,
    p: JuliaParams,
    threshold: float = 0.03,
    band: int = DEFAULT_BAND,
    word_depth: int = 2,
    threads: int = 1,
    gate_sample: SampleSpec | None = None,
) -> CheckReport:
    """J(S) = J(f) and I(S) = I(f) for words f up to the given length.

    Gated on measured abelianness; a failed gate reports the defect
    informationally instead of comparing sets.
    """
    abelian, defect = is_abelian(spec, gate_sample)
    if not abelian:
        return CheckReport(
            name="abelian-equalities",
            semigroup=spec.label,
            params=f"gate=failed commutator_defect={defect:.3e}",
            residual=min(1.0, defect),
            threshold=threshold,
            verdict="informational",
        )
    js_grid = approximate_julia_union(spec, g, p, threads)
    js = js_grid.mask(PixelClass.JULIA)
    is_grid = approximate_escaping_set(spec, g, p.escape, threads)
    is_mask = is_grid.mask(PixelClass.ESCAPING)
    worst = 0.0
    worst_mism = np.zeros_like(js)
    for w in words_up_to(spec, word_depth):
        esc, bnd = word_escape_masks(spec, w, g, p.escape, threads)
        jf = dilate(esc, 1) & dilate(bnd, 1)
        r_j, mism_j = _band_symdiff_residual(js, jf, band)
        excl = boundary_band(is_mask, band) | boundary_band(esc, band)
        tested = ~excl
        mism_i = (is_mask ^ esc) & tested
        n_tested = int(tested.sum())
        r_i = float(mism_i.sum()) / n_tested if n_tested else 0.0
        for r, mism in ((r_j, mism_j), (r_i, mism_i)):
            if r > worst:
                worst, worst_mism = r, mism
    return CheckReport(
        name="abelian-equalities",
        semigroup=spec.label,
        params=f"gate=passed band={band} word_depth={word_depth}",
        residual=worst,
        threshold=threshold,
        verdict=_verdict(worst, threshold, False),
        violation_samples=_sample_violations(g, worst_mism, js_grid.classes, js_grid.classes),
    )


@dataclass
class GridBundle:
    """Semigroup-level and per-word grids on one window, shared by checks."""

    spec: SemigroupSpec
    grid: GridSpec
    julia: IndicatorGrid
    fatou: IndicatorGrid
    escaping: IndicatorGrid
    word_masks: dict[Word, tuple[np.ndarray, np.ndarray]]  # word -> (escape, bounded)


def compute_grid_bundle(
    spec: SemigroupSpec,
    g: GridSpec,
    p: JuliaParams,
    word_depth: int = 2,
    threads: int = 1,
) -> GridBundle:
    julia = approximate_julia_union(spec, g, p, threads)
    escaping = approximate_escaping_set(spec, g, p.escape, threads)
    masks = {w: word_escape_masks(spec, w, g, p.escape, threads) for w in words_up_to(spec, word_depth)}
    return GridBundle(
        spec=spec, grid=g, julia=julia, fatou=fatou_indicator(julia), escaping=escaping, word_masks=masks
    )


def check_inclusions(
    spec: SemigroupSpec,
    grids: GridBundle,
    threshold: float = 0.02,
    band: int = DEFAULT_BAND,
) -> CheckReport:
    """F(S) in F(f), J(f) in J(S), I(S) in I(f) for each bundled word f."""
    js = grids.julia.mask(PixelClass.JULIA)
    fs_strict = ~js & ~dilate(js, band)
    is_mask = grids.escaping.mask(PixelClass.ESCAPING)
    js_dil = dilate(js, band)
    worst = 0.0
    worst_mism = np.zeros_like(js)
    for w, (esc, bnd) in grids.word_masks.items():
        jf = dilate(esc, 1) & dilate(bnd, 1)
        viol_f = fs_strict & jf
        r_f = float(viol_f.sum()) / int(fs_strict.sum()) if fs_strict.any() else 0.0
        viol_j = jf & ~js_dil
        r_j = float(viol_j.sum()) / int(jf.sum()) if jf.any() else 0.0
        viol_i = is_mask & ~esc
        r_i = float(viol_i.sum()) / int(is_mask.sum()) if is_mask.any() else 0.0
        for r, mism in ((r_f, viol_f), (r_j, viol_j), (r_i, viol_i)):
            if r > worst:
                worst, worst_mism = r, mism
    return CheckReport(
        name="inclusions",
        semigroup=spec.label,
        params=f"band={band} words={len(grids.word_masks)}",
        residual=worst,
        threshold=threshold,
        verdict=_verdict(worst, threshold, False),
        violation_samples=_sample_violations(grids.grid, worst_mism, grids.julia.classes, grids.julia.classes),
    )


def annulus_reference_check(
    a: complex,
    g: GridSpec,
    p: JuliaParams,
    threshold: float = 0.01,
    band: int = DEFAULT_BAND,
    threads: int = 1,
) -> CheckReport:
    """Compare the computed F/J split of <z^2, z^2/a> to the analytic annulus.

    The truth: Julia set is exactly 1 <= |z| <= |a|, Fatou set its
    complement. Pixels within `band` pixel diagonals of either circle are
    excluded; elsewhere the computed classification must match.
    """
    a = complex(a)
    if abs(a) <= 1:
        raise InvalidParameterError(f"annulus reference needs |a| > 1, got |a| = {abs(a)}")
    spec = SemigroupSpec((PowerQuotient(2, 1), PowerQuotient(2, a)), label=f"annulus(a={render_complex(a)})")
    julia = approximate_julia_union(spec, g, p, threads)
    computed_j = julia.mask(PixelClass.JULIA)
    r = np.abs(g.pixel_centers())
    true_j = (r >= 1.0) & (r <= abs(a))
    halfwidth = band * g.pixel_diag
    excl = (np.abs(r - 1.0) <= halfwidth) | (np.abs(r - abs(a)) <= halfwidth)
    tested = ~excl
    mism = (computed_j ^ true_j) & tested
    n_tested = int(tested.sum())
    residual = float(mism.sum()) / n_tested if n_tested else 0.0
    truth = np.where(true_j, np.uint8(PixelClass.JULIA), np.uint8(PixelClass.FATOU))
    return CheckReport(
        name="annulus-reference",
        semigroup=spec.label,
        params=f"exclusion_band={band} {p.echo()}",
        residual=residual,
        threshold=threshold,
        verdict=_verdict(residual, threshold, False),
        violation_samples=_sample_violations(g, mism, julia.classes, truth),
    )
