"""Escape-time classification of orbits, points, and grids.

An orbit escapes when its magnitude exceeds the radius R and stays
non-decreasing for m further steps (or overflows); transcendental orbits
can cross R and come back, so the confirmation window is what makes the
call sound. Escape through the overflow guard is reported distinctly but
counts as escape evidence everywhere downstream.

The semigroup-level class is one-sided evidence: EscapingCandidate means
every word up to length L escaped, nothing more. Reports therefore always
carry (R, N, L, m).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__ as _version
from .grid import GridSpec, IndicatorGrid, PixelClass
from .maps import eval_map_array, is_overflow
from .rng import RNG_ALGORITHM, derive_stream_seed
from .semigroup import SemigroupSpec, Word, eval_word_array, random_word_indices, validate_word, words_up_to


class RationalGeneratorsRejectedError(ValueError):
    """Escaping-set semantics need entire generators."""


@dataclass(frozen=True)
class EscapeParams:
    R: float = 1e10
    N: int = 200
    L: int = 3
    m: int = 3

    def __post_init__(self):
        if self.R < 100:
            raise ValueError("escape radius R must be >= 100")
        if self.N < 10:
            raise ValueError("iteration budget N must be >= 10")
        if self.L < 1:
            raise ValueError("word depth L must be >= 1")
        if not 1 <= self.m < self.N:
            raise ValueError("confirmation steps m must satisfy 1 <= m < N")

    def echo(self) -> str:
        return f"R={self.R:g} N={self.N} L={self.L} m={self.m}"


# outcome codes used by the array kernel
ESCAPED = np.uint8(1)
BOUNDED_CODE = np.uint8(2)
OVERFLOW_CODE = np.uint8(3)
INDETERMINATE_CODE = np.uint8(4)


@dataclass(frozen=True)
class OrbitOutcome:
    tag: str  # "escaped" | "bounded" | "overflow" | "indeterminate"
    step: int | None = None

    @property
    def is_escape_evidence(self) -> bool:
        return self.tag in ("escaped", "overflow")


@dataclass
class Orbit:
    start: complex
    points: list[complex]
    outcome: OrbitOutcome


@dataclass(frozen=True)
class SemigroupEscapeClass:
    tag: str  # "escaping-candidate" | "bounded-witness" | "indeterminate"
    word: Word | None = None


def word_outcome_codes(spec: SemigroupSpec, w: Word, pts: np.ndarray, p: EscapeParams) -> tuple[np.ndarray, np.ndarray]:
    """Classify iteration of the word map at each point of a flat array.

    Returns (codes, steps): codes are ESCAPED/BOUNDED/OVERFLOW/INDETERMINATE,
    steps is the recorded escape (or overflow) step, -1 where meaningless.
    Escape bookkeeping: a candidate opens when |z| first exceeds R, survives
    while |z| is non-decreasing, and is confirmed after m survivals; a drop
    cancels the candidate (it may reopen later). Budget exhaustion with an
    open candidate is indeterminate.
    """
    validate_word(spec, w)
    pts = np.asarray(pts, dtype=np.complex128).ravel()
    n = pts.size
    codes = np.zeros(n, dtype=np.uint8)
    steps = np.full(n, -1, dtype=np.int64)

    # unresolved points live in compacted state arrays; idx maps them back
    idx = np.arange(n, dtype=np.int64)
    z = pts.copy()
    over0 = is_overflow(z)
    if over0.any():
        codes[over0] = OVERFLOW_CODE
        steps[over0] = 0
        keep0 = ~over0
        idx, z = idx[keep0], z[keep0]
    mag_prev = np.abs(z)
    pending = np.where(mag_prev > p.R, 0, -1).astype(np.int64)
    confirm = np.zeros(idx.size, dtype=np.int64)
    gens = [spec.generators[i] for i in w]

    for t in range(1, p.N + 1):
        if idx.size == 0:
            break
        for gen in gens:
            z = eval_map_array(gen, z)
        mag = np.abs(z)
        over = is_overflow(z)
        pend = pending >= 0
        nondec = mag >= mag_prev

        bump = pend & ~over & nondec
        confirm[bump] += 1
        escaped_now = (pend & over) | (bump & (confirm >= p.m))
        overflow_cold = over & ~pend
        resolved = over | escaped_now
        if resolved.any():
            gi = idx[escaped_now]
            codes[gi] = ESCAPED
            steps[gi] = pending[escaped_now]
            gi = idx[overflow_cold]
            codes[gi] = OVERFLOW_CODE
            steps[gi] = t

        cancel = pend & ~over & ~nondec
        pending[cancel] = -1
        confirm[cancel] = 0
        fresh = ~over & (pending < 0) & (mag > p.R)
        pending[fresh] = t
        confirm[fresh] = 0
        mag_prev = mag

        if resolved.any():
            keep = ~resolved
            idx, z, mag_prev = idx[keep], z[keep], mag_prev[keep]
            pending, confirm = pending[keep], confirm[keep]

    codes[idx[pending >= 0]] = INDETERMINATE_CODE
    codes[idx[pending < 0]] = BOUNDED_CODE
    return codes, steps


def _outcome_from_code(code: np.uint8, step: int) -> OrbitOutcome:
    if code == ESCAPED:
        return OrbitOutcome("escaped", step)
    if code == OVERFLOW_CODE:
        return OrbitOutcome("overflow", step)
    if code == INDETERMINATE_CODE:
        return OrbitOutcome("indeterminate")
    return OrbitOutcome("bounded")


def classify_orbit(spec: SemigroupSpec, w: Word, z: complex, p: EscapeParams) -> OrbitOutcome:
    """Outcome of iterating the word map at z (classification only)."""
    codes, steps = word_outcome_codes(spec, w, np.array([z]), p)
    return _outcome_from_code(codes[0], int(steps[0]))


def iterate_word(spec: SemigroupSpec, w: Word, z: complex, p: EscapeParams, store_points: bool = True) -> Orbit:
    """Orbit of the word map at z, with the points visited until resolution.

    classification-only callers should use classify_orbit; storing points
    over a full grid is deliberately not supported.
    """
    outcome = classify_orbit(spec, w, z, p)
    points = [z]
    if store_points:
        if outcome.tag == "escaped":
            stop = min(p.N, (outcome.step or 0) + p.m)
        elif outcome.tag == "overflow":
            stop = outcome.step or 0
        else:
            stop = p.N
        cur = np.array([z], dtype=np.complex128)
        for _ in range(stop):
            cur = eval_word_array(spec, w, cur)
            points.append(complex(cur[0]))
    return Orbit(start=z, points=points, outcome=outcome)


def _require_entire(spec: SemigroupSpec) -> None:
    for g in spec.generators:
        if not g.is_entire:
            raise RationalGeneratorsRejectedError(
                f"{type(g).__name__} has no entire semantics; escaping-set operations reject it"
            )


def escape_semantics(spec: SemigroupSpec) -> str:
    if any(g.is_rational for g in spec.generators):
        return "classical escape (polynomial generators)"
    return "transcendental escaping set"


def classify_point_semigroup(spec: SemigroupSpec, z: complex, p: EscapeParams) -> SemigroupEscapeClass:
    """Semigroup class at one point from all words of length <= L.

    EscapingCandidate needs escape evidence from every word; the witness
    returned for bounded behavior is the first bounded word in enumeration
    order (shortest first, outermost-letter lexicographic within a length).
    """
    _require_entire(spec)
    all_escape = True
    for w in words_up_to(spec, p.L):
        outcome = classify_orbit(spec, w, z, p)
        if outcome.tag == "bounded":
            return SemigroupEscapeClass("bounded-witness", w)
        all_escape &= outcome.is_escape_evidence
    if all_escape:
        return SemigroupEscapeClass("escaping-candidate")
    return SemigroupEscapeClass("indeterminate")


def classify_points_semigroup(
    spec: SemigroupSpec, pts: np.ndarray, p: EscapeParams, threads: int = 1
) -> np.ndarray:
    """Semigroup class codes (PixelClass values) for a flat point array.

    ESCAPING where every word escaped or overflowed, BOUNDED where some
    word stayed bounded, INDETERMINATE otherwise. Pixels with a bounded
    witness skip the remaining words; that is safe because one witness
    settles the class.
    """
    _require_entire(spec)
    pts = np.asarray(pts, dtype=np.complex128).ravel()

    def run(chunk: np.ndarray) -> np.ndarray:
        bounded = np.zeros(chunk.size, dtype=bool)
        all_escape = np.ones(chunk.size, dtype=bool)
        for w in words_up_to(spec, p.L):
            todo = np.flatnonzero(~bounded)
            if todo.size == 0:
                break
            codes, _ = word_outcome_codes(spec, w, chunk[todo], p)
            bounded[todo[codes == BOUNDED_CODE]] = True
            esc = (codes == ESCAPED) | (codes == OVERFLOW_CODE)
            all_escape[todo[~esc]] = False
        out = np.full(chunk.size, np.uint8(PixelClass.INDETERMINATE), dtype=np.uint8)
        out[bounded] = np.uint8(PixelClass.BOUNDED)
        out[all_escape & ~bounded] = np.uint8(PixelClass.ESCAPING)
        return out

    return _run_chunked(run, pts, threads)


def _run_chunked(fn, pts: np.ndarray, threads: int) -> np.ndarray:
    """Apply a pure per-point kernel over chunks; stitching preserves order.

    The chunk layout must not influence results, so kernels get slices of
    the flat array and nothing else.
    """
    threads = max(1, int(threads))
    if threads == 1 or pts.size < 4096:
        return fn(pts)
    bounds = np.linspace(0, pts.size, threads * 4 + 1, dtype=np.int64)
    chunks = [pts[a:b] for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(fn, chunks))
    return np.concatenate(results)


def _grid_meta(spec: SemigroupSpec, p: EscapeParams, seed: int | None = None) -> dict:
    meta = {
        "semigroup": spec.label,
        "version": f"semidyn-{_version}",
        "rng": RNG_ALGORITHM,
        "params": p.echo(),
    }
    if seed is not None:
        meta["seed"] = str(seed)
    return meta


def approximate_escaping_set(
    spec: SemigroupSpec, g: GridSpec, p: EscapeParams, threads: int = 1
) -> IndicatorGrid:
    """Per-pixel semigroup escape classes at pixel centers."""
    codes = classify_points_semigroup(spec, g.pixel_centers().ravel(), p, threads)
    meta = _grid_meta(spec, p)
    meta["kind"] = "escaping-set"
    meta["escape_semantics"] = escape_semantics(spec)
    return IndicatorGrid(grid=g, classes=codes.reshape(g.height, g.width), params=p, meta=meta)


def random_word_divergence_test(
    spec: SemigroupSpec, z: complex, p: EscapeParams, seed: int, trials: int
) -> float:
    """Fraction of random-word orbits at z that confirm escape within N steps.

    Trial t follows the index stream derived from (seed, t); all trials
    advance in lockstep so the computation vectorizes across trials.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _require_entire(spec)
    stream_seeds = [derive_stream_seed(seed, t) for t in range(trials)]
    idx = np.stack([random_word_indices(spec, s, p.N) for s in stream_seeds])  # (trials, N)

    zs = np.full(trials, z, dtype=np.complex128)
    codes = np.zeros(trials, dtype=np.uint8)
    pending = np.full(trials, -1, dtype=np.int64)
    confirm = np.zeros(trials, dtype=np.int64)
    mag_prev = np.abs(zs)
    alive = ~is_overflow(zs)
    codes[~alive] = OVERFLOW_CODE
    pending[alive & (mag_prev > p.R)] = 0

    for t in range(1, p.N + 1):
        ai = np.flatnonzero(alive)
        if ai.size == 0:
            break
        za = zs[ai]
        gens = idx[ai, t - 1]
        for gi_ in range(spec.n):
            sel = gens == gi_
            if sel.any():
                za[sel] = eval_map_array(spec.generators[gi_], za[sel])
        zs[ai] = za
        mag = np.abs(za)
        over = is_overflow(za)
        pend = pending[ai] >= 0

        gi = ai[over & pend]
        codes[gi] = ESCAPED
        gi = ai[over & ~pend]
        codes[gi] = OVERFLOW_CODE

        live = ~over
        nondec = live & (mag >= mag_prev[ai])
        cont = pend & live
        bump = cont & nondec
        confirm[ai[bump]] += 1
        done = np.zeros_like(bump)
        done[bump] = confirm[ai[bump]] >= p.m
        codes[ai[done]] = ESCAPED
        cancel = cont & ~nondec
        pending[ai[cancel]] = -1
        confirm[ai[cancel]] = 0
        fresh = live & (pending[ai] < 0) & (mag > p.R)
        pending[ai[fresh]] = t
        confirm[ai[fresh]] = 0
        mag_prev[ai] = mag
        alive[ai[over | done]] = False

    diverged = (codes == ESCAPED) | (codes == OVERFLOW_CODE)
    return float(diverged.sum()) / trials
