import cmath
import math

import numpy as np
import pytest

from semidyn.escape import (
    BOUNDED_CODE,
    ESCAPED,
    EscapeParams,
    INDETERMINATE_CODE,
    OVERFLOW_CODE,
    approximate_escaping_set,
    classify_orbit,
    classify_point_semigroup,
    classify_points_semigroup,
    iterate_word,
    random_word_divergence_test,
    word_outcome_codes,
)
from semidyn.grid import GridSpec, PixelClass
from semidyn.maps import ExpAffine, PowerQuotient, eval_map
from semidyn.semigroup import SemigroupSpec

S1 = SemigroupSpec((PowerQuotient(2, 1),), label="z2")
SEXP = SemigroupSpec((ExpAffine(1, 0), ExpAffine(-1, 0)), label="exp-pair")


def oracle_first_escape_step(fn, z, R, steps):
    """Independent oracle: first orbit index with |z| > R under plain iteration."""
    for k in range(steps + 1):
        if abs(z) > R:
            return k
        z = fn(z)
    return None


def test_escape_step_z2_oracle_first():
    # oracle: z_k = 2^(2^k); first |z_k| > 1e10 at k = 6
    k = oracle_first_escape_step(lambda z: z * z, 2 + 0j, 1e10, 20)
    assert k == 6
    p = EscapeParams(R=1e10, N=100, m=3)
    out = classify_orbit(S1, (0,), 2 + 0j, p)
    assert out.tag == "escaped" and out.step == 6


def test_bounded_orbit():
    p = EscapeParams(R=1e10, N=100, m=3)
    assert classify_orbit(S1, (0,), 0.3 + 0j, p).tag == "bounded"
    assert classify_orbit(S1, (0,), 0.5 + 0j, p).tag == "bounded"


def test_exp_orbit_escapes_oracle_first():
    # oracle: real orbit 0, 1, e, e^e, ... strictly increasing (e^x > x),
    # so it passes any radius; stop before double-precision exp overflows
    z, prev = 0.0, -1.0
    while z < 30.0:
        assert z > prev
        prev, z = z, math.exp(z)
    assert math.exp(min(z, 700.0)) > 1e10  # next iterate clears any radius in use
    spec = SemigroupSpec((ExpAffine(1, 0),))
    out = classify_orbit(spec, (0,), 0j, EscapeParams(R=1e10, N=100, m=3))
    assert out.is_escape_evidence


def test_neg_exp_orbit_bounded_oracle_first():
    # oracle: e^{-z} from large positive real converges to the fixed point ~0.567
    z = 1000.0 + 0j
    for _ in range(80):
        z = cmath.exp(-z)
    assert abs(z - 0.5671432904097838) < 1e-9
    spec = SemigroupSpec((ExpAffine(-1, 0),))
    out = classify_orbit(spec, (0,), 1000 + 0j, EscapeParams(R=1e10, N=200, m=3))
    assert out.tag == "bounded"


def test_overflow_reported_distinctly():
    # e^400 jumps past the guard from far below the escape radius
    spec = SemigroupSpec((ExpAffine(1, 0),))
    out = classify_orbit(spec, (0,), 400 + 0j, EscapeParams(R=1e10, N=50, m=3))
    assert out.tag == "overflow" and out.step == 1


def test_indeterminate_when_budget_ends_mid_confirmation():
    # |z|^(2^k) crosses R=1e10 only at step 9; N=10 leaves the confirmation open
    p = EscapeParams(R=1e10, N=10, m=3)
    assert oracle_first_escape_step(lambda z: z * z, 1.07 + 0j, 1e10, 12) == 9
    out = classify_orbit(S1, (0,), 1.07 + 0j, p)
    assert out.tag == "indeterminate"


def test_monotonicity_in_N():
    p = EscapeParams(R=1e10, N=50, m=3)
    base = classify_orbit(S1, (0,), 1.5 + 0j, p)
    assert base.tag == "escaped"
    for N in (60, 100, 200):
        again = classify_orbit(S1, (0,), 1.5 + 0j, EscapeParams(R=1e10, N=N, m=3))
        assert again.tag == "escaped" and again.step == base.step


def test_monotonicity_in_R():
    p_hi = EscapeParams(R=1e12, N=100, m=3)
    p_lo = EscapeParams(R=1e6, N=100, m=3)
    for z in (1.3 + 0.2j, 2 + 0j, -1.7 + 0.4j):
        hi = classify_orbit(S1, (0,), z, p_hi)
        lo = classify_orbit(S1, (0,), z, p_lo)
        if hi.tag == "escaped":
            assert lo.tag in ("escaped", "overflow")
            assert lo.step <= hi.step


def test_orbit_points_relate_by_word_map():
    p = EscapeParams(R=1e10, N=100, m=3)
    orbit = iterate_word(S1, (0,), 2 + 0j, p)
    assert orbit.points[0] == 2 + 0j
    for a, b in zip(orbit.points, orbit.points[1:]):
        assert b == eval_map(PowerQuotient(2, 1), a)  # guard included in the map
    assert orbit.outcome.step == 6
    # escaped orbit stores through the confirmation window
    assert len(orbit.points) == 6 + 3 + 1


def test_classify_point_semigroup_examples():
    p = EscapeParams(R=1e10, N=100, L=3, m=3)
    assert classify_point_semigroup(S1, 2 + 0j, p).tag == "escaping-candidate"
    cls = classify_point_semigroup(S1, 0.5 + 0j, p)
    assert cls.tag == "bounded-witness" and cls.word == (0,)


def test_exp_pair_bounded_witness():
    # z=3 escapes under e^z alone; oracle: h = e^{-e^z} contracts to a fixed point
    z = 3 + 0j
    for _ in range(60):
        z = cmath.exp(-cmath.exp(z))
    h_fixed = z
    assert abs(cmath.exp(-cmath.exp(h_fixed)) - h_fixed) < 1e-9
    p = EscapeParams(R=1e10, N=200, L=2, m=3)
    assert classify_orbit(SEXP, (0,), 3 + 0j, p).is_escape_evidence
    assert classify_orbit(SEXP, (0, 1), 3 + 0j, p).tag == "bounded"
    cls = classify_point_semigroup(SEXP, 3 + 0j, p)
    assert cls.tag == "bounded-witness"
    assert classify_orbit(SEXP, cls.word, 3 + 0j, p).tag == "bounded"


def test_cyclic_consistency():
    p = EscapeParams(R=1e10, N=100, L=3, m=3)
    for z in (2 + 0j, 0.5 + 0j, 1.001 + 0j, 0.2 + 0.9j):
        point_cls = classify_point_semigroup(S1, z, p)
        orbit = classify_orbit(S1, (0,), z, p)
        if orbit.tag == "bounded":
            assert point_cls.tag == "bounded-witness"
        elif orbit.is_escape_evidence:
            assert point_cls.tag in ("escaping-candidate", "indeterminate")


def test_monotonicity_in_L():
    p3 = EscapeParams(R=1e10, N=200, L=3, m=3)
    p2 = EscapeParams(R=1e10, N=200, L=2, m=3)
    g = GridSpec(-2, 2, -2, 2, 60, 60)
    pts = g.pixel_centers().ravel()
    c3 = classify_points_semigroup(SEXP, pts, p3)
    c2 = classify_points_semigroup(SEXP, pts, p2)
    esc3 = c3 == PixelClass.ESCAPING
    esc2 = c2 == PixelClass.ESCAPING
    assert np.all(esc2 | ~esc3)  # candidates at depth 3 are candidates at depth 2


def test_escaping_fraction_z2():
    # analytic oracle: area of {|z|>1} in [-2,2]^2 is (16-pi)/16
    g = GridSpec(-2, 2, -2, 2, 400, 400)
    p = EscapeParams(R=1e10, N=100, L=3, m=3)
    ig = approximate_escaping_set(S1, g, p)
    frac = float((ig.classes == PixelClass.ESCAPING).mean())
    assert abs(frac - (16 - np.pi) / 16) < 0.01
    # brute-force oracle: pixel centers with |z|>1 escape, others stay bounded
    sample = g.pixel_centers()[::37, ::41].ravel()
    codes, _ = word_outcome_codes(S1, (0,), sample, p)
    for z, c in zip(sample, codes):
        if abs(z) > 1 + 1e-6:
            assert c in (ESCAPED, OVERFLOW_CODE)
        elif abs(z) < 1 - 1e-6:
            assert c == BOUNDED_CODE


def test_single_pixel_grid():
    g = GridSpec(-2, 2, -2, 2, 1, 1)
    ig = approximate_escaping_set(S1, g, EscapeParams())
    assert ig.classes.shape == (1, 1)
    assert ig.classes[0, 0] == PixelClass.BOUNDED  # center 0 is bounded


def test_grid_determinism_across_threads():
    g = GridSpec(-2, 2, -2, 2, 120, 120)
    p = EscapeParams(R=1e10, N=100, L=2, m=3)
    a = approximate_escaping_set(SEXP, g, p, threads=1)
    b = approximate_escaping_set(SEXP, g, p, threads=8)
    assert np.array_equal(a.classes, b.classes)


def test_escaping_meta_flags_polynomials():
    g = GridSpec(-2, 2, -2, 2, 8, 8)
    ig = approximate_escaping_set(S1, g, EscapeParams())
    assert ig.meta["escape_semantics"] == "classical escape (polynomial generators)"
    ig2 = approximate_escaping_set(SEXP, g, EscapeParams(L=2))
    assert ig2.meta["escape_semantics"] == "transcendental escaping set"


def test_divergence_fractions():
    p = EscapeParams(R=1e10, N=100, L=3, m=3)
    assert random_word_divergence_test(S1, 2 + 0j, p, seed=1, trials=50) == 1.0
    assert random_word_divergence_test(S1, 0.5 + 0j, p, seed=1, trials=50) == 0.0
    # oracle: some word of length <= 3 is bounded at z = 3 (the e^{-e^z} route),
    # so random streams cannot all diverge
    assert any(
        classify_orbit(SEXP, w, 3 + 0j, p).tag == "bounded"
        for w in [(1,), (0, 1), (1, 1), (0, 0, 1)]
    )
    frac = random_word_divergence_test(SEXP, 3 + 0j, p, seed=7, trials=200)
    assert frac < 1.0


def test_divergence_determinism():
    p = EscapeParams(R=1e10, N=100, L=3, m=3)
    a = random_word_divergence_test(SEXP, 1 + 1j, p, seed=5, trials=100)
    b = random_word_divergence_test(SEXP, 1 + 1j, p, seed=5, trials=100)
    assert a == b


def test_params_validation():
    with pytest.raises(ValueError):
        EscapeParams(R=10)
    with pytest.raises(ValueError):
        EscapeParams(N=5)
    with pytest.raises(ValueError):
        EscapeParams(L=0)
    with pytest.raises(ValueError):
        EscapeParams(m=0)
    with pytest.raises(ValueError):
        EscapeParams(N=10, m=10)


def test_indeterminate_pixels_enter_grid():
    p = EscapeParams(R=1e10, N=10, m=3)
    codes, _ = word_outcome_codes(S1, (0,), np.array([1.07 + 0j]), p)
    assert codes[0] == INDETERMINATE_CODE
    cls = classify_points_semigroup(S1, np.array([1.07 + 0j]), EscapeParams(R=1e10, N=10, L=1, m=3))
    assert cls[0] == PixelClass.INDETERMINATE


def test_cyclic_reduction_grids_bit_identical():
    # words of a cyclic semigroup are iterates of the one generator, so
    # deeper word budgets cannot change any pixel class
    g = GridSpec(-2, 2, -2, 2, 120, 120)
    deep = approximate_escaping_set(S1, g, EscapeParams(R=1e10, N=100, L=3, m=3))
    shallow = approximate_escaping_set(S1, g, EscapeParams(R=1e10, N=100, L=1, m=3))
    assert np.array_equal(deep.classes, shallow.classes)


def test_escaped_outcome_invariant_against_direct_iteration():
    # whenever the kernel reports Escaped(k), direct re-iteration must show
    # |z_k| > R and non-decreasing magnitudes for the next m steps
    from semidyn.semigroup import eval_word_array

    p = EscapeParams(R=1e10, N=60, m=3)
    rng = np.random.default_rng(31)
    pts = rng.uniform(-2.5, 2.5, 300) + 1j * rng.uniform(-2.5, 2.5, 300)
    for w in [(0,), (0, 1), (1, 0, 0)]:
        codes, steps = word_outcome_codes(SEXP, w, pts, p)
        esc_idx = np.flatnonzero(codes == ESCAPED)[:40]
        for k in esc_idx:
            z = np.array([pts[k]])
            mags = [abs(z[0])]
            for _ in range(int(steps[k]) + p.m):
                z = eval_word_array(SEXP, w, z)
                mags.append(abs(complex(z[0])))
            assert mags[steps[k]] > p.R
            tail = mags[steps[k] : steps[k] + p.m + 1]
            for a, b in zip(tail, tail[1:]):
                assert b >= a or not math.isfinite(b)


def test_rational_semantics_rejected_for_non_entire_stub():
    from semidyn.escape import RationalGeneratorsRejectedError
    from semidyn.maps import MapDescriptor
    from dataclasses import dataclass

    @dataclass(frozen=True)
    class NotEntire(MapDescriptor):
        @property
        def is_entire(self):
            return False

    stub = SemigroupSpec((NotEntire(),))
    with pytest.raises(RationalGeneratorsRejectedError):
        classify_point_semigroup(stub, 0j, EscapeParams())
