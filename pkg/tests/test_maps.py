import cmath
import math

import numpy as np
import pytest

from semidyn.maps import (
    OVERFLOW,
    AffineExp,
    AllSamplesOverflowedError,
    ExpAffine,
    ParseError,
    PowerQuotient,
    SampleSpec,
    SineAffine,
    SingularValueNote,
    Tchebyshev,
    UnsupportedMapError,
    ZeroArgumentError,
    commutator_defect,
    eval_map,
    eval_map_array,
    inverse_branches,
    is_overflow,
    parse_map,
    render_map,
    tchebyshev_coeffs,
)

CATALOG = [
    PowerQuotient(2, 1),
    PowerQuotient(2, 2),
    PowerQuotient(3, 1 + 1j),
    Tchebyshev(2),
    Tchebyshev(3),
    ExpAffine(1, 0),
    ExpAffine(-1, 0),
    ExpAffine(0.3, 1 - 2j),
    AffineExp(0.25, 0.5j),
    SineAffine(0.5, 0),
    SineAffine(0.5, 2 * math.pi),
    SineAffine(-1, 2 * math.pi, -1),
]


def test_eval_fixed_points():
    assert eval_map(PowerQuotient(2, 1), 1 + 0j) == 1 + 0j
    assert eval_map(PowerQuotient(2, 2), 2 + 0j) == 2 + 0j
    assert eval_map(SineAffine(0.5, 0), 0j) == 0j


def test_eval_matches_direct_formulas():
    zs = [0.3 + 0.7j, -1.2 + 0.1j, 2.0 - 0.5j]
    for z in zs:
        assert eval_map(PowerQuotient(2, 2), z) == pytest.approx(z * z / 2)
        assert eval_map(ExpAffine(1, 0), z) == pytest.approx(cmath.exp(z))
        assert eval_map(AffineExp(0.25, 0.5j), z) == pytest.approx(z + 0.25 * cmath.exp(z) + 0.5j)
        assert eval_map(SineAffine(0.5, 1.0, -1), z) == pytest.approx(-(z + 0.5 * cmath.sin(z)) + 1.0)


def test_tchebyshev_coeffs_small():
    assert tchebyshev_coeffs(0) == [1]
    assert tchebyshev_coeffs(1) == [0, 1]
    # T_2 = 2 z T_1 - T_0 = 2z^2 - 1, T_3 = 2 z T_2 - T_1 = 4z^3 - 3z
    assert tchebyshev_coeffs(2) == [-1, 0, 2]
    assert tchebyshev_coeffs(3) == [0, -3, 0, 4]


def test_tchebyshev_eval_matches_coeffs():
    for n in (2, 3, 5, 8):
        coeffs = tchebyshev_coeffs(n)
        for z in (0.3 + 0.2j, -0.9 + 0j, 0.5 - 0.5j):
            direct = sum(c * z**k for k, c in enumerate(coeffs))
            assert eval_map(Tchebyshev(n), z) == pytest.approx(direct, rel=1e-12, abs=1e-12)


def test_tchebyshev_semigroup_property():
    # T_m(T_n(z)) = T_{mn}(z): the testable form of the abelian claim
    pts = 2 * np.random.default_rng(5).random(100) - 1 + 0j
    t2 = eval_map_array(Tchebyshev(2), pts)
    lhs = eval_map_array(Tchebyshev(3), t2)
    rhs = eval_map_array(Tchebyshev(6), pts)
    assert np.max(np.abs(lhs - rhs)) < 1e-9


def test_overflow_guard_and_sentinel():
    z = eval_map(ExpAffine(1, 0), 400 + 0j)  # e^400 ~ 5e173 crosses the guard
    assert is_overflow(z)
    assert z == OVERFLOW
    # once overflowed, stays overflowed through any map
    for m in CATALOG:
        assert is_overflow(eval_map(m, OVERFLOW))
    assert not is_overflow(eval_map(ExpAffine(1, 0), 300 + 0j))


def test_inverse_branches_examples():
    roots = inverse_branches(PowerQuotient(2, 1), 4 + 0j)
    assert sorted(np.round(np.asarray(roots), 12).tolist(), key=lambda z: z.real) == [-2, 2]
    roots = inverse_branches(PowerQuotient(2, 2), 2 + 0j)  # z^2/2 = 2 -> z = +-2
    assert sorted(np.round(np.asarray(roots), 12).tolist(), key=lambda z: z.real) == [-2, 2]
    roots = inverse_branches(PowerQuotient(2, 1), -1 + 0j)
    assert sorted(np.round(np.asarray(roots), 12).tolist(), key=lambda z: z.imag) == [-1j, 1j]


def test_inverse_branches_errors():
    with pytest.raises(UnsupportedMapError):
        inverse_branches(Tchebyshev(2), 1 + 0j)
    with pytest.raises(ZeroArgumentError):
        inverse_branches(PowerQuotient(2, 1), 0j)


@pytest.mark.parametrize("m", [PowerQuotient(2, 1), PowerQuotient(2, 2), PowerQuotient(3, 1 + 1j)])
def test_inverse_round_trip_annulus(m):
    rng = np.random.default_rng(17)
    mod = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 10000))
    arg = rng.uniform(-np.pi, np.pi, 10000)
    ws = mod * np.exp(1j * arg)
    for w in ws[:10000]:
        for z in inverse_branches(m, complex(w)):
            assert abs(eval_map(m, z) - w) <= 1e-12 * (1 + abs(w))


def test_branch_count_and_distinctness():
    for m in (PowerQuotient(2, 1), PowerQuotient(3, 1 + 1j), PowerQuotient(5, -2)):
        roots = inverse_branches(m, 0.7 - 0.2j)
        assert len(roots) == m.d
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                assert abs(roots[a] - roots[b]) > 1e-12


def test_commutator_symmetry_exact():
    s = SampleSpec(center=0, radius=1.5, count=500, seed=3)
    pairs = [
        (PowerQuotient(2, 1), PowerQuotient(2, 2)),
        (Tchebyshev(2), Tchebyshev(3)),
        (ExpAffine(1, 0), ExpAffine(-1, 0)),
    ]
    for f, g in pairs:
        assert commutator_defect(f, g, s) == commutator_defect(g, f, s)


def test_commutator_examples():
    s1 = SampleSpec(center=0, radius=1.0, count=1000, seed=9)
    defect, skipped = commutator_defect(Tchebyshev(2), Tchebyshev(3), s1)
    assert defect < 1e-12 and skipped == 0
    s15 = SampleSpec(center=0, radius=1.5, count=1000, seed=9)
    defect, _ = commutator_defect(PowerQuotient(2, 1), PowerQuotient(2, 2), s15)
    # f(g(z)) = z^4/4, g(f(z)) = z^4/2 differ by |z|^4/4
    assert defect > 0.1
    for m in CATALOG[:6]:
        defect, _ = commutator_defect(m, m, s1)
        assert defect == 0.0


def test_commutator_all_overflow():
    s = SampleSpec(center=500, radius=1.0, count=10, seed=1)
    with pytest.raises(AllSamplesOverflowedError):
        commutator_defect(ExpAffine(1, 0), ExpAffine(1, 0), s)


def test_parse_examples():
    assert parse_map("power d=2 b=1") == PowerQuotient(2, 1)
    assert parse_map("tcheb n=3") == Tchebyshev(3)
    m = parse_map("sine gamma=0.5 c=6.283185307 s=+")
    assert m == SineAffine(0.5, 6.283185307, 1)
    assert parse_map("exp gamma=1 c=0-2.5i") == ExpAffine(1, -2.5j)
    assert parse_map("affexp gamma=0.25 c=1+1i") == AffineExp(0.25, 1 + 1j)


def test_parse_render_round_trip():
    for m in CATALOG:
        assert parse_map(render_map(m)) == m


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_map("poly d=2 b=1")
    assert exc.value.position == 1
    with pytest.raises(ParseError) as exc:
        parse_map("power d=2 q=1")
    assert exc.value.position == 11
    with pytest.raises(ParseError):
        parse_map("power d=2")  # missing b
    with pytest.raises(ParseError):
        parse_map("sine gamma=0.5 c=0 s=2")
    with pytest.raises(ParseError):
        parse_map("power d=2 b=zebra")


def test_descriptor_validation():
    with pytest.raises(ValueError):
        PowerQuotient(1, 1)
    with pytest.raises(ValueError):
        PowerQuotient(2, 0)
    with pytest.raises(ValueError):
        Tchebyshev(1)
    with pytest.raises(ValueError):
        Tchebyshev(33)
    with pytest.raises(ValueError):
        ExpAffine(0, 1)
    with pytest.raises(ValueError):
        SineAffine(0.5, 0, 2)


def test_metadata_flags():
    assert PowerQuotient(2, 1).is_rational and PowerQuotient(2, 1).is_entire
    assert Tchebyshev(2).is_rational and Tchebyshev(2).is_entire
    for m in (ExpAffine(1, 0), AffineExp(1, 0), SineAffine(1, 0)):
        assert m.is_entire and not m.is_rational
    assert ExpAffine(1, 0).finite_type_claimed
    assert not SineAffine(1, 0).finite_type_claimed
    note = SingularValueNote(ExpAffine(1, 0), "asymptotic value 0")
    assert note.note


def test_exp_family_pair_defect_measured_not_asserted():
    # the catalog lists <e^(g z), e^(g z + 2 pi i / g)> with 0 < g < 1/e as a
    # commuting pair; the library measures the defect and reports it rather
    # than hardcoding an expected value
    gamma = 0.3
    f = ExpAffine(gamma, 0)
    g = ExpAffine(gamma, 2j * math.pi / gamma)
    defect, skipped = commutator_defect(f, g, SampleSpec(center=0, radius=1.0, count=1000, seed=4))
    assert math.isfinite(defect) and defect >= 0.0
    assert 0 <= skipped < 1000
    print(f"measured defect for the exponential pair (gamma={gamma}): {defect:.6g} (skipped {skipped})")
