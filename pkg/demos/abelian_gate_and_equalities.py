"""Commutators decide how much classical dynamics survives in a semigroup.

When all generator pairs commute, the semigroup behaves like classical
single-map dynamics: Fatou/Julia/escaping sets become completely invariant
and collapse onto the sets of any single element. The gate here is
numerical: measure the commutator defect on sampled points and only trust
equalities when it vanishes. One catalog pair (the exponential family with
a 2*pi*i/gamma offset) is listed as commuting but measures a defect of
order one, so the library reports the number instead of assuming.
"""

import math

from semidyn import (
    EscapeParams,
    ExpAffine,
    GridSpec,
    JuliaParams,
    PowerQuotient,
    SampleSpec,
    SemigroupSpec,
    SineAffine,
    Tchebyshev,
    check_abelian_equalities,
    commutator_defect,
)

PAIRS = [
    ("Tchebyshev T2, T3", Tchebyshev(2), Tchebyshev(3), 1.0),
    ("sine pair (gamma=0.5, shift 2*pi)", SineAffine(0.5, 0), SineAffine(0.5, 2 * math.pi), 1.0),
    ("power pair z^2, z^2/2", PowerQuotient(2, 1), PowerQuotient(2, 2), 1.5),
    ("exp pair e^(0.3 z), offset 2*pi*i/0.3", ExpAffine(0.3, 0), ExpAffine(0.3, 2j * math.pi / 0.3), 1.0),
]


def main():
    print("commutator defects (max over 1000 sampled points):")
    for name, f, g, radius in PAIRS:
        sample = SampleSpec(center=0, radius=radius, count=1000, seed=20260810)
        defect, skipped = commutator_defect(f, g, sample)
        tag = "abelian" if defect < 1e-9 else "NOT abelian"
        print(f"  {name:42s} defect={defect:.3e} skipped={skipped:4d}  -> {tag}")

    print("\nJulia/escaping-set equalities for the Tchebyshev semigroup:")
    spec = SemigroupSpec((Tchebyshev(2), Tchebyshev(3)), label="tcheb23")
    grid = GridSpec(-2, 2, -2, 2, 300, 300)
    params = JuliaParams(escape=EscapeParams(R=1e10, N=200, L=3, m=3))
    rep = check_abelian_equalities(spec, grid, params)
    print(f"  verdict={rep.verdict} residual={rep.residual:.5f} ({rep.params})")

    print("\nsame check on the non-abelian power pair (gate must refuse):")
    spec = SemigroupSpec((PowerQuotient(2, 1), PowerQuotient(2, 2)), label="annulus2")
    rep = check_abelian_equalities(spec, grid, params)
    print(f"  verdict={rep.verdict} ({rep.params})")


if __name__ == "__main__":
    main()
