"""Closed catalog of holomorphic generator maps.

Five parameterized families cover every semigroup this library handles:

    power  d b      z -> z^d / b            (rational, polynomial)
    tcheb  n        z -> T_n(z)             (rational, polynomial)
    exp    gamma c  z -> e^(gamma z + c)    (transcendental entire)
    affexp gamma c  z -> z + gamma e^z + c  (transcendental entire)
    sine   gamma c s z -> s (z + gamma sin z) + c

A closed catalog (rather than a general expression evaluator) is what
lets inverse branches and overflow behavior be reasoned about per family.

Overflow policy: any value with a non-finite component or a component
beyond 1e150 collapses to the sentinel OVERFLOW. The sentinel is a value,
not an error; downstream classifiers treat it as escape evidence.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np

from .rng import sample_disc

OVERFLOW_GUARD = 1e150
OVERFLOW = complex(math.inf, math.inf)

MAX_TCHEB_DEGREE = 32  # point recurrence is the evaluation route; keep it short


class UnsupportedMapError(ValueError):
    """Requested operation is not defined for this map family."""


class ZeroArgumentError(ValueError):
    """Inverse branches requested at the critical value 0."""


class AllSamplesOverflowedError(ArithmeticError):
    """Every sample point overflowed; the defect is not measurable there."""


class ParseError(ValueError):
    def __init__(self, position: int, message: str):
        super().__init__(f"parse error at column {position}: {message}")
        self.position = position


def _coerce_complex(obj, value) -> complex:
    object.__setattr__(obj, value, complex(getattr(obj, value)))
    return getattr(obj, value)


@dataclass(frozen=True)
class MapDescriptor:
    """Base record for one catalog map. Immutable and shareable."""

    @property
    def is_entire(self) -> bool:
        return True  # every catalog family is entire

    @property
    def is_rational(self) -> bool:
        return False

    @property
    def finite_type_claimed(self) -> bool:
        return False


@dataclass(frozen=True)
class PowerQuotient(MapDescriptor):
    """z -> z^d / b with integer d >= 2 and b != 0."""

    d: int
    b: complex

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"power map needs integer d >= 2, got {self.d!r}")
        if _coerce_complex(self, "b") == 0:
            raise ValueError("power map needs b != 0")

    @property
    def is_rational(self) -> bool:
        return True

    @property
    def finite_type_claimed(self) -> bool:
        return True  # polynomial: finitely many critical values


@dataclass(frozen=True)
class Tchebyshev(MapDescriptor):
    """z -> T_n(z), recurrence T_0 = 1, T_1 = z, T_{k+1} = 2 z T_k - T_{k-1}."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 2 <= self.n <= MAX_TCHEB_DEGREE:
            raise ValueError(f"tcheb map needs integer 2 <= n <= {MAX_TCHEB_DEGREE}, got {self.n!r}")

    @property
    def is_rational(self) -> bool:
        return True

    @property
    def finite_type_claimed(self) -> bool:
        return True


@dataclass(frozen=True)
class ExpAffine(MapDescriptor):
    """z -> e^(gamma z + c) with gamma != 0."""

    gamma: complex
    c: complex

    def __post_init__(self):
        if _coerce_complex(self, "gamma") == 0:
            raise ValueError("exp map needs gamma != 0")
        _coerce_complex(self, "c")

    @property
    def finite_type_claimed(self) -> bool:
        return True  # singular values: the asymptotic value 0 only


@dataclass(frozen=True)
class AffineExp(MapDescriptor):
    """z -> z + gamma e^z + c with gamma != 0."""

    gamma: complex
    c: complex

    def __post_init__(self):
        if _coerce_complex(self, "gamma") == 0:
            raise ValueError("affexp map needs gamma != 0")
        _coerce_complex(self, "c")


@dataclass(frozen=True)
class SineAffine(MapDescriptor):
    """z -> s (z + gamma sin z) + c with gamma != 0 and sign s in {+1, -1}."""

    gamma: complex
    c: complex
    s: int = 1

    def __post_init__(self):
        if _coerce_complex(self, "gamma") == 0:
            raise ValueError("sine map needs gamma != 0")
        _coerce_complex(self, "c")
        if self.s not in (1, -1):
            raise ValueError(f"sine map needs s in {{+1, -1}}, got {self.s!r}")


@dataclass(frozen=True)
class SingularValueNote:
    """Free-text record of known critical/asymptotic/singular value facts.

    Documentation only; nothing in the library computes these sets.
    """

    map: MapDescriptor
    note: str


CATALOG_NOTES = (
    SingularValueNote(PowerQuotient(2, 1), "polynomial; critical value 0, finitely many singular values"),
    SingularValueNote(Tchebyshev(2), "polynomial; critical values in {-1, 1}, finitely many singular values"),
    SingularValueNote(ExpAffine(1, 0), "exponential; asymptotic value 0, singular value set {0} (finite type)"),
    SingularValueNote(AffineExp(1, 0), "critical values at log(-1/gamma) + 2 pi i k; infinitely many"),
    SingularValueNote(SineAffine(1, 0), "critical values along a lattice of arccos branches; unbounded set"),
)


def is_overflow(z) -> np.ndarray | bool:
    """True where a value is the overflow sentinel (or otherwise unusable).

    Componentwise `not (|x| <= guard)`: NaN and infinity both fail the
    comparison, so one predicate covers non-finite and out-of-range alike.
    """
    if isinstance(z, np.ndarray):
        return ~((np.abs(z.real) <= OVERFLOW_GUARD) & (np.abs(z.imag) <= OVERFLOW_GUARD))
    return not (abs(z.real) <= OVERFLOW_GUARD and abs(z.imag) <= OVERFLOW_GUARD)


def _guard(w: np.ndarray) -> np.ndarray:
    bad = is_overflow(w)
    if bad.any():
        w[bad] = OVERFLOW
    return w


def eval_map_array(m: MapDescriptor, z: np.ndarray) -> np.ndarray:
    """Apply one catalog map elementwise to a complex128 array.

    Overflowed inputs stay the sentinel; any intermediate beyond the guard
    collapses to the sentinel. Pure elementwise work: results do not depend
    on how the array is chunked across workers.
    """
    z = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        if isinstance(m, PowerQuotient):
            if m.d == 2:
                w = z * z
            elif m.d == 3:
                w = z * z * z
            else:
                w = z**m.d
            return _guard(_guard(w) / m.b)
        if isinstance(m, Tchebyshev):
            t_prev = np.ones_like(z)
            t_cur = z.copy()
            for _ in range(m.n - 1):
                t_prev, t_cur = t_cur, _guard(2.0 * z * t_cur - t_prev)
            return t_cur
        if isinstance(m, ExpAffine):
            w = _guard(m.gamma * z + m.c)
            return _guard(np.exp(w))
        if isinstance(m, AffineExp):
            w = _guard(np.exp(z))
            return _guard(z + m.gamma * w + m.c)
        if isinstance(m, SineAffine):
            w = _guard(np.sin(z))
            return _guard(m.s * (z + m.gamma * w) + m.c)
    raise UnsupportedMapError(f"unknown map kind {type(m).__name__}")


def eval_map(m: MapDescriptor, z: complex) -> complex:
    """Scalar eval; same arithmetic as the array path."""
    return complex(eval_map_array(m, np.array([z], dtype=np.complex128))[0])


def tchebyshev_coeffs(n: int) -> list[int]:
    """Coefficients of T_n, ascending powers, exact integers.

    Exposed for testing only; evaluation goes through the point recurrence.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    prev = [1]
    if n == 0:
        return prev
    cur = [0, 1]
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        for k, c in enumerate(prev):
            nxt[k] -= c
        prev, cur = cur, nxt
    return cur


def inverse_branches(m: MapDescriptor, w: complex) -> list[complex]:
    """All d solutions z of z^d / b = w, i.e. the d-th roots of b*w.

    Only the power-quotient family has catalog inverse branches. Branch k
    carries phase (arg(b*w) + 2 pi k) / d, so the ordering is deterministic.
    """
    if not isinstance(m, PowerQuotient):
        raise UnsupportedMapError(f"inverse branches only exist for power maps, not {type(m).__name__}")
    w = complex(w)
    if w == 0:
        raise ZeroArgumentError("w = 0 is the critical value; no inverse branch")
    bw = m.b * w
    r = abs(bw) ** (1.0 / m.d)
    theta = cmath.phase(bw)
    return [r * cmath.exp(1j * (theta + 2.0 * math.pi * k) / m.d) for k in range(m.d)]


@dataclass(frozen=True)
class SampleSpec:
    """Disc sampling plan: count points uniform in disc(center, radius)."""

    center: complex
    radius: float
    count: int
    seed: int

    def __post_init__(self):
        _coerce_complex(self, "center")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.count < 1:
            raise ValueError("count must be >= 1")

    def points(self) -> np.ndarray:
        return sample_disc(self.center, self.radius, self.count, self.seed)


def commutator_defect(f: MapDescriptor, g: MapDescriptor, sample: SampleSpec) -> tuple[float, int]:
    """Max relative defect |f(g(z)) - g(f(z))| over sampled z, plus skip count.

    The defect is normalized by 1 + max(|f(g(z))|, |g(f(z))|); the symmetric
    denominator makes the measurement exactly invariant under swapping f
    and g. Samples where either composition overflows are skipped.
    """
    z = sample.points()
    fg = eval_map_array(f, eval_map_array(g, z))
    gf = eval_map_array(g, eval_map_array(f, z))
    skip = is_overflow(fg) | is_overflow(gf)
    skipped = int(skip.sum())
    if skipped == z.size:
        raise AllSamplesOverflowedError("every sample overflowed under the compositions")
    ok = ~skip
    num = np.abs(fg[ok] - gf[ok])
    den = 1.0 + np.maximum(np.abs(fg[ok]), np.abs(gf[ok]))
    return float(np.max(num / den)), skipped


# --- textual form -----------------------------------------------------------
#
# One map per string:
#   power d=<int> b=<complex>
#   tcheb n=<int>
#   exp gamma=<complex> c=<complex>
#   affexp gamma=<complex> c=<complex>
#   sine gamma=<complex> c=<complex> s=<+|->
# where <complex> is `a`, `a+bi`, or `a-bi` in decimal notation.

MAP_GRAMMAR = """\
power d=<int> b=<complex>
tcheb n=<int>
exp gamma=<complex> c=<complex>
affexp gamma=<complex> c=<complex>
sine gamma=<complex> c=<complex> s=<+|->
<complex> := a | a+bi | a-bi  (decimal notation)
"""

_FAMILY_KEYS = {
    "power": ("d", "b"),
    "tcheb": ("n",),
    "exp": ("gamma", "c"),
    "affexp": ("gamma", "c"),
    "sine": ("gamma", "c", "s"),
}

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^(?P<re>{_NUM})(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$")
_REAL_RE = re.compile(rf"^{_NUM}$")


def parse_complex(text: str, position: int = 1) -> complex:
    m = _COMPLEX_RE.match(text)
    if m:
        return complex(float(m.group("re")), float(m.group("im")))
    if _REAL_RE.match(text):
        return complex(float(text), 0.0)
    raise ParseError(position, f"expected complex literal (a, a+bi, a-bi), got {text!r}")


def render_complex(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_map(spec: str) -> MapDescriptor:
    """Parse one catalog map from its textual form (see MAP_GRAMMAR)."""
    tokens = [(t.start() + 1, t.group()) for t in re.finditer(r"\S+", spec)]
    if not tokens:
        raise ParseError(1, "expected a map family keyword (power, tcheb, exp, affexp, sine)")
    pos0, family = tokens[0]
    if family not in _FAMILY_KEYS:
        raise ParseError(pos0, f"expected one of power/tcheb/exp/affexp/sine, got {family!r}")
    expected = _FAMILY_KEYS[family]
    fields: dict[str, tuple[int, str]] = {}
    for pos, tok in tokens[1:]:
        if "=" not in tok:
            raise ParseError(pos, f"expected key=value, got {tok!r}")
        key, _, value = tok.partition("=")
        if key not in expected:
            raise ParseError(pos, f"unexpected key {key!r} for {family} (expected {', '.join(expected)})")
        if key in fields:
            raise ParseError(pos, f"duplicate key {key!r}")
        fields[key] = (pos + len(key) + 1, value)
    for key in expected:
        if key not in fields:
            raise ParseError(len(spec) + 1, f"missing key {key!r} for {family}")

    def intval(key: str) -> int:
        pos, raw = fields[key]
        try:
            return int(raw)
        except ValueError:
            raise ParseError(pos, f"expected integer for {key}, got {raw!r}") from None

    def cval(key: str) -> complex:
        pos, raw = fields[key]
        return parse_complex(raw, pos)

    try:
        if family == "power":
            return PowerQuotient(intval("d"), cval("b"))
        if family == "tcheb":
            return Tchebyshev(intval("n"))
        if family == "exp":
            return ExpAffine(cval("gamma"), cval("c"))
        if family == "affexp":
            return AffineExp(cval("gamma"), cval("c"))
        pos, raw = fields["s"]
        if raw not in ("+", "-"):
            raise ParseError(pos, f"expected s=+ or s=-, got {raw!r}")
        return SineAffine(cval("gamma"), cval("c"), 1 if raw == "+" else -1)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(pos0, str(exc)) from None


def render_map(m: MapDescriptor) -> str:
    """Canonical textual form; parse_map(render_map(m)) == m."""
    if isinstance(m, PowerQuotient):
        return f"power d={m.d} b={render_complex(m.b)}"
    if isinstance(m, Tchebyshev):
        return f"tcheb n={m.n}"
    if isinstance(m, ExpAffine):
        return f"exp gamma={render_complex(m.gamma)} c={render_complex(m.c)}"
    if isinstance(m, AffineExp):
        return f"affexp gamma={render_complex(m.gamma)} c={render_complex(m.c)}"
    if isinstance(m, SineAffine):
        return f"sine gamma={render_complex(m.gamma)} c={render_complex(m.c)} s={'+' if m.s == 1 else '-'}"
    raise UnsupportedMapError(f"unknown map kind {type(m).__name__}")
