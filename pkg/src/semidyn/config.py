"""Scene configuration: flat INI-style blocks with key = value lines.

    [semigroup]
    label = annulus
    generator = power d=2 b=1
    generator = power d=2 b=2
    word_depth = 3            ; optional, overrides escape L

    [grid]
    re_min = -3.0
    re_max = 3.0
    im_min = -3.0
    im_max = 3.0
    width = 600
    height = 600

    [escape]
    R = 1e10
    N = 200
    L = 3
    m = 3

    [julia]
    boundary_band = 2

    [ifs]
    count = 100000
    burn_in = 100

    [thresholds]              ; optional, per-check overrides
    annulus_reference = 0.01

    [output]
    seed = 42
    image = out.pgm
    csv = cloud.csv
    report = report.txt

`generator` may repeat; order matters. Threshold keys name checks:
forward_invariance, backward_invariance, intersection_identity,
union_identity, abelian_equalities, inclusions, annulus_reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .escape import EscapeParams
from .grid import GridSpec
from .julia import JuliaParams
from .maps import parse_map, render_map
from .semigroup import SemigroupSpec

DEFAULT_THRESHOLDS = {
    "forward_invariance": 0.01,
    "backward_invariance": 0.02,
    "intersection_identity": 0.02,
    "union_identity": 0.02,
    "abelian_equalities": 0.03,
    "inclusions": 0.02,
    "annulus_reference": 0.01,
}

_THRESHOLD_KEYS = tuple(DEFAULT_THRESHOLDS)


class ConfigError(ValueError):
    pass


@dataclass
class SceneConfig:
    semigroup: SemigroupSpec
    grid: GridSpec
    escape: EscapeParams = EscapeParams()
    boundary_band: int = 2
    word_depth: int | None = None
    ifs_count: int = 10000
    ifs_burn_in: int = 50
    seed: int = 0
    thresholds: dict = field(default_factory=dict)
    image_path: str | None = None
    csv_path: str | None = None
    report_path: str | None = None

    @property
    def effective_escape(self) -> EscapeParams:
        if self.word_depth is None:
            return self.escape
        return EscapeParams(R=self.escape.R, N=self.escape.N, L=self.word_depth, m=self.escape.m)

    @property
    def julia(self) -> JuliaParams:
        return JuliaParams(escape=self.effective_escape, boundary_band=self.boundary_band)

    def threshold(self, name: str) -> float:
        return self.thresholds.get(name, DEFAULT_THRESHOLDS[name])


def _parse_blocks(text: str) -> dict[str, list[tuple[str, str]]]:
    blocks: dict[str, list[tuple[str, str]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            blocks.setdefault(current, [])
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw!r}")
        if current is None:
            raise ConfigError(f"line {lineno}: key outside any [block]")
        key, _, value = line.partition("=")
        blocks[current].append((key.strip(), value.strip()))
    return blocks


def _only(pairs: list[tuple[str, str]], block: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for k, v in pairs:
        if k in out:
            raise ConfigError(f"duplicate key {k!r} in [{block}]")
        out[k] = v
    return out


def _get(d: dict[str, str], block: str, key: str, conv, default=None):
    if key not in d:
        if default is not None:
            return default
        raise ConfigError(f"missing key {key!r} in [{block}]")
    try:
        return conv(d.pop(key))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"[{block}] {key}: {exc}") from None


def parse_scene_config(text: str) -> SceneConfig:
    blocks = _parse_blocks(text)
    unknown = set(blocks) - {"semigroup", "grid", "escape", "julia", "ifs", "thresholds", "output"}
    if unknown:
        raise ConfigError(f"unknown block(s): {', '.join(sorted(unknown))}")
    if "semigroup" not in blocks or "grid" not in blocks:
        raise ConfigError("config needs [semigroup] and [grid] blocks")

    gens = [parse_map(v) for k, v in blocks["semigroup"] if k == "generator"]
    if not gens:
        raise ConfigError("[semigroup] needs at least one generator line")
    rest = _only([(k, v) for k, v in blocks["semigroup"] if k != "generator"], "semigroup")
    label = rest.pop("label", "")
    word_depth = int(rest.pop("word_depth")) if "word_depth" in rest else None
    if rest:
        raise ConfigError(f"unknown key(s) in [semigroup]: {', '.join(sorted(rest))}")
    spec = SemigroupSpec(tuple(gens), label=label)

    gd = _only(blocks["grid"], "grid")
    grid = GridSpec(
        re_min=_get(gd, "grid", "re_min", float),
        re_max=_get(gd, "grid", "re_max", float),
        im_min=_get(gd, "grid", "im_min", float),
        im_max=_get(gd, "grid", "im_max", float),
        width=_get(gd, "grid", "width", int),
        height=_get(gd, "grid", "height", int),
    )
    if gd:
        raise ConfigError(f"unknown key(s) in [grid]: {', '.join(sorted(gd))}")

    ed = _only(blocks.get("escape", []), "escape")
    escape = EscapeParams(
        R=_get(ed, "escape", "R", float, EscapeParams().R),
        N=_get(ed, "escape", "N", int, EscapeParams().N),
        L=_get(ed, "escape", "L", int, EscapeParams().L),
        m=_get(ed, "escape", "m", int, EscapeParams().m),
    )
    if ed:
        raise ConfigError(f"unknown key(s) in [escape]: {', '.join(sorted(ed))}")

    jd = _only(blocks.get("julia", []), "julia")
    boundary_band = _get(jd, "julia", "boundary_band", int, 2)
    if jd:
        raise ConfigError(f"unknown key(s) in [julia]: {', '.join(sorted(jd))}")

    fd = _only(blocks.get("ifs", []), "ifs")
    ifs_count = _get(fd, "ifs", "count", int, 10000)
    ifs_burn_in = _get(fd, "ifs", "burn_in", int, 50)
    if fd:
        raise ConfigError(f"unknown key(s) in [ifs]: {', '.join(sorted(fd))}")

    td = _only(blocks.get("thresholds", []), "thresholds")
    thresholds = {}
    for key in list(td):
        if key not in _THRESHOLD_KEYS:
            raise ConfigError(f"unknown threshold {key!r}")
        thresholds[key] = float(td.pop(key))

    od = _only(blocks.get("output", []), "output")
    seed = _get(od, "output", "seed", int, 0)
    image = od.pop("image", None)
    csv = od.pop("csv", None)
    report = od.pop("report", None)
    if od:
        raise ConfigError(f"unknown key(s) in [output]: {', '.join(sorted(od))}")

    return SceneConfig(
        semigroup=spec,
        grid=grid,
        escape=escape,
        boundary_band=boundary_band,
        word_depth=word_depth,
        ifs_count=ifs_count,
        ifs_burn_in=ifs_burn_in,
        seed=seed,
        thresholds=thresholds,
        image_path=image,
        csv_path=csv,
        report_path=report,
    )


def render_scene_config(cfg: SceneConfig) -> str:
    """Canonical text form; parse_scene_config inverts it on all fields."""
    lines = ["[semigroup]"]
    if cfg.semigroup.label:
        lines.append(f"label = {cfg.semigroup.label}")
    for g in cfg.semigroup.generators:
        lines.append(f"generator = {render_map(g)}")
    if cfg.word_depth is not None:
        lines.append(f"word_depth = {cfg.word_depth}")
    g = cfg.grid
    lines += [
        "",
        "[grid]",
        f"re_min = {g.re_min!r}",
        f"re_max = {g.re_max!r}",
        f"im_min = {g.im_min!r}",
        f"im_max = {g.im_max!r}",
        f"width = {g.width}",
        f"height = {g.height}",
        "",
        "[escape]",
        f"R = {cfg.escape.R!r}",
        f"N = {cfg.escape.N}",
        f"L = {cfg.escape.L}",
        f"m = {cfg.escape.m}",
        "",
        "[julia]",
        f"boundary_band = {cfg.boundary_band}",
        "",
        "[ifs]",
        f"count = {cfg.ifs_count}",
        f"burn_in = {cfg.ifs_burn_in}",
    ]
    if cfg.thresholds:
        lines += ["", "[thresholds]"]
        lines += [f"{k} = {v!r}" for k, v in sorted(cfg.thresholds.items())]
    lines += ["", "[output]", f"seed = {cfg.seed}"]
    for key, value in (("image", cfg.image_path), ("csv", cfg.csv_path), ("report", cfg.report_path)):
        if value is not None:
            lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def load_scene_config(path: str) -> SceneConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return parse_scene_config(text)
