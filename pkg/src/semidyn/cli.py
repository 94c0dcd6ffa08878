"""Command-line front end.

Subcommands, one per core algorithm:

    render-julia    --config scene.cfg --out j.pgm
    render-escaping --config scene.cfg --out i.pgm
    sample-ifs      --config scene.cfg --out cloud.csv [--seed S]
    check           --config scene.cfg --suite all --report r.txt
    catalog

Exit codes: 0 success, 1 a non-informational check failed, 2 usage or
config error. `--threads` (or SEMIDYN_THREADS) only changes scheduling;
outputs are byte-identical for any thread count.
"""

from __future__ import annotations

import argparse
import os
import sys

from .checks import (
    CheckReport,
    annulus_reference_check,
    check_abelian_equalities,
    check_backward_invariance,
    check_forward_invariance,
    check_intersection_identity,
    check_inclusions,
    check_union_identity,
    compute_grid_bundle,
)
from .config import ConfigError, SceneConfig, load_scene_config
from .escape import approximate_escaping_set
from .grid import PixelClass
from .io import write_pgm, write_pointcloud_csv, write_report
from .julia import approximate_julia_union, backward_ifs_sample, fatou_indicator
from .maps import MAP_GRAMMAR, PowerQuotient
from .semigroup import BudgetExceededError

SUITES = ("invariance", "identities", "references", "all")


def _resolve_threads(value: int | None) -> int:
    if value is None:
        value = int(os.environ.get("SEMIDYN_THREADS", "0") or "0")
    if value == 0:
        return os.cpu_count() or 1
    return max(1, value)


def _run_suite(cfg: SceneConfig, suite: str, threads: int) -> list[CheckReport]:
    spec = cfg.semigroup
    grid = cfg.grid
    jp = cfg.julia
    reports: list[CheckReport] = []

    if suite in ("invariance", "identities", "all"):
        julia = approximate_julia_union(spec, grid, jp, threads)
        fatou = fatou_indicator(julia)
        escaping = approximate_escaping_set(spec, grid, jp.escape, threads)
        band = cfg.boundary_band

    if suite in ("invariance", "all"):
        thr_f = cfg.threshold("forward_invariance")
        thr_b = cfg.threshold("backward_invariance")
        reports.append(check_forward_invariance(fatou, PixelClass.FATOU, spec, thr_f, band))
        reports.append(check_forward_invariance(escaping, PixelClass.ESCAPING, spec, thr_f, band))
        reports.append(check_forward_invariance(julia, PixelClass.JULIA, spec, thr_f, band))
        reports.append(check_backward_invariance(julia, PixelClass.JULIA, spec, thr_b, band))
        reports.append(check_backward_invariance(fatou, PixelClass.FATOU, spec, thr_b, band))
        reports.append(check_backward_invariance(escaping, PixelClass.ESCAPING, spec, thr_b, band))

    if suite in ("identities", "all"):
        thr_i = cfg.threshold("intersection_identity")
        reports.append(check_intersection_identity(fatou, spec, PixelClass.FATOU, thr_i, band))
        reports.append(check_intersection_identity(escaping, spec, PixelClass.ESCAPING, thr_i, band))
        reports.append(check_union_identity(julia, spec, cfg.threshold("union_identity"), band))
        reports.append(
            check_abelian_equalities(spec, grid, jp, cfg.threshold("abelian_equalities"), band, threads=threads)
        )
        bundle = compute_grid_bundle(spec, grid, jp, word_depth=min(2, jp.word_depth), threads=threads)
        reports.append(check_inclusions(spec, bundle, cfg.threshold("inclusions"), band))

    if suite in ("references", "all"):
        gens = spec.generators
        applicable = (
            len(gens) == 2
            and all(isinstance(g, PowerQuotient) and g.d == 2 for g in gens)
            and gens[0].b == 1
            and abs(gens[1].b) > 1
        )
        if applicable:
            reports.append(
                annulus_reference_check(
                    gens[1].b, grid, jp, cfg.threshold("annulus_reference"), cfg.boundary_band, threads
                )
            )
        else:
            reports.append(
                CheckReport(
                    name="annulus-reference",
                    semigroup=spec.label,
                    params="skipped: semigroup is not <z^2, z^2/a> with |a| > 1",
                    residual=0.0,
                    threshold=cfg.threshold("annulus_reference"),
                    verdict="informational",
                )
            )
    return reports


def run_command(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="semidyn", description="holomorphic semigroup dynamics toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, needs_out: bool = False):
        p.add_argument("--config", required=True, help="scene config file")
        p.add_argument("--out", required=needs_out, help="output path")
        p.add_argument("--report", help="report path")
        p.add_argument("--seed", type=int, help="override [output] seed")
        p.add_argument("--threads", type=int, help="worker threads (0 = auto); never affects results")

    add_common(sub.add_parser("render-julia", help="write the Julia-band PGM mask"))
    add_common(sub.add_parser("render-escaping", help="write the escaping-candidate PGM mask"))
    add_common(sub.add_parser("sample-ifs", help="write a backward-IFS point cloud CSV"))
    pc = sub.add_parser("check", help="run a verification suite and write its report")
    add_common(pc)
    pc.add_argument("--suite", choices=SUITES, default="all")
    sub.add_parser("catalog", help="print the generator map grammar")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0

    if args.command == "catalog":
        print(MAP_GRAMMAR, end="")
        return 0

    try:
        cfg = load_scene_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        cfg.seed = args.seed
    threads = _resolve_threads(args.threads)

    try:
        if args.command == "render-julia":
            out = args.out or cfg.image_path
            if not out:
                print("config error: no output image path (--out or [output] image)", file=sys.stderr)
                return 2
            write_pgm(approximate_julia_union(cfg.semigroup, cfg.grid, cfg.julia, threads), out)
            print(f"wrote {out}")
            return 0
        if args.command == "render-escaping":
            out = args.out or cfg.image_path
            if not out:
                print("config error: no output image path (--out or [output] image)", file=sys.stderr)
                return 2
            write_pgm(approximate_escaping_set(cfg.semigroup, cfg.grid, cfg.effective_escape, threads), out)
            print(f"wrote {out}")
            return 0
        if args.command == "sample-ifs":
            out = args.out or cfg.csv_path
            if not out:
                print("config error: no output csv path (--out or [output] csv)", file=sys.stderr)
                return 2
            cloud = backward_ifs_sample(cfg.semigroup, cfg.ifs_count, cfg.ifs_burn_in, cfg.seed)
            write_pointcloud_csv(cloud, out)
            print(f"wrote {out} ({cloud.points.size} points)")
            return 0
        # check
        reports = _run_suite(cfg, args.suite, threads)
        report_path = args.report or cfg.report_path
        if report_path:
            write_report(reports, report_path)
        failed = [r for r in reports if r.verdict == "fail"]
        for r in reports:
            print(f"{r.verdict.upper():14s} {r.name} residual={r.residual:.3e} threshold={r.threshold:g}")
        print(f"suite={args.suite} checks={len(reports)} failed={len(failed)}")
        return 1 if failed else 0
    except (ValueError, BudgetExceededError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
