"""Command-line front end.

    qkd quandles list|verify
    qkd color KNOT --quandle N|all [--solver propagate|linear|both]
    qkd matrix build|verify|summary [--jobs N] [--out DIR] ...

Exit codes: 0 success, 1 verification or axiom failure, 2 usage error,
3 I/O error. Data output goes to stdout; progress and diagnostics to
stderr. The environment variable QKD_CATALOG overrides the catalog path.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .gauss import CatalogError, load_catalog
from .matrix import (
    PROFILE_MODES,
    ReferenceFormatError,
    SolverMismatchError,
    build_matrix,
    profile_all,
    progress_to_stderr,
    read_profiles_csv,
    summarize,
    verify_against_reference,
    write_matrix_csv,
    write_profiles_csv,
)
from .quandles import STANDARD_SIZES, standard_quandle_list, verify_quandle
from .solver import (
    Convention,
    DEFAULT_CONVENTION,
    UnsupportedQuandleError,
    build_system,
    count_colorings,
    count_colorings_linear,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3


@dataclass
class RunConfig:
    catalog_path: str | None = None  # None -> bundled data
    convention: Convention = DEFAULT_CONVENTION
    jobs: int = 1
    solver: str = "both"
    fmt: str = "csv"
    progress: bool = False

    @property
    def sep(self) -> str:
        return "\t" if self.fmt == "tsv" else ","


def _config(args) -> RunConfig:
    catalog = getattr(args, "catalog", None) or os.environ.get("QKD_CATALOG") or None
    return RunConfig(
        catalog_path=catalog,
        convention=Convention(getattr(args, "convention", DEFAULT_CONVENTION.value)),
        jobs=max(1, getattr(args, "jobs", 1)),
        solver=getattr(args, "solver", "both"),
        fmt=getattr(args, "format", "csv"),
        progress=getattr(args, "progress", False),
    )


def cmd_quandles(args) -> int:
    quandles = standard_quandle_list()
    if args.action == "list":
        for k, q in enumerate(quandles, start=1):
            print(f"{k}\t{q.name}\t{q.size}")
        return EXIT_OK
    failed = False
    for k, q in enumerate(quandles, start=1):
        report = verify_quandle(q)
        status = "ok" if report.passed else f"FAIL: {report.describe()}"
        print(f"{k}\t{q.name}\t{status}")
        failed = failed or not report.passed
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_color(args) -> int:
    cfg = _config(args)
    try:
        catalog = load_catalog(cfg.catalog_path)
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        entry = catalog.by_name(args.knot)
    except KeyError:
        print(f"error: unknown knot {args.knot!r}", file=sys.stderr)
        return EXIT_USAGE

    if args.quandle == "all":
        indices = range(1, 11)
    else:
        try:
            k = int(args.quandle)
        except ValueError:
            print(f"error: bad quandle index {args.quandle!r}", file=sys.stderr)
            return EXIT_USAGE
        if not 1 <= k <= 10:
            print(f"error: quandle index {k} out of 1..10", file=sys.stderr)
            return EXIT_USAGE
        indices = range(k, k + 1)

    quandles = standard_quandle_list()
    status = EXIT_OK
    for k in indices:
        q = quandles[k - 1]
        counts = {}
        if cfg.solver in ("propagate", "both"):
            counts["propagation"] = count_colorings(
                build_system(entry.code, cfg.convention), q
            )
        if cfg.solver in ("linear", "both"):
            try:
                counts["linear"] = count_colorings_linear(entry.code, q, cfg.convention)
            except UnsupportedQuandleError as exc:
                if cfg.solver == "linear":
                    print(f"warning: {exc}; falling back to propagation", file=sys.stderr)
                    counts["propagation"] = count_colorings(
                        build_system(entry.code, cfg.convention), q
                    )
        values = {r.count for r in counts.values()}
        if len(values) > 1:
            detail = ", ".join(f"{tag}={r.count}" for tag, r in counts.items())
            print(f"error: solvers disagree for {entry.name} quandle {k}: {detail}",
                  file=sys.stderr)
            status = EXIT_VERIFY
        result = next(iter(counts.values()))
        nontrivial = "true" if result.nontrivial else "false"
        print(cfg.sep.join((entry.name, str(k), str(result.count), nontrivial)))
    return status


def _compute_profiles(cfg: RunConfig, args):
    catalog = load_catalog(cfg.catalog_path)
    progress = progress_to_stderr if cfg.progress else None
    profiles_path = getattr(args, "profiles", None)
    if profiles_path:
        return read_profiles_csv(profiles_path)
    return profile_all(
        catalog,
        convention=cfg.convention,
        jobs=cfg.jobs,
        mode=cfg.solver,
        progress=progress,
    )


def cmd_matrix(args) -> int:
    cfg = _config(args)
    try:
        profiles = _compute_profiles(cfg, args)
    except (CatalogError, ReferenceFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SolverMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY

    matrix = build_matrix(profiles)

    if args.action == "build":
        out = Path(args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            write_profiles_csv(profiles, out / "profiles.csv")
            write_matrix_csv(matrix, out / "matrix.csv")
        except OSError as exc:
            print(f"error: cannot write outputs under {out}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"wrote {out / 'profiles.csv'} and {out / 'matrix.csv'}", file=sys.stderr)
        return EXIT_OK

    if args.action == "verify":
        try:
            report = verify_against_reference(matrix, getattr(args, "reference", None))
        except ReferenceFormatError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(report.describe())
        return EXIT_OK if report.ok else EXIT_VERIFY

    stats = summarize(matrix, profiles, STANDARD_SIZES)
    print(
        f"pairs={stats.total_pairs} zeros={stats.zeros} "
        f"fr_inconclusive={stats.fr_inconclusive}"
    )
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, jobs_default: int = 1) -> None:
    p.add_argument("--catalog", help="catalog file (default: bundled table)")
    p.add_argument(
        "--convention",
        choices=[c.value for c in Convention],
        default=DEFAULT_CONVENTION.value,
        help="parity-to-direction rule for crossing relations",
    )
    p.add_argument("--jobs", type=int, default=jobs_default,
                   help="worker processes for batch counting")
    p.add_argument("--solver", choices=PROFILE_MODES, default="both",
                   help="counting path; 'both' cross-checks the two solvers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkd",
        description="Quandle-coloring invariants of knots from Gauss codes",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"qkd {__version__} (default convention: {DEFAULT_CONVENTION.value})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pq = sub.add_parser("quandles", help="inspect or verify the standard quandles")
    pq.add_argument("action", choices=["list", "verify"])
    pq.set_defaults(func=cmd_quandles)

    pc = sub.add_parser("color", help="count colorings for one knot")
    pc.add_argument("knot", help="catalog name, e.g. 3_1 or 10_45")
    pc.add_argument("--quandle", default="all", help="1..10 or 'all'")
    pc.add_argument("--format", choices=["csv", "tsv"], default="csv")
    _add_common(pc)
    pc.set_defaults(func=cmd_color)

    pm = sub.add_parser("matrix", help="batch profiles / distinguishing matrix")
    pm.add_argument("action", choices=["build", "verify", "summary"])
    pm.add_argument("--out", default=".", help="output directory for 'build'")
    pm.add_argument("--reference", help="reference CSV for 'verify' (default: bundled)")
    pm.add_argument("--profiles", help="reuse a profiles CSV instead of recomputing")
    pm.add_argument("--progress", action="store_true", help="progress on stderr")
    _add_common(pm, jobs_default=os.cpu_count() or 1)
    pm.set_defaults(func=cmd_matrix)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
