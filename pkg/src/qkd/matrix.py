"""Coloring profiles, the pairwise distinguishing matrix, and verification.

Every knot gets a profile of ten coloring counts, one per quandle of the
standard battery. For each unordered pair of knots the matrix records
the 1-based index of the first quandle whose counts differ (0 when all
ten agree). A bundled reference matrix allows the entire computation to
be checked entry by entry; summary statistics (number of indistinguished
pairs, and of pairs the coarser trivial/non-trivial criterion misses)
are exposed alongside.

Counting 249 knots x 10 quandles dominates the cost, so profiles are
computed once (optionally fanned out to worker processes) and the matrix
pass is pure comparison. Output ordering is fixed by (knot index,
quandle index) no matter how many workers run, so builds are
byte-reproducible.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .gauss import GaussCode, KnotCatalog
from .quandles import Quandle, standard_quandle_list
from .solver import (
    Convention,
    DEFAULT_CONVENTION,
    UnsupportedQuandleError,
    build_system,
    count_colorings,
    count_colorings_linear,
)

REFERENCE_RESOURCE = "appendix_a.csv"

PROFILE_MODES = ("propagate", "linear", "both")


class SolverMismatchError(RuntimeError):
    """Propagation and linear counts disagreed; names the culprit."""


class ReferenceFormatError(ValueError):
    """Reference CSV malformed (row count, schema, or value range)."""


class CalibrationError(RuntimeError):
    """Convention calibration did not single out one convention."""


@dataclass(frozen=True)
class ColoringProfile:
    knot_index: int  # 1-based catalog position
    name: str
    counts: tuple[int, ...]


@dataclass(frozen=True)
class DistinguishMatrix:
    dimension: int
    entries: dict[tuple[int, int], int]  # (i, j) with i < j -> 0..10

    def entry(self, i: int, j: int) -> int:
        if i == j:
            raise KeyError("diagonal entries are not defined")
        return self.entries[(i, j) if i < j else (j, i)]


@dataclass(frozen=True)
class SummaryStats:
    total_pairs: int
    zeros: int
    fr_inconclusive: int


@dataclass(frozen=True)
class DiffReport:
    mismatches: tuple[tuple[int, int, int, int], ...]  # (i, j, computed, reference)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def describe(self) -> str:
        if self.ok:
            return "0 mismatches"
        head = ", ".join(
            f"({i},{j}): computed {c} != reference {r}"
            for i, j, c, r in self.mismatches[:10]
        )
        more = "" if len(self.mismatches) <= 10 else f" (+{len(self.mismatches) - 10} more)"
        return f"{len(self.mismatches)} mismatches: {head}{more}"


def _count_one(code: GaussCode, q: Quandle, convention: Convention, mode: str) -> int:
    if mode == "propagate":
        return count_colorings(build_system(code, convention), q).count
    if mode == "linear":
        try:
            return count_colorings_linear(code, q, convention).count
        except UnsupportedQuandleError:
            return count_colorings(build_system(code, convention), q).count
    # both: propagation is authoritative, linear must agree where defined
    n = count_colorings(build_system(code, convention), q).count
    try:
        m = count_colorings_linear(code, q, convention).count
    except UnsupportedQuandleError:
        return n
    if m != n:
        raise SolverMismatchError(
            f"quandle {q.name}: propagation gives {n}, linear gives {m}"
        )
    return n


def _profile_task(args):
    index, name, tokens, convention_value, mode, quandles = args
    code = GaussCode(tokens)
    convention = Convention(convention_value)
    try:
        counts = tuple(_count_one(code, q, convention, mode) for q in quandles)
    except SolverMismatchError as exc:
        raise SolverMismatchError(f"knot {name}: {exc}") from None
    return index, name, counts


def profile_all(
    catalog: KnotCatalog,
    quandles: tuple[Quandle, ...] | None = None,
    convention: Convention = DEFAULT_CONVENTION,
    jobs: int = 1,
    mode: str = "propagate",
    progress=None,
) -> list[ColoringProfile]:
    """Compute every knot's ten coloring counts.

    ``mode`` selects the counting path: "propagate", "linear" (falls
    back to propagation where no field structure exists), or "both"
    (propagation cross-checked against linear, aborting on any
    disagreement). ``jobs`` > 1 distributes knots over worker processes;
    results are merged by catalog index so the output never depends on
    scheduling. ``progress``, if given, is called with (done, total).
    """
    if mode not in PROFILE_MODES:
        raise ValueError(f"mode must be one of {PROFILE_MODES}")
    if quandles is None:
        quandles = standard_quandle_list()
    tasks = [
        (i, e.name, e.code.tokens, convention.value, mode, quandles)
        for i, e in enumerate(catalog, start=1)
    ]
    results: list[tuple[int, str, tuple[int, ...]]] = []
    if jobs <= 1:
        for t in tasks:
            results.append(_profile_task(t))
            if progress:
                progress(len(results), len(tasks))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for r in pool.map(_profile_task, tasks, chunksize=8):
                results.append(r)
                if progress:
                    progress(len(results), len(tasks))
    results.sort(key=lambda r: r[0])
    profiles = [ColoringProfile(i, name, counts) for i, name, counts in results]
    for p in profiles:
        for count, q in zip(p.counts, quandles):
            if count < q.size:
                raise SolverMismatchError(
                    f"knot {p.name}: count {count} below the {q.size} constant colorings"
                )
    return profiles


def first_distinguisher(p: ColoringProfile, q: ColoringProfile) -> int:
    """1-based index of the first differing count, or 0 if none."""
    for k, (a, b) in enumerate(zip(p.counts, q.counts), start=1):
        if a != b:
            return k
    return 0


def fenn_rourke_distinguishes(
    p: ColoringProfile, q: ColoringProfile, sizes: tuple[int, ...]
) -> bool:
    """True iff some quandle colors one knot only trivially (count equal
    to the quandle size) and the other non-trivially."""
    return any(
        (a == s and b > s) or (b == s and a > s)
        for a, b, s in zip(p.counts, q.counts, sizes)
    )


def build_matrix(profiles: list[ColoringProfile]) -> DistinguishMatrix:
    n = len(profiles)
    entries = {}
    for i in range(n):
        pi = profiles[i]
        for j in range(i + 1, n):
            entries[(i + 1, j + 1)] = first_distinguisher(pi, profiles[j])
    return DistinguishMatrix(dimension=n, entries=entries)


def summarize(
    m: DistinguishMatrix,
    profiles: list[ColoringProfile],
    sizes: tuple[int, ...],
) -> SummaryStats:
    zeros = sum(1 for v in m.entries.values() if v == 0)
    fr_inconclusive = 0
    n = len(profiles)
    for i in range(n):
        for j in range(i + 1, n):
            if not fenn_rourke_distinguishes(profiles[i], profiles[j], sizes):
                fr_inconclusive += 1
    # count-distinguishing refines the trivial/non-trivial criterion; a
    # violation here would mean a solver bug, not an unlucky input
    assert zeros <= fr_inconclusive
    return SummaryStats(
        total_pairs=len(m.entries), zeros=zeros, fr_inconclusive=fr_inconclusive
    )


# ---------------------------------------------------------------------------
# CSV formats (stable byte-for-byte: LF newlines, no quoting needed)
# ---------------------------------------------------------------------------


def write_profiles_csv(profiles: list[ColoringProfile], path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        f.write("knot," + ",".join(f"q{k}" for k in range(1, 11)) + "\n")
        for p in profiles:
            f.write(p.name + "," + ",".join(str(c) for c in p.counts) + "\n")


def read_profiles_csv(path: str | Path) -> list[ColoringProfile]:
    lines = Path(path).read_text("utf-8").splitlines()
    if not lines or lines[0] != "knot," + ",".join(f"q{k}" for k in range(1, 11)):
        raise ReferenceFormatError(f"{path}: not a profiles CSV")
    profiles = []
    for idx, line in enumerate(lines[1:], start=1):
        cells = line.split(",")
        if len(cells) != 11:
            raise ReferenceFormatError(f"{path} row {idx}: expected 11 columns")
        profiles.append(
            ColoringProfile(idx, cells[0], tuple(int(c) for c in cells[1:]))
        )
    return profiles


def write_matrix_csv(m: DistinguishMatrix, path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        f.write("i,j,quandle\n")
        for i in range(1, m.dimension + 1):
            for j in range(i + 1, m.dimension + 1):
                f.write(f"{i},{j},{m.entries[(i, j)]}\n")


def _read_matrix_rows(text: str, origin: str) -> dict[tuple[int, int], int]:
    lines = text.splitlines()
    if not lines or lines[0] != "i,j,quandle":
        raise ReferenceFormatError(f"{origin}: expected header 'i,j,quandle'")
    entries: dict[tuple[int, int], int] = {}
    for row, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != 3:
            raise ReferenceFormatError(f"{origin} line {row}: expected i,j,value")
        try:
            i, j, v = int(cells[0]), int(cells[1]), int(cells[2])
        except ValueError:
            raise ReferenceFormatError(f"{origin} line {row}: non-integer cell") from None
        if not i < j:
            raise ReferenceFormatError(f"{origin} line {row}: need i < j, got {i},{j}")
        if not 0 <= v <= 10:
            raise ReferenceFormatError(f"{origin} line {row}: value {v} out of 0..10")
        if (i, j) in entries:
            raise ReferenceFormatError(f"{origin} line {row}: duplicate pair ({i},{j})")
        entries[(i, j)] = v
    return entries


def load_reference(source: str | Path | None = None) -> dict[tuple[int, int], int]:
    """Reference matrix entries; with no argument, the bundled data."""
    if source is None:
        text = resources.files("qkd.data").joinpath(REFERENCE_RESOURCE).read_text("utf-8")
        return _read_matrix_rows(text, "bundled reference")
    return _read_matrix_rows(Path(source).read_text("utf-8"), str(source))


def verify_against_reference(
    m: DistinguishMatrix, reference: str | Path | dict | None = None
) -> DiffReport:
    """Entry-by-entry diff of a computed matrix against a reference."""
    ref = reference if isinstance(reference, dict) else load_reference(reference)
    expected_rows = m.dimension * (m.dimension - 1) // 2
    if len(ref) != expected_rows:
        raise ReferenceFormatError(
            f"reference has {len(ref)} rows, expected {expected_rows}"
        )
    bad = []
    for i in range(1, m.dimension + 1):
        for j in range(i + 1, m.dimension + 1):
            if (i, j) not in ref:
                raise ReferenceFormatError(f"reference is missing pair ({i},{j})")
            if m.entries[(i, j)] != ref[(i, j)]:
                bad.append((i, j, m.entries[(i, j)], ref[(i, j)]))
    return DiffReport(mismatches=tuple(bad))


def calibrate_convention(
    catalog: KnotCatalog,
    quandles: tuple[Quandle, ...] | None = None,
    reference: str | Path | dict | None = None,
    row: int = 1,
    width: int = 20,
) -> Convention:
    """Determine which parity convention reproduces the reference row.

    Computes the matrix entries (row, j) for j up to ``width`` under
    both conventions and compares them with the reference. Returns the
    unique convention that matches; raises CalibrationError with a
    diagnostic if both or neither do.
    """
    if quandles is None:
        quandles = standard_quandle_list()
    ref = reference if isinstance(reference, dict) else load_reference(reference)
    wanted = [ref[(row, j)] for j in range(row + 1, width + 1)]

    matching = []
    produced = {}
    for convention in Convention:
        profiles = [
            ColoringProfile(
                i,
                catalog.entry(i).name,
                tuple(
                    count_colorings(build_system(catalog.entry(i).code, convention), q).count
                    for q in quandles
                ),
            )
            for i in range(1, width + 1)
        ]
        got = [first_distinguisher(profiles[row - 1], profiles[j - 1])
               for j in range(row + 1, width + 1)]
        produced[convention] = got
        if got == wanted:
            matching.append(convention)

    if len(matching) == 1:
        return matching[0]
    detail = "; ".join(
        f"{c.value} -> {'match' if c in matching else produced[c]}" for c in Convention
    )
    raise CalibrationError(
        f"{len(matching)} of 2 conventions reproduce reference row {row} "
        f"(entries {wanted}): {detail}"
    )


def progress_to_stderr(done: int, total: int) -> None:
    """Progress callback for batch runs; diagnostics only, never stdout."""
    if done % 25 == 0 or done == total:
        print(f"profiled {done}/{total} knots", file=sys.stderr)
