"""Signed Gauss codes: parsing, validation, arcs/crossings, the catalog.

A Gauss code records one full traversal of an oriented knot diagram as a
cyclic sequence of signed integers: +k when passing over crossing k, -k
when passing under it. Each label therefore appears exactly twice, once
with each sign. The segments of the traversal between consecutive
under-passages are the arcs of the diagram; the parity of a crossing
label (odd or even) selects the orientation of the coloring relation the
crossing imposes on its three incident arcs.

The bundled catalog lists the 249 prime knots with 3 to 10 crossings
(``10_162`` does not exist as a distinct knot, it is the Perko duplicate
of ``10_161``).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

log = logging.getLogger(__name__)

CATALOG_RESOURCE = "knots.gauss"


class GaussCodeError(ValueError):
    """Malformed Gauss code text or an unsatisfiable pairing."""


class CatalogError(ValueError):
    """Catalog file unreadable or containing an invalid entry."""


@dataclass(frozen=True)
class GaussCode:
    """A cyclic sequence of signed crossing labels; empty means unknot."""

    tokens: tuple[int, ...]

    @property
    def crossing_count(self) -> int:
        return len(self.tokens) // 2

    def to_text(self) -> str:
        return " ".join(str(t) for t in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Arc:
    """A diagram arc: the run of token positions strictly between one
    negative token and the next (cyclically). May be empty."""

    id: int
    span: tuple[int, ...]


@dataclass(frozen=True)
class CrossingRelation:
    """The three arcs meeting at one crossing.

    ``under_in`` ends at the -label token, ``under_out`` starts after it,
    ``over`` is the arc whose span holds the +label token. ``parity`` is
    "odd" or "even" according to the label.
    """

    label: int
    parity: str
    under_in: int
    under_out: int
    over: int


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def strict_ok(self) -> bool:
        return not self.errors and not self.warnings


def _pairing_errors(tokens: tuple[int, ...]) -> list[str]:
    """Each label must occur exactly once positively and once negatively."""
    errors = []
    pos: dict[int, int] = {}
    neg: dict[int, int] = {}
    for t in tokens:
        side = pos if t > 0 else neg
        side[abs(t)] = side.get(abs(t), 0) + 1
    for label in sorted(set(pos) | set(neg)):
        p, m = pos.get(label, 0), neg.get(label, 0)
        if p > 1 or m > 1:
            errors.append(f"label {label} repeated with the same sign")
        elif p != m:
            errors.append(f"label {label} is unpaired")
    return errors


def parse_gauss_code(text: str) -> GaussCode:
    """Parse integers separated by commas/whitespace, braces optional.

    Raises GaussCodeError on non-integer tokens, a zero token, or any
    pairing violation.
    """
    stripped = text.strip().strip("{}").strip()
    if not stripped:
        return GaussCode(())
    tokens = []
    for piece in re.split(r"[,\s]+", stripped):
        try:
            value = int(piece)
        except ValueError:
            raise GaussCodeError(f"not an integer token: {piece!r}") from None
        if value == 0:
            raise GaussCodeError("zero is not a valid crossing label")
        tokens.append(value)
    code = GaussCode(tuple(tokens))
    errors = _pairing_errors(code.tokens)
    if errors:
        raise GaussCodeError("; ".join(errors))
    return code


def validate(code: GaussCode, strict: bool = False) -> ValidationReport:
    """Check the pairing invariant; with ``strict``, also report (as
    warnings) labels whose first appearances are out of ascending order
    within their parity class. Rotations break that numbering without
    changing the knot, so strict failures are never fatal."""
    errors = tuple(_pairing_errors(code.tokens))
    warnings: list[str] = []
    if strict:
        for parity, residue in (("odd", 1), ("even", 0)):
            first_seen = []
            for position, t in enumerate(code.tokens):
                label = abs(t)
                if label % 2 == residue and label not in first_seen:
                    if first_seen and label < first_seen[-1]:
                        warnings.append(
                            f"{parity} label {label} first appears at position "
                            f"{position}, after label {first_seen[-1]}"
                        )
                    first_seen.append(label)
    return ValidationReport(errors=errors, warnings=tuple(warnings))


def decompose(code: GaussCode) -> tuple[list[Arc], list[CrossingRelation]]:
    """Split a code into arcs and one crossing relation per label.

    Arc ids run in order of their opening negative token's position. The
    empty code yields one synthetic arc and no relations, so an unknot
    diagram admits exactly the constant colorings.
    """
    tokens = code.tokens
    if not tokens:
        return [Arc(0, ())], []

    neg_positions = [i for i, t in enumerate(tokens) if t < 0]
    c = len(neg_positions)
    length = len(tokens)

    arcs = []
    covering = {}  # token position -> arc id, for positive positions
    for a, start in enumerate(neg_positions):
        end = neg_positions[(a + 1) % c]
        span = []
        p = (start + 1) % length
        while p != end:
            span.append(p)
            covering[p] = a
            p = (p + 1) % length
        arcs.append(Arc(a, tuple(span)))

    arc_opening_at = {p: a for a, p in enumerate(neg_positions)}
    relations = []
    for label in sorted({abs(t) for t in tokens}):
        under_pos = tokens.index(-label)
        over_pos = tokens.index(label)
        under_out = arc_opening_at[under_pos]
        under_in = (under_out - 1) % c
        relations.append(
            CrossingRelation(
                label=label,
                parity="odd" if label % 2 else "even",
                under_in=under_in,
                under_out=under_out,
                over=covering[over_pos],
            )
        )
    return arcs, relations


def rotate(code: GaussCode, k: int) -> GaussCode:
    """Cyclically shift the token sequence by k positions."""
    if not code.tokens:
        return code
    k %= len(code.tokens)
    return GaussCode(code.tokens[k:] + code.tokens[:k])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: GaussCode


@dataclass(frozen=True)
class KnotCatalog:
    """Ordered knot table; positions are 1-based to match matrix indices."""

    entries: tuple[CatalogEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def entry(self, index: int) -> CatalogEntry:
        """1-based lookup."""
        if not 1 <= index <= len(self.entries):
            raise KeyError(f"catalog index {index} out of range 1..{len(self.entries)}")
        return self.entries[index - 1]

    def by_name(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(f"unknown knot {name!r}")

    def index_of(self, name: str) -> int:
        for i, e in enumerate(self.entries, start=1):
            if e.name == name:
                return i
        raise KeyError(f"unknown knot {name!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries)


def _crossings_from_name(name: str) -> int | None:
    m = re.match(r"(\d+)_\d+$", name)
    return int(m.group(1)) if m else None


def _parse_catalog_line(name: str, body: str) -> GaussCode:
    """Parse one catalog code, repairing a known transcription defect:
    a stray leading token is dropped when and only when doing so yields
    a perfectly paired code of the length the knot's name demands."""
    try:
        return parse_gauss_code(body)
    except GaussCodeError as first_error:
        tokens = body.split()
        expected = _crossings_from_name(name)
        if len(tokens) >= 1 and expected is not None:
            repaired = " ".join(tokens[1:])
            try:
                code = parse_gauss_code(repaired)
            except GaussCodeError:
                raise CatalogError(f"{name}: {first_error}") from None
            if len(code.tokens) == 2 * expected:
                log.warning(
                    "%s: dropped stray leading token %s to restore pairing",
                    name,
                    tokens[0],
                )
                return code
        raise CatalogError(f"{name}: {first_error}") from None


def load_catalog(source: str | Path | None = None) -> KnotCatalog:
    """Load a knot catalog; with no argument, the bundled 249-knot table.

    File format: UTF-8 text, one ``NAME = n1 n2 n3 ...`` per line, ``#``
    lines ignored. Every entry must be a valid (leniently) Gauss code
    after the one supported repair; otherwise loading fails naming the
    offending knot.
    """
    if source is None:
        text = resources.files("qkd.data").joinpath(CATALOG_RESOURCE).read_text("utf-8")
        origin = "bundled catalog"
    else:
        try:
            text = Path(source).read_text("utf-8")
        except OSError as exc:
            raise CatalogError(f"cannot read catalog {source}: {exc}") from None
        origin = str(source)

    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CatalogError(f"{origin} line {lineno}: expected 'NAME = tokens'")
        name, _, body = line.partition("=")
        name = name.strip()
        entries.append(CatalogEntry(name=name, code=_parse_catalog_line(name, body.strip())))
    return KnotCatalog(entries=tuple(entries))
