"""Finite quandles: construction, verification, and the standard ten.

A quandle is a set X with a binary operation ``a ▷ b`` satisfying

    (i)   a ▷ a = a                                   (idempotence)
    (ii)  for all a, b there is a unique x with x ▷ b = a
    (iii) (a ▷ b) ▷ c = (a ▷ c) ▷ (b ▷ c)             (self-distributivity)

Two families are built here. Dihedral quandles R_n live on Z_n with
``a ▷ b = 2b - a (mod n)``. Alexander quandles live on the quotient ring
Z_n[T]/(h) for a monic polynomial h, with ``a ▷ b = T*a + (1 - T)*b``;
since every h we handle has a unit constant term, T is already invertible
in the quotient and no Laurent localization is needed.

Elements of an Alexander quandle are encoded as integers 0 .. n^deg(h)-1
via their coefficient vectors, constant coefficient fastest-varying, so
element 0 is the ring zero and indices are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class QuandleError(ValueError):
    """Invalid parameters for quandle construction."""


@dataclass(frozen=True)
class Dihedral:
    """Descriptor for R_n."""

    n: int


@dataclass(frozen=True)
class Alexander:
    """Descriptor for Z_n[T]/(h); ``h`` holds coefficients of h by
    ascending degree, reduced into [0, n), including the leading 1."""

    n: int
    h: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.h) - 1


@dataclass(frozen=True)
class Quandle:
    """An explicit finite quandle.

    ``table[a][b]`` is ``a ▷ b`` with elements identified with
    0 .. size-1. Immutable, hashable, safe to share between workers.
    """

    name: str
    size: int
    table: tuple[tuple[int, ...], ...]
    descriptor: Dihedral | Alexander | None = None

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def __repr__(self) -> str:
        return f"Quandle({self.name!r}, size={self.size})"


@dataclass(frozen=True)
class AlexanderElement:
    """Coefficient-vector representative of an element of Z_n[T]/(h).

    The vector always has length deg(h); leading zeros are kept so the
    encoding is a bijection onto 0 .. n^deg(h)-1.
    """

    coeffs: tuple[int, ...]

    def index(self, n: int) -> int:
        ix = 0
        for c in reversed(self.coeffs):
            ix = ix * n + c
        return ix

    @classmethod
    def from_index(cls, ix: int, n: int, degree: int) -> "AlexanderElement":
        coeffs = []
        for _ in range(degree):
            coeffs.append(ix % n)
            ix //= n
        return cls(tuple(coeffs))


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of checking the three quandle axioms on a table.

    Each axiom field is None on pass, otherwise a witness: the element a
    for idempotence, a pair (a1, a2) colliding in column b for
    invertibility, the triple (a, b, c) for distributivity. A structural
    problem (ragged table, out-of-range entry) is reported instead of
    axiom results.
    """

    structural: str | None = None
    idempotence: int | None = None
    invertibility: tuple[int, int, int] | None = None
    distributivity: tuple[int, int, int] | None = None

    @property
    def passed(self) -> bool:
        return (
            self.structural is None
            and self.idempotence is None
            and self.invertibility is None
            and self.distributivity is None
        )

    def describe(self) -> str:
        if self.structural is not None:
            return f"malformed table: {self.structural}"
        if self.passed:
            return "all axioms hold"
        parts = []
        if self.idempotence is not None:
            a = self.idempotence
            parts.append(f"idempotence fails at a={a}")
        if self.invertibility is not None:
            a1, a2, b = self.invertibility
            parts.append(f"column {b} maps {a1} and {a2} to the same value")
        if self.distributivity is not None:
            parts.append(f"self-distributivity fails at {self.distributivity}")
        return "; ".join(parts)


def make_dihedral(n: int) -> Quandle:
    """Build R_n, the dihedral quandle on Z_n with a ▷ b = 2b - a mod n."""
    if n < 1:
        raise QuandleError(f"dihedral quandle needs n >= 1, got {n}")
    table = tuple(tuple((2 * b - a) % n for b in range(n)) for a in range(n))
    return Quandle(name=f"R_{n}", size=n, table=table, descriptor=Dihedral(n))


def _reduce_poly(coeffs, n: int) -> tuple[int, ...]:
    return tuple(c % n for c in coeffs)


def poly_text(h: tuple[int, ...]) -> str:
    """Render ascending coefficients as a polynomial in T, e.g. T^2+T+1."""
    terms = []
    for k in range(len(h) - 1, -1, -1):
        c = h[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            t = "T" if k == 1 else f"T^{k}"
            terms.append(t if c == 1 else f"{c}{t}")
    return "+".join(terms) if terms else "0"


def make_alexander(n: int, h, name: str | None = None) -> Quandle:
    """Build the Alexander quandle Z_n[T]/(h).

    ``h`` is the sequence of coefficients of the monic modulus by
    ascending degree (constant term first, leading coefficient last).
    Coefficients are reduced mod n; the reduced leading coefficient must
    be 1 and deg(h) must be at least 1.
    """
    if n < 2:
        raise QuandleError(f"alexander quandle needs modulus n >= 2, got {n}")
    h = _reduce_poly(h, n)
    while len(h) > 1 and h[-1] == 0:
        h = h[:-1]
    if len(h) < 2:
        raise QuandleError("modulus polynomial must have degree >= 1")
    if h[-1] != 1:
        raise QuandleError(f"modulus polynomial must be monic, got {poly_text(h)} mod {n}")
    degree = len(h) - 1
    size = n**degree
    hred = h[:-1]  # reduction rule: T^degree = -hred as a vector

    elements = [AlexanderElement.from_index(i, n, degree).coeffs for i in range(size)]

    def op(a: tuple[int, ...], b: tuple[int, ...]) -> int:
        # a ▷ b = T*(a - b) + b, reducing the single overflow coefficient by h
        diff = [(x - y) % n for x, y in zip(a, b)]
        top = diff[degree - 1]
        shifted = [0] + diff[: degree - 1]
        red = [(s - top * hc + y) % n for s, hc, y in zip(shifted, hred, b)]
        ix = 0
        for c in reversed(red):
            ix = ix * n + c
        return ix

    table = tuple(tuple(op(a, b) for b in elements) for a in elements)
    if name is None:
        name = f"Z_{n}[T]/({poly_text(h)})"
    return Quandle(name=name, size=size, table=table, descriptor=Alexander(n, h))


def verify_quandle(q: Quandle) -> AxiomReport:
    """Check all three axioms exhaustively; cheap since size <= 9 here."""
    n = q.size
    if len(q.table) != n:
        return AxiomReport(structural=f"table has {len(q.table)} rows, expected {n}")
    for a, row in enumerate(q.table):
        if len(row) != n:
            return AxiomReport(structural=f"row {a} has {len(row)} entries, expected {n}")
        for b, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                return AxiomReport(structural=f"entry [{a}][{b}] = {v!r} out of range")

    idem = next((a for a in range(n) if q.table[a][a] != a), None)

    inv = None
    for b in range(n):
        seen: dict[int, int] = {}
        for a in range(n):
            v = q.table[a][b]
            if v in seen:
                inv = (seen[v], a, b)
                break
            seen[v] = a
        if inv is not None:
            break

    dist = None
    t = q.table
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[t[a][c]][t[b][c]]:
                    dist = (a, b, c)
                    break
            if dist:
                break
        if dist:
            break

    return AxiomReport(idempotence=idem, invertibility=inv, distributivity=dist)


@lru_cache(maxsize=64)
def _inverse_table(q: Quandle) -> tuple[tuple[int, ...], ...]:
    """inv[a][b] = the unique x with x ▷ b = a (valid under axiom ii)."""
    n = q.size
    inv = [[-1] * n for _ in range(n)]
    for x in range(n):
        row = q.table[x]
        for b in range(n):
            inv[row[b]][b] = x
    if any(v < 0 for row in inv for v in row):
        raise QuandleError(f"{q.name}: right-inversion is not defined (axiom ii fails)")
    return tuple(tuple(row) for row in inv)


def right_inverse(q: Quandle, a: int, b: int) -> int:
    """Return the unique x with x ▷ b = a."""
    return _inverse_table(q)[a][b]


# The fixed list of ten quandles, in the order their 1-based positions
# are used as matrix entries. Names keep the conventional polynomial
# forms even where coefficients are stored reduced (T^2+T-1 is T^2+T+2
# over Z_3 internally).
_STANDARD_SPECS = (
    ("R_3", lambda: make_dihedral(3)),
    ("R_5", lambda: make_dihedral(5)),
    ("R_7", lambda: make_dihedral(7)),
    ("Z_7[T]/(T-2)", lambda: make_alexander(7, (-2, 1), name="Z_7[T]/(T-2)")),
    ("Z_3[T]/(T^2+1)", lambda: make_alexander(3, (1, 0, 1), name="Z_3[T]/(T^2+1)")),
    ("Z_2[T]/(T^2+T+1)", lambda: make_alexander(2, (1, 1, 1), name="Z_2[T]/(T^2+T+1)")),
    ("Z_3[T]/(T^2+T-1)", lambda: make_alexander(3, (-1, 1, 1), name="Z_3[T]/(T^2+T-1)")),
    ("Z_2[T]/(T^3+T^2+1)", lambda: make_alexander(2, (1, 0, 1, 1), name="Z_2[T]/(T^3+T^2+1)")),
    ("Z_5[T]/(T-2)", lambda: make_alexander(5, (-2, 1), name="Z_5[T]/(T-2)")),
    ("R_9", lambda: make_dihedral(9)),
)

STANDARD_SIZES = (3, 5, 7, 7, 9, 4, 9, 8, 5, 9)


@lru_cache(maxsize=1)
def standard_quandle_list() -> tuple[Quandle, ...]:
    """The ten quandles of the distinguishing battery, in matrix order.

    Position k of the result is quandle k+1 of the 1-based battery.
    """
    quandles = tuple(build() for _, build in _STANDARD_SPECS)
    assert tuple(q.size for q in quandles) == STANDARD_SIZES
    return quandles
