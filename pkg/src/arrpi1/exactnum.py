"""Exact arithmetic over the Gaussian rationals Q(i) and small exact linear algebra.

Every coordinate in this package is a :class:`GaussianRational`: a complex
number with rational real and imaginary parts, kept in canonical form so that
equality and hashing are structural.  Rational parts are stdlib
``fractions.Fraction`` values (arbitrary precision; denominators of chained
line intersections grow quickly and any fixed-width type would silently
corrupt event ordering downstream).

Q(i) carries no useful total order; only the rational real/imaginary parts
are compared, and all such comparisons in this package go through the
``.re`` / ``.im`` Fractions explicitly.
"""

from __future__ import annotations

import itertools
import re as _re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

RationalLike = Union[int, Fraction]


class GaussianRational:
    """An element of Q(i), immutable and canonical by construction."""

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- field arithmetic --------------------------------------------------

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    # -- structure ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self) -> str:
        return f"GQ({str(self)!r})"

    def __str__(self) -> str:
        return format_gq(self)


GQ = GaussianRational

ZERO = GQ(0)
ONE = GQ(1)
I = GQ(0, 1)


# -- text grammar -----------------------------------------------------------
#
#   RAT := '-'? DIGITS ('/' DIGITS)?
#   GQ  := RAT | RAT ('+'|'-') RAT? 'i' | RAT? 'i' | '-' RAT? 'i'
#
# Serialization always re-emits canonical form; parse(format(x)) == x.

_RAT = r"-?\d+(?:/\d+)?"
_GQ_RE = _re.compile(
    rf"^(?:(?P<re>{_RAT})(?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?)?i)?"
    rf"|(?P<imonly>-?(?:\d+(?:/\d+)?)?)i)$"
)


def parse_gq(text: str) -> GaussianRational:
    """Parse a Gaussian rational from the package's text grammar.

    Accepts e.g. ``"3"``, ``"-1/2"``, ``"1+2i"``, ``"1/2-1/3i"``, ``"i"``,
    ``"-i"``.  Raises ``ValueError`` on anything else.
    """
    m = _GQ_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a Gaussian rational: {text!r}")
    if m.group("imonly") is not None:
        mag = m.group("imonly")
        if mag in ("", "-"):
            mag += "1"
        return GQ(0, Fraction(mag))
    re_part = Fraction(m.group("re"))
    if m.group("sign") is None:
        return GQ(re_part)
    mag = m.group("im")
    im_part = Fraction(mag) if mag is not None else Fraction(1)
    if m.group("sign") == "-":
        im_part = -im_part
    return GQ(re_part, im_part)


def format_rat(q: Fraction) -> str:
    return str(q)


def format_gq(g: GaussianRational) -> str:
    """Canonical text form, bit-exact inverse of :func:`parse_gq`."""
    if g.im == 0:
        return format_rat(g.re)
    mag = abs(g.im)
    im_txt = ("" if mag == 1 else format_rat(mag)) + "i"
    if g.re == 0:
        return ("-" if g.im < 0 else "") + im_txt
    return format_rat(g.re) + ("-" if g.im < 0 else "+") + im_txt


# -- deterministic candidate enumeration -------------------------------------
#
# Shared by coordinate normalization (shear parameters) and generic plane
# sections.  The prefix is pinned; afterwards every Gaussian rational appears
# exactly once, grouped by growing height max(|a|, |b|, d) of (a + b i)/d in
# lowest terms, so any finite or real-algebraic bad set is eventually escaped.

_PINNED_PREFIX = (
    GQ(0),
    GQ(1),
    GQ(-1),
    GQ(2),
    GQ(-2),
    GQ(1, 1),
    GQ(1, -1),
    GQ(3),
    GQ(-3),
    GQ(Fraction(1, 2)),
)


def gq_candidates() -> Iterator[GaussianRational]:
    """Yield the fixed, injective sequence 0, 1, -1, 2, -2, 1+i, 1-i, 3, -3, 1/2, ..."""
    seen = set()
    for g in _PINNED_PREFIX:
        seen.add(g)
        yield g
    for height in itertools.count(1):
        for d in range(1, height + 1):
            for a in range(-height, height + 1):
                for b in range(-height, height + 1):
                    if max(abs(a), abs(b), d) != height:
                        continue
                    g = GQ(Fraction(a, d), Fraction(b, d))
                    if g in seen:
                        continue
                    seen.add(g)
                    yield g


def gq_candidate(index: int) -> GaussianRational:
    return next(itertools.islice(gq_candidates(), index, None))


# -- small exact linear algebra ----------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix over Q(i)."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[GaussianRational]]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, tuple(x for row in rows for x in row))

    def at(self, i: int, j: int) -> GaussianRational:
        return self.entries[i * self.cols + j]

    def row_list(self) -> list:
        return [
            [self.entries[i * self.cols + j] for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [[self.at(i, j) for i in range(self.rows)] for j in range(self.cols)]
        )


def _eliminate(rows: list) -> tuple:
    """Forward elimination in place; returns (rank, pivot column list)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    piv_r = 0
    pivots = []
    for piv_c in range(n_cols):
        hit = None
        for r in range(piv_r, n_rows):
            if rows[r][piv_c]:
                hit = r
                break
        if hit is None:
            continue
        rows[piv_r], rows[hit] = rows[hit], rows[piv_r]
        inv = ONE / rows[piv_r][piv_c]
        rows[piv_r] = [x * inv for x in rows[piv_r]]
        for r in range(n_rows):
            if r != piv_r and rows[r][piv_c]:
                factor = rows[r][piv_c]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == n_rows:
            break
    return piv_r, pivots


def matrix_rank(m: ExactMatrix) -> int:
    """Rank over Q(i) by exact Gauss-Jordan elimination."""
    rank, _ = _eliminate(m.row_list())
    return rank


def nullspace(m: ExactMatrix) -> list:
    """Basis of the right null space, one tuple of GaussianRationals per vector."""
    rows = m.row_list()
    rank, pivots = _eliminate(rows)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -rows[r][f]
        basis.append(tuple(vec))
    return basis


def invert(m: ExactMatrix) -> ExactMatrix:
    """Inverse of a square matrix; raises ``ValueError`` if singular."""
    if m.rows != m.cols:
        raise ValueError("not square")
    n = m.rows
    aug = [
        [m.at(i, j) for j in range(n)] + [ONE if i == j else ZERO for j in range(n)]
        for i in range(n)
    ]
    rank, pivots = _eliminate(aug)
    if rank < n or pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return ExactMatrix.from_rows([row[n:] for row in aug])


# -- 2x2 linear systems -------------------------------------------------------


class _Underdetermined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDERDETERMINED"


#: Returned by :func:`solve_linear_2` when the two equations are proportional.
UNDERDETERMINED = _Underdetermined()


def solve_linear_2(a1, b1, c1, a2, b2, c2):
    """Common solution of a1*z1 + b1*z2 + c1 = 0 and a2*z1 + b2*z2 + c2 = 0.

    Returns the point ``(z1, z2)``, ``None`` when the system is inconsistent
    (parallel distinct lines), or :data:`UNDERDETERMINED` when the equations
    are proportional (equal lines).  A zero coefficient pair ``(a, b)`` is an
    input error.
    """
    if not a1 and not b1:
        raise ValueError("first equation has zero (a, b) coefficients")
    if not a2 and not b2:
        raise ValueError("second equation has zero (a, b) coefficients")
    det = a1 * b2 - a2 * b1
    if det:
        z1 = (b1 * c2 - b2 * c1) / det
        z2 = (a2 * c1 - a1 * c2) / det
        return (z1, z2)
    # (a1, b1) and (a2, b2) are proportional; compare the c components.
    scale = (a2 / a1) if a1 else (b2 / b1)
    if c2 == scale * c1:
        return UNDERDETERMINED
    return None
