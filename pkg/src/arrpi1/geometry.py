"""Affine line arrangements in C^2: intersections, singular points, normalization.

Lines are loci a*z1 + b*z2 + c = 0 with Gaussian-rational coefficients,
scaled so the first nonzero coefficient among (a, b) is 1; line equality is
then structural.  An arrangement is a finite list of pairwise-distinct lines.

``normalize`` applies a shear (z1, z2) -> (z1 + mu*z2, z2) chosen from a fixed
candidate sequence so that downstream wiring-diagram construction is total:
no vertical lines, distinct singular points project to distinct real
abscissae, and projected strands never coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from typing import Optional, Sequence, Tuple

from arrpi1.exactnum import (
    GQ,
    ONE,
    UNDERDETERMINED,
    GaussianRational,
    gq_candidates,
    solve_linear_2,
)

Point = Tuple[GaussianRational, GaussianRational]

#: Candidates examined before giving up on a genericity search.
CANDIDATE_BUDGET = 1000


class GenericityError(RuntimeError):
    """A deterministic genericity search exhausted its candidate budget."""


@dataclass(frozen=True)
class AffineLine:
    """The line a*z1 + b*z2 + c = 0, canonically scaled."""

    a: GaussianRational
    b: GaussianRational
    c: GaussianRational

    def __post_init__(self):
        if not self.a and not self.b:
            raise ValueError("a line needs (a, b) != (0, 0)")
        lead = self.a if self.a else self.b
        if lead != ONE:
            object.__setattr__(self, "a", self.a / lead)
            object.__setattr__(self, "b", self.b / lead)
            object.__setattr__(self, "c", self.c / lead)

    @classmethod
    def from_slope_intercept(cls, m: GaussianRational, beta: GaussianRational) -> "AffineLine":
        """The line z2 = m*z1 + beta."""
        return cls(m, GQ(-1), beta)

    def contains(self, p: Point) -> bool:
        return not (self.a * p[0] + self.b * p[1] + self.c)

    def direction(self) -> Tuple[GaussianRational, GaussianRational]:
        """Canonical (a, b); two lines are parallel iff directions are equal."""
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"({self.a})z1 + ({self.b})z2 + ({self.c}) = 0"


@dataclass(frozen=True)
class Arrangement:
    """A finite union of distinct lines; indices are 1-based throughout."""

    lines: Tuple[AffineLine, ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        if not self.lines:
            raise ValueError("an arrangement needs at least one line")
        if len(set(self.lines)) != len(self.lines):
            raise ValueError("arrangement lines must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.lines)

    def line(self, index: int) -> AffineLine:
        """1-based access."""
        return self.lines[index - 1]


@dataclass(frozen=True)
class SingularPoint:
    """A point on >= 2 lines, with the full sorted set of incident line indices."""

    point: Point
    incident: Tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)

    def sort_key(self):
        z1, z2 = self.point
        return (z1.re, z1.im, z2.re, z2.im)


@dataclass(frozen=True)
class CoordinateChange:
    """The shear (z1, z2) -> (z1 + mu*z2, z2); invertible for every mu."""

    mu: GaussianRational
    applied: bool


def intersect(l1: AffineLine, l2: AffineLine) -> Optional[Point]:
    """Unique intersection point of two distinct lines, or None when parallel."""
    if l1 == l2:
        raise ValueError("intersect requires distinct lines")
    result = solve_linear_2(l1.a, l1.b, l1.c, l2.a, l2.b, l2.c)
    if result is UNDERDETERMINED:
        raise ValueError("lines are equal despite canonical form")  # unreachable
    return result


def singular_points(arr: Arrangement) -> Tuple[SingularPoint, ...]:
    """All multiple points, each with its complete incident set.

    Deterministic order: lexicographic by (re z1, im z1, re z2, im z2).
    """
    hits = {}
    for i, j in combinations(range(arr.n), 2):
        p = intersect(arr.lines[i], arr.lines[j])
        if p is None:
            continue
        hits.setdefault(p, set()).update((i + 1, j + 1))
    found = [SingularPoint(p, tuple(sorted(inc))) for p, inc in hits.items()]
    found.sort(key=SingularPoint.sort_key)
    return tuple(found)


def is_parallel_union(arr: Arrangement) -> bool:
    """True iff all lines share one projective slope [a : b].

    Equivalent to ``singular_points(arr) == ()``, but computed independently
    of the pairwise-intersection path.
    """
    return len({line.direction() for line in arr.lines}) == 1


def slope_intercept(line: AffineLine) -> Tuple[GaussianRational, GaussianRational]:
    """(m, beta) with the line exactly {z2 = m*z1 + beta}; requires b != 0."""
    if not line.b:
        raise ValueError("vertical line has no slope-intercept form; normalize first")
    return (-line.a / line.b, -line.c / line.b)


def shear(arr: Arrangement, mu: GaussianRational) -> Arrangement:
    """Apply (z1, z2) -> (z1 + mu*z2, z2) to every line.

    In the new coordinates the line (a, b, c) becomes (a, b - a*mu, c).
    """
    return Arrangement(tuple(AffineLine(l.a, l.b - l.a * mu, l.c) for l in arr.lines))


def shear_point(p: Point, mu: GaussianRational) -> Point:
    return (p[0] + mu * p[1], p[1])


def _admissible(arr: Arrangement) -> bool:
    """Checks the three normalization conditions on an already-sheared arrangement."""
    # (i) no vertical lines
    if any(not line.b for line in arr.lines):
        return False
    # (ii) distinct singular points have distinct re(z1)
    pts = singular_points(arr)
    abscissae = [p.point[0].re for p in pts]
    if len(set(abscissae)) != len(abscissae):
        return False
    # (iii) within each parallel class, intercept real parts are distinct,
    # so projected strands of parallel lines never coincide
    classes = {}
    for line in arr.lines:
        _, beta = slope_intercept(line)
        classes.setdefault(line.direction(), []).append(beta.re)
    for reals in classes.values():
        if len(set(reals)) != len(reals):
            return False
    return True


def normalize_indexed(arr: Arrangement, seed: int = 0):
    """Like :func:`normalize` but also returns the candidate index actually used.

    The retry loop in the wiring layer needs the index so it can resume the
    scan *past* a shear that normalized fine but produced a non-regular
    diagram.
    """
    candidates = islice(gq_candidates(), seed, seed + CANDIDATE_BUDGET)
    for offset, mu in enumerate(candidates):
        sheared = shear(arr, mu)
        if _admissible(sheared):
            return sheared, CoordinateChange(mu, applied=bool(mu)), seed + offset
    raise GenericityError(
        f"no admissible shear among candidates {seed}..{seed + CANDIDATE_BUDGET - 1}"
    )


def normalize(arr: Arrangement, seed: int = 0) -> Tuple[Arrangement, CoordinateChange]:
    """Shear the arrangement into the generic position the wiring stage assumes.

    Scans the fixed candidate sequence starting at ``seed`` and applies the
    first shear after which (i) no line is vertical, (ii) singular points have
    pairwise-distinct real abscissae, and (iii) parallel lines have intercepts
    with distinct real parts.  Deterministic: same (arr, seed) -> same mu.
    """
    sheared, change, _ = normalize_indexed(arr, seed)
    return sheared, change
