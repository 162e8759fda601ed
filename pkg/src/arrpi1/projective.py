"""Projective arrangements: deconing in CP^2 and the rank criterion in CP^(m+2).

A hyperplane is a homogeneous linear form on m+3 coordinates, canonically
scaled.  The common intersection of the arrangement has projective dimension
(m+3) - rank - 1 where rank is that of the stacked coefficient vectors, and
the complement's fundamental group is free exactly when that dimension is at
least m.  For lines in CP^2 (m = 0) this is the classical statement: free iff
all lines pass through one point, checked concretely by deconing - sending a
member line to infinity and analysing the remaining affine arrangement.

For m >= 1 a deterministic generic 2-plane section reduces to the CP^2 case;
``cross_validate_theorem4`` runs both routes and compares.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from typing import Optional, Tuple

from arrpi1.exactnum import (
    GQ,
    ONE,
    ZERO,
    ExactMatrix,
    GaussianRational,
    gq_candidates,
    invert,
    matrix_rank,
    nullspace,
)
from arrpi1.geometry import CANDIDATE_BUDGET, AffineLine, Arrangement, GenericityError

Coeffs = Tuple[GaussianRational, ...]


@dataclass(frozen=True)
class ProjectiveHyperplane:
    """Zero set of a homogeneous linear form, scaled to leading coefficient 1."""

    coeffs: Coeffs

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        lead = next((c for c in self.coeffs if c), None)
        if lead is None:
            raise ValueError("hyperplane coefficients cannot all vanish")
        if lead != ONE:
            object.__setattr__(self, "coeffs", tuple(c / lead for c in self.coeffs))


@dataclass(frozen=True)
class ProjectiveArrangement:
    """Distinct hyperplanes in CP^(m+2); coefficient vectors have length m+3."""

    ambient_m: int
    hyperplanes: Tuple[ProjectiveHyperplane, ...]

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        if self.ambient_m < 0:
            raise ValueError("ambient parameter m must be >= 0")
        if not self.hyperplanes:
            raise ValueError("an arrangement needs at least one hyperplane")
        width = self.ambient_m + 3
        if any(len(h.coeffs) != width for h in self.hyperplanes):
            raise ValueError(f"coefficient vectors must have length {width}")
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            raise ValueError("hyperplanes must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def coefficient_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_rows([h.coeffs for h in self.hyperplanes])


@dataclass(frozen=True)
class SectionPlane:
    """A projective 2-plane spanned by three independent coordinate vectors."""

    basis: Tuple[Coeffs, Coeffs, Coeffs]

    def __post_init__(self):
        if matrix_rank(ExactMatrix.from_rows(list(self.basis))) != 3:
            raise ValueError("section basis must have rank 3")


def intersection_dimension(arr: ProjectiveArrangement) -> int:
    """Projective dimension of the common intersection; -1 when empty."""
    return arr.ambient_m + 3 - matrix_rank(arr.coefficient_matrix()) - 1


@dataclass(frozen=True)
class ProjectiveVerdict:
    kind: str  # "Trivial" | "InfiniteCyclic" | "FreeOfRank" | "NotFree"
    rank: Optional[int]
    intersection_dim: int

    @property
    def is_free(self) -> bool:
        # the trivial group is free of rank 0 and Z is free of rank 1
        return self.kind in ("Trivial", "InfiniteCyclic", "FreeOfRank")


def decide_free_projective(arr: ProjectiveArrangement) -> ProjectiveVerdict:
    """Freeness of the complement's fundamental group by the rank criterion.

    n = 1 complements are simply connected; n = 2 give Z (free of rank 1);
    for n > 2 the group is free of rank n - 1 exactly when the common
    intersection has dimension >= m (for lines in CP^2: when it is nonempty).
    """
    dim = intersection_dimension(arr)
    if arr.n == 1:
        return ProjectiveVerdict("Trivial", 0, dim)
    if arr.n == 2:
        return ProjectiveVerdict("InfiniteCyclic", 1, dim)
    if dim >= arr.ambient_m:
        return ProjectiveVerdict("FreeOfRank", arr.n - 1, dim)
    return ProjectiveVerdict("NotFree", None, dim)


def decone(arr: ProjectiveArrangement, at: int) -> Arrangement:
    """Send the 1-based ``at``-th line of a CP^2 arrangement to infinity.

    A coordinate change makes that line {Z2' = 0}; the remaining lines
    dehomogenize to affine lines in the chart (Z0'/Z2', Z1'/Z2').  The result
    is a parallel union exactly when all projective lines share a point.
    """
    if arr.ambient_m != 0:
        raise ValueError("decone applies to line arrangements in CP^2")
    if not (1 <= at <= arr.n):
        raise ValueError(f"line index {at} out of range 1..{arr.n}")
    if arr.n < 2:
        raise ValueError("deconing needs at least two lines")
    ell = arr.hyperplanes[at - 1].coeffs
    pivot = next(i for i, c in enumerate(ell) if c)
    spare = [i for i in range(3) if i != pivot]
    basis_rows = [
        tuple(ONE if i == spare[0] else ZERO for i in range(3)),
        tuple(ONE if i == spare[1] else ZERO for i in range(3)),
        ell,
    ]
    change = ExactMatrix.from_rows(basis_rows)
    back = invert(change)
    lines = []
    for idx, h in enumerate(arr.hyperplanes):
        if idx == at - 1:
            continue
        # pull the form through the inverse change: new coeffs = c . back
        c = h.coeffs
        new = tuple(
            c[0] * back.at(0, j) + c[1] * back.at(1, j) + c[2] * back.at(2, j)
            for j in range(3)
        )
        lines.append(AffineLine(new[0], new[1], new[2]))
    return Arrangement(tuple(lines))


def _induced_form(h: ProjectiveHyperplane, basis) -> Tuple[GaussianRational, ...]:
    return tuple(
        sum((c * x for c, x in zip(h.coeffs, vec)), ZERO) for vec in basis
    )


def _moment_vector(tau: GaussianRational, width: int) -> Coeffs:
    out = [ONE]
    for _ in range(width - 1):
        out.append(out[-1] * tau)
    return tuple(out)


def generic_section(
    arr: ProjectiveArrangement, seed: int = 0
) -> Tuple[SectionPlane, ProjectiveArrangement]:
    """A 2-plane meeting the arrangement generically, plus the induced CP^2 lines.

    Candidate planes are spanned by three moment-curve vectors (1, t, t^2, ...)
    at scalars drawn from the fixed candidate sequence.  A candidate is
    accepted when (1) no hyperplane contains the plane, (2) distinct
    hyperplanes cut distinct lines, (3) triples whose full intersection has
    dimension < m miss the plane entirely, and, when the common intersection E
    has dimension exactly m, the plane meets E transversally (in one point).
    """
    if arr.ambient_m < 1:
        raise ValueError("generic sections apply to ambient m >= 1")
    width = arr.ambient_m + 3
    coeff_matrix = arr.coefficient_matrix()
    full_dim = intersection_dimension(arr)
    e_basis = nullspace(coeff_matrix) if full_dim == arr.ambient_m else None

    taus = list(islice(gq_candidates(), 3 * (seed + CANDIDATE_BUDGET)))
    for c in range(seed, seed + CANDIDATE_BUDGET):
        triple = taus[3 * c : 3 * c + 3]
        if len(triple) < 3:
            break
        basis = tuple(_moment_vector(tau, width) for tau in triple)
        forms = [_induced_form(h, basis) for h in arr.hyperplanes]
        # 1) each section is a line: induced form nonzero
        if any(not any(f) for f in forms):
            continue
        induced = [ProjectiveHyperplane(f) for f in forms]
        # 2) pairwise distinct lines, meeting in single points
        if len(set(induced)) != len(induced):
            continue
        # 3) guarded triple condition: small triple intersections miss the plane
        ok = True
        for i, j, k in combinations(range(arr.n), 3):
            rows = [arr.hyperplanes[t].coeffs for t in (i, j, k)]
            triple_dim = width - matrix_rank(ExactMatrix.from_rows(rows)) - 1
            if triple_dim < arr.ambient_m:
                if matrix_rank(ExactMatrix.from_rows([forms[i], forms[j], forms[k]])) != 3:
                    ok = False
                    break
        if not ok:
            continue
        # transversality to E when the common intersection has dimension m
        if e_basis is not None:
            stacked = ExactMatrix.from_rows(list(basis) + [list(v) for v in e_basis])
            if matrix_rank(stacked) != width:
                continue
        plane = SectionPlane(basis)
        section = ProjectiveArrangement(0, tuple(induced))
        return plane, section
    raise GenericityError(
        f"no generic 2-plane among candidates {seed}..{seed + CANDIDATE_BUDGET - 1}"
    )


def cross_validate_theorem4(arr: ProjectiveArrangement, seed: int = 0) -> bool:
    """Rank criterion vs. sectioned CP^2 criterion; True when they agree."""
    if arr.n < 3 or arr.ambient_m < 1:
        raise ValueError("cross-validation needs n >= 3 and m >= 1")
    direct = decide_free_projective(arr)
    _, section = generic_section(arr, seed)
    sectioned = decide_free_projective(section)
    if direct.is_free != sectioned.is_free:
        return False
    if direct.is_free and direct.rank != sectioned.rank:
        return False
    return True
