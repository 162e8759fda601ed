"""Group-theoretic decision layer: exponent sums, witnesses, freeness verdicts.

Exponent sums are the workhorse: in any presentation whose relators are all
commutators, rewriting by relator insertion/deletion never changes any
exponent sum, so two words with different sums are distinct group elements.
That one-directional test powers the rank-2 free-abelian witness: the first
actual vertex (after rebasing generators there) commutes A = g_k with
B = g_{k-1} * ... * g_j, and the exponent vectors of A and B contain an
identity 2x2 minor, so powers A^i B^j collide only trivially.

Freeness itself is decided from the geometry: a union of parallel lines has
free complement fundamental group of rank n, and any arrangement with a
singular point contains Z + Z, which no free group does.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from arrpi1.geometry import Arrangement, is_parallel_union, singular_points
from arrpi1.presentation import (
    Presentation,
    Word,
    product,
    rebase_at_first_actual,
)
from arrpi1.wiring import WiringDiagram, WiringResult, wire_arrangement

ExponentVector = Tuple[int, ...]


def exponent_sum(w: Word, generator: int) -> int:
    """Sum of signed exponents of one generator; 0 on the empty word."""
    if generator < 1:
        raise ValueError("generator indices are 1-based")
    return sum(1 if x == generator else -1 for x in w.letters if abs(x) == generator)


def exponent_vector(w: Word, n: int) -> ExponentVector:
    return tuple(exponent_sum(w, v) for v in range(1, n + 1))


def validate_commutator_presentation(p: Presentation) -> bool:
    """Every relator, flattened to a b a^-1 b^-1, has zero sums in all generators.

    Checked on the flattened words, independently of the structural pair
    storage.
    """
    for r in p.relators:
        flat = r.flattened()
        if any(exponent_sum(flat, v) for v in range(1, p.n_generators + 1)):
            return False
    return True


@dataclass(frozen=True)
class Lemma1Result:
    """Outcome of the exponent-sum comparison of two words.

    ``refuted_at`` names a generator whose sums differ (so the words are
    distinct in the group); None means the sums agree, which by itself proves
    nothing.
    """

    refuted_at: Optional[int]

    @property
    def consistent(self) -> bool:
        return self.refuted_at is None


def lemma1_check(a: Word, b: Word, p: Presentation) -> Lemma1Result:
    """Refute a = b via exponent sums, when possible."""
    if not validate_commutator_presentation(p):
        raise ValueError("presentation relators are not all commutators")
    for v in range(1, p.n_generators + 1):
        if exponent_sum(a, v) != exponent_sum(b, v):
            return Lemma1Result(refuted_at=v)
    return Lemma1Result(refuted_at=None)


@dataclass(frozen=True)
class Z2Argument:
    """Which exponent coordinates force the two powers to match.

    If A^{i0} B^{j0} = A^{i1} B^{j1}, the difference word W has
    sum(coordinate_for_a) = i0 - i1 and sum(coordinate_for_b) = j0 - j1, and
    both must vanish, so <A, B> is free abelian of rank 2.
    """

    coordinate_for_a: int
    coordinate_for_b: int
    minor_determinant: int


@dataclass(frozen=True)
class Z2Certificate:
    """Machine-checkable witness of a rank-2 free-abelian subgroup.

    A and B are words in the rebased generators; they commute because the
    first actual vertex's first expanded relator is exactly (A, B).  The
    exponent vectors carry an identity 2x2 minor at (k, j), which is what
    makes the certificate sound.
    """

    a: Word
    b: Word
    k: int
    block: Tuple[int, int]
    sigma_a: ExponentVector
    sigma_b: ExponentVector
    argument: Z2Argument

    def minor(self) -> int:
        """Determinant of the (sigma_a, sigma_b) minor at columns (k, j)."""
        k = self.argument.coordinate_for_a - 1
        j = self.argument.coordinate_for_b - 1
        return self.sigma_a[k] * self.sigma_b[j] - self.sigma_a[j] * self.sigma_b[k]

    def is_valid(self) -> bool:
        return abs(self.minor()) == 1


@dataclass(frozen=True)
class FreenessVerdict:
    """Decision plus evidence: parallel geometry, or a Z + Z witness."""

    kind: str  # "FreeOfRank" | "NotFree"
    rank: Optional[int]
    certificate: Optional[Z2Certificate]

    def __post_init__(self):
        if self.kind == "FreeOfRank":
            if self.rank is None or self.certificate is not None:
                raise ValueError("a free verdict carries a rank and no certificate")
        elif self.kind == "NotFree":
            if self.certificate is None or not self.certificate.is_valid():
                raise ValueError("a not-free verdict needs a valid certificate")
        else:
            raise ValueError(f"unknown verdict kind {self.kind!r}")

    @property
    def is_free(self) -> bool:
        return self.kind == "FreeOfRank"

    @property
    def evidence(self) -> Union[str, Z2Certificate]:
        return "ParallelGeometry" if self.is_free else self.certificate


def certificate_from_wiring(result: WiringResult) -> Z2Certificate:
    """Build the witness from an already-computed wiring of the arrangement."""
    diagram = result.diagram
    presentation, _ = rebase_at_first_actual(diagram)
    first = next(ev for ev in diagram.events if ev.is_actual)
    j, k = first.block_lo, first.block_hi
    a = Word.gen(k)
    b = product([Word.gen(i) for i in range(k - 1, j - 1, -1)])
    lead = presentation.relators[0]
    assert (lead.a, lead.b) == (a, b), "first relator must be the witness pair"
    n = presentation.n_generators
    cert = Z2Certificate(
        a=a,
        b=b,
        k=k,
        block=(j, k),
        sigma_a=exponent_vector(a, n),
        sigma_b=exponent_vector(b, n),
        argument=Z2Argument(coordinate_for_a=k, coordinate_for_b=j, minor_determinant=1),
    )
    assert cert.is_valid()
    return cert


def z2_witness(arr: Arrangement, seed: int = 0) -> Z2Certificate:
    """Witness a Z + Z subgroup of the complement's fundamental group.

    Runs normalize -> wiring -> rebase and reads the first actual vertex's
    commuting pair.  Requires at least one singular point.
    """
    if not singular_points(arr):
        raise ValueError("no singular point; a rank-2 abelian witness needs one")
    return certificate_from_wiring(wire_arrangement(arr, seed))


def decide_free_affine(arr: Arrangement, seed: int = 0) -> FreenessVerdict:
    """Free of rank n exactly for parallel unions; otherwise certified not free.

    The free branch is decided by slope comparison alone; the not-free branch
    carries the Z + Z certificate.  A single line counts as a parallel family
    of one.
    """
    if is_parallel_union(arr):
        return FreenessVerdict(kind="FreeOfRank", rank=arr.n, certificate=None)
    return FreenessVerdict(kind="NotFree", rank=None, certificate=z2_witness(arr, seed))


# -- randomized rewriting trials ---------------------------------------------


def lemma1_random_trials(
    p: Presentation, trials: int, rng: random.Random, word_length: int = 12
) -> int:
    """Randomized insertion/deletion of relators; returns the failure count.

    Starting from a random unreduced word, each trial splices in (or deletes,
    when an occurrence exists) one of the flattened relators, an inverse
    relator, or a trivial relator g g^-1, then checks that every exponent sum
    is unchanged.  Zero failures is the expected outcome for any commutator
    presentation.
    """
    n = p.n_generators
    moves: List[Tuple[int, ...]] = []
    for r in p.relators:
        flat = r.flattened().letters
        moves.append(flat)
        moves.append(tuple(-x for x in reversed(flat)))
    for g in range(1, n + 1):
        moves.append((g, -g))
        moves.append((-g, g))
    if not moves:
        return 0

    word = [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(word_length)]

    def sums(letters: Sequence[int]) -> ExponentVector:
        out = [0] * n
        for x in letters:
            out[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(out)

    baseline = sums(word)
    failures = 0
    for _ in range(trials):
        move = list(rng.choice(moves))
        deleted = False
        if rng.random() < 0.5:
            spots = [
                i
                for i in range(len(word) - len(move) + 1)
                if word[i : i + len(move)] == move
            ]
            if spots:
                at = rng.choice(spots)
                del word[at : at + len(move)]
                deleted = True
        if not deleted:
            at = rng.randint(0, len(word))
            word[at:at] = move
        if sums(word) != baseline:
            failures += 1
    return failures
