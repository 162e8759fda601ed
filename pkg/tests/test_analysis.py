"""Exponent sums, commutator validation, witnesses, and verdicts."""

import random

import pytest

from corpus import NONPARALLEL, PARALLEL, arrangement, line
from arrpi1.analysis import (
    FreenessVerdict,
    decide_free_affine,
    exponent_sum,
    exponent_vector,
    lemma1_check,
    lemma1_random_trials,
    validate_commutator_presentation,
    z2_witness,
)
from arrpi1.geometry import singular_points
from arrpi1.presentation import Presentation, Relator, Word, arvola_presentation
from arrpi1.wiring import wire_arrangement

g1, g2 = Word.gen(1), Word.gen(2)


def test_exponent_sum_worked_example():
    w = Word.gen(1, 5) * g2 * Word.gen(1, -1) * Word.gen(2, -3) * Word.gen(1, -1)
    assert exponent_sum(w, 1) == 3
    assert exponent_sum(w, 2) == -2


def test_exponent_sum_empty_word():
    for v in range(1, 5):
        assert exponent_sum(Word.identity(), v) == 0


def test_exponent_sum_additive_randomized():
    rng = random.Random(5)
    for _ in range(2000):
        u = Word(tuple(rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(0, 8))))
        v = Word(tuple(rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(0, 8))))
        for gen in (1, 2, 3):
            assert exponent_sum(u * v, gen) == exponent_sum(u, gen) + exponent_sum(v, gen)


def test_exponent_sum_conjugation_invariant():
    rng = random.Random(6)
    for _ in range(2000):
        u = Word(tuple(rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(0, 6))))
        v = Word(tuple(rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(rng.randint(0, 6))))
        conj = ~v * u * v
        for gen in (1, 2, 3):
            assert exponent_sum(conj, gen) == exponent_sum(u, gen)


def test_validate_commutator_presentation_accepts_pairs():
    p = Presentation(2, (Relator(g2, g1, 0),))
    assert validate_commutator_presentation(p)


class _Corrupted(Relator):
    def flattened(self):
        return Word((1, 2, -1))  # g1 g2 g1^-1: sum in g2 is 1


def test_validate_commutator_presentation_rejects_corruption():
    p = Presentation(2, (_Corrupted(g2, g1, 0),))
    assert not validate_commutator_presentation(p)


def test_validate_across_corpus():
    for name, arr in NONPARALLEL.items():
        p = arvola_presentation(wire_arrangement(arr).diagram)
        assert validate_commutator_presentation(p), name


def test_lemma1_check_refutes_identity():
    p = Presentation(2, (Relator(g2, g1, 0),))
    got = lemma1_check(g1, Word.identity(), p)
    assert got.refuted_at == 1 and not got.consistent


def test_lemma1_check_equal_words_consistent():
    p = Presentation(2, (Relator(g2, g1, 0),))
    assert lemma1_check(g1 * g2, g1 * g2, p).consistent


def test_lemma1_check_cannot_distinguish_commuted_products():
    p = Presentation(2, (Relator(g2, g1, 0),))
    assert lemma1_check(g1 * g2, g2 * g1, p).consistent


def test_lemma1_check_requires_commutator_presentation():
    p = Presentation(2, (_Corrupted(g2, g1, 0),))
    with pytest.raises(ValueError):
        lemma1_check(g1, g2, p)


def test_z2_witness_crossing_pair():
    cert = z2_witness(NONPARALLEL["crossing_pair_real"])
    assert cert.a == g2 and cert.b == g1
    assert cert.sigma_a == (0, 1) and cert.sigma_b == (1, 0)
    assert cert.block == (1, 2) and cert.k == 2
    assert cert.minor() == 1


def test_z2_witness_pencil3():
    cert = z2_witness(NONPARALLEL["pencil3_real"])
    assert cert.a == Word.gen(3)
    assert cert.b == Word.gen(2) * Word.gen(1)
    assert cert.sigma_a == (0, 0, 1) and cert.sigma_b == (1, 1, 0)
    assert abs(cert.minor()) == 1


def test_z2_witness_requires_singular_point():
    with pytest.raises(ValueError):
        z2_witness(PARALLEL["parallel2_real"])


def test_z2_certificates_sound_across_corpus():
    for name, arr in NONPARALLEL.items():
        cert = z2_witness(arr)
        assert abs(cert.minor()) == 1, name
        n = len(cert.sigma_a)
        assert cert.sigma_a == exponent_vector(cert.a, n)
        assert cert.sigma_b == exponent_vector(cert.b, n)


def test_decide_free_parallel_families():
    for name, arr in PARALLEL.items():
        v = decide_free_affine(arr)
        assert v.kind == "FreeOfRank" and v.rank == arr.n, name
        assert v.evidence == "ParallelGeometry"


def test_decide_free_single_line():
    v = decide_free_affine(arrangement(line("1", "0")))
    assert v.kind == "FreeOfRank" and v.rank == 1


def test_decide_not_free_with_certificate():
    v = decide_free_affine(NONPARALLEL["crossing_pair_real"])
    assert v.kind == "NotFree"
    assert v.certificate.is_valid()
    assert v.evidence is v.certificate


def test_verdict_validation():
    with pytest.raises(ValueError):
        FreenessVerdict(kind="FreeOfRank", rank=None, certificate=None)
    with pytest.raises(ValueError):
        FreenessVerdict(kind="NotFree", rank=None, certificate=None)


def test_verdict_geometry_agreement_across_corpus():
    for name, arr in {**NONPARALLEL, **PARALLEL}.items():
        v = decide_free_affine(arr)
        assert v.is_free == (len(singular_points(arr)) == 0), name
        relators = arvola_presentation(wire_arrangement(arr).diagram).relators
        assert v.is_free == (len(relators) == 0), name


def test_lemma1_random_trials_zero_failures():
    p = arvola_presentation(wire_arrangement(NONPARALLEL["pencil4_real"]).diagram)
    assert lemma1_random_trials(p, 2000, random.Random(0)) == 0


def test_lemma1_random_trials_empty_presentation():
    p = Presentation(3, ())
    assert lemma1_random_trials(p, 10, random.Random(0)) == 0
