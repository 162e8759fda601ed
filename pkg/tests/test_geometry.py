"""Arrangement geometry: intersections, singular points, normalization."""

from itertools import combinations, islice

import pytest

from corpus import NONPARALLEL, PARALLEL, arrangement, gq, line, lineabc
from arrpi1.exactnum import GQ, gq_candidates
from arrpi1.geometry import (
    AffineLine,
    Arrangement,
    GenericityError,
    intersect,
    is_parallel_union,
    normalize,
    shear,
    shear_point,
    singular_points,
    slope_intercept,
)

ALL_AFFINE = {**NONPARALLEL, **PARALLEL}


def test_line_canonical_scaling_makes_equality_structural():
    assert line("i", "0") == AffineLine(gq("2i"), gq("-2"), gq("0"))
    with pytest.raises(ValueError):
        AffineLine(GQ(0), GQ(0), GQ(1))


def test_arrangement_rejects_duplicates():
    with pytest.raises(ValueError):
        arrangement(line("1", "0"), line("1", "0"))


def test_intersect_examples():
    assert intersect(line("0", "0"), line("1", "0")) == (GQ(0), GQ(0))
    assert intersect(line("0", "0"), line("0", "1")) is None
    assert intersect(line("i", "0"), line("-i", "2i")) == (GQ(1), GQ(0, 1))
    with pytest.raises(ValueError):
        intersect(line("1", "0"), line("1", "0"))


def test_singular_points_parallel_family_is_empty():
    assert singular_points(PARALLEL["parallel3_real"]) == ()


def test_singular_points_pencil():
    arr = arrangement(line("0", "0"), line("1", "0"), line("-1", "0"))
    pts = singular_points(arr)
    assert len(pts) == 1
    assert pts[0].point == (GQ(0), GQ(0))
    assert pts[0].incident == (1, 2, 3)


def test_singular_points_mixed_pair_parallel():
    arr = arrangement(line("0", "0"), line("1", "0"), line("0", "1"))
    pts = singular_points(arr)
    assert len(pts) == 2
    by_point = {p.point: p.incident for p in pts}
    assert by_point == {(GQ(0), GQ(0)): (1, 2), (GQ(1), GQ(1)): (2, 3)}


def test_singular_points_every_incident_line_contains_point():
    for name, arr in ALL_AFFINE.items():
        for p in singular_points(arr):
            for idx in range(1, arr.n + 1):
                on = arr.line(idx).contains(p.point)
                assert on == (idx in p.incident), (name, idx)


def test_parallel_union_examples():
    assert is_parallel_union(arrangement(line("0", "0"), line("0", "1"), line("0", "i")))
    assert not is_parallel_union(arrangement(line("0", "0"), line("1", "0")))
    assert is_parallel_union(
        arrangement(line("i", "1"), line("i", "2"), line("i", "0"))
    )


def test_parallel_iff_no_singular_point_across_corpus():
    for name, arr in ALL_AFFINE.items():
        assert is_parallel_union(arr) == (len(singular_points(arr)) == 0), name


def test_pair_census_across_corpus():
    for name, arr in ALL_AFFINE.items():
        pts = singular_points(arr)
        from_points = sum(p.multiplicity * (p.multiplicity - 1) // 2 for p in pts)
        crossing = sum(
            1
            for i, j in combinations(range(1, arr.n + 1), 2)
            if arr.line(i).direction() != arr.line(j).direction()
        )
        assert from_points == crossing, name


def test_normalize_identity_on_already_normal_input():
    arr = arrangement(line("0", "0"), line("1", "0"))
    out, change = normalize(arr, seed=0)
    assert out == arr
    assert change.mu == GQ(0)
    assert not change.applied


def test_normalize_shears_vertical_lines():
    arr = Arrangement((lineabc("1", "0", "0"), lineabc("1", "0", "-1")))
    out, change = normalize(arr)
    assert change.applied
    assert all(l.b for l in out.lines)
    assert is_parallel_union(out)


def test_normalize_separates_singular_abscissae():
    # pencil through the origin plus a shifted line, with two singular points
    # forced onto the same vertical by construction
    arr = arrangement(line("i", "0"), line("-i", "0"), line("1", "1"))
    out, change = normalize(arr)
    pts = singular_points(out)
    res = [p.point[0].re for p in pts]
    assert len(set(res)) == len(res)


def test_normalize_deterministic_and_seed_indexed():
    arr = NONPARALLEL["crossing_pair_conjugate"]
    out1, c1 = normalize(arr, seed=0)
    out2, c2 = normalize(arr, seed=0)
    assert out1 == out2 and c1 == c2
    assert c1.mu == GQ(0)  # slopes i, -i are distinct, so mu = 0 is admissible
    # scanning from a later seed takes the first candidate from there on
    _, c3 = normalize(arr, seed=1)
    assert c3.mu == GQ(1)
    assert normalize(arr, seed=1)[1] == c3


def test_normalize_preserves_incidence():
    for name in ("triangle_real", "generic4_complex", "pencil4_complex_apex"):
        arr = NONPARALLEL[name]
        out, change = normalize(arr, seed=0)
        before = singular_points(arr)
        after = singular_points(out)
        mapped = sorted(
            ((shear_point(p.point, change.mu), p.incident) for p in before),
        )
        assert mapped == sorted(((p.point, p.incident) for p in after)), name


def test_normalize_exhausts_on_imaginary_offset_horizontals():
    # z2 = 0 and z2 = i differ by a purely imaginary intercept; the shear
    # family fixes horizontal lines, so no candidate can separate the
    # projections and the search must fail loudly.
    arr = arrangement(line("0", "0"), line("0", "i"))
    with pytest.raises(GenericityError):
        normalize(arr)


def test_shear_transforms_coefficients():
    arr = arrangement(line("0", "0"), line("1", "0"))
    mu = GQ(1, 1)
    out = shear(arr, mu)
    for before, after in zip(arr.lines, out.lines):
        assert after == AffineLine(before.a, before.b - before.a * mu, before.c)


def test_slope_intercept_examples():
    assert slope_intercept(lineabc("1", "-1", "0")) == (GQ(1), GQ(0))
    assert slope_intercept(lineabc("0", "1", "-1")) == (GQ(0), GQ(1))
    m, beta = slope_intercept(lineabc("i", "2", "1-i"))
    assert m == gq("-1/2i")  # -i/2
    assert beta == gq("-1/2+1/2i")
    # substitute a point back: z1 = 2 gives z2 = m*2 + beta
    z2 = m * GQ(2) + beta
    assert not (gq("i") * GQ(2) + GQ(2) * z2 + gq("1-i"))
    with pytest.raises(ValueError):
        slope_intercept(lineabc("1", "0", "0"))
