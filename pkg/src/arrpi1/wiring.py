"""Braided wiring diagrams for normalized line arrangements.

The construction sweeps a family of complex vertical lines K_t = {z1 = t + i*f(t)}
across the arrangement, where f is a piecewise-linear "graphing map" chosen to
pass through (re z1, im z1) of every singular point and to be constant near
each.  Each line of the arrangement meets K_t in one strand point; projecting
strands to the (t, re z2) plane yields a planar diagram whose vertices are

* actual vertices: images of singular points (all incident strands meet), and
* virtual vertices: crossings of two strands with distinct im z2, carrying a
  sign read off like a knot-diagram crossing.

Strand positions (ranks in the re z2 ordering on a vertical test line) and
line indices are distinct notions; events store positions, the diagram's
order tuples map positions to line indices.  Everything is 1-based.

Degenerate sweeps (coincident projected strands, two vertices on one vertical
line, crossings at slope breakpoints of f) raise :class:`RegularityError`;
:func:`wire_arrangement` retries with the next shear candidate.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from arrpi1.exactnum import GaussianRational
from arrpi1.geometry import (
    CANDIDATE_BUDGET,
    Arrangement,
    CoordinateChange,
    GenericityError,
    SingularPoint,
    normalize_indexed,
    singular_points,
    slope_intercept,
)

ACTUAL = "actual"
VIRTUAL = "virtual"


class RegularityError(RuntimeError):
    """The sweep for this shear is not regular; retry with the next candidate."""


@dataclass(frozen=True)
class GraphingMap:
    """Piecewise-linear f: R -> R, constant outside its extreme breakpoints.

    Breakpoints come in plateau pairs (x - delta, y), (x + delta, y) around
    each singular abscissa x with value y = im z1 of the singular point, with
    a single linear ramp between consecutive plateaus.
    """

    breakpoints: Tuple[Tuple[Fraction, Fraction], ...]
    left_value: Fraction
    right_value: Fraction

    def __post_init__(self):
        ts = [t for t, _ in self.breakpoints]
        if any(t1 >= t2 for t1, t2 in zip(ts, ts[1:])):
            raise ValueError("breakpoint abscissae must increase strictly")
        if self.breakpoints:
            if self.left_value != self.breakpoints[0][1]:
                raise ValueError("left_value must match the first breakpoint value")
            if self.right_value != self.breakpoints[-1][1]:
                raise ValueError("right_value must match the last breakpoint value")

    def value(self, t) -> Fraction:
        t = Fraction(t)
        if not self.breakpoints:
            return self.left_value
        ts = [bt for bt, _ in self.breakpoints]
        if t <= ts[0]:
            return self.left_value
        if t >= ts[-1]:
            return self.right_value
        k = bisect_right(ts, t) - 1
        (t1, v1), (t2, v2) = self.breakpoints[k], self.breakpoints[k + 1]
        return v1 + (v2 - v1) * (t - t1) / (t2 - t1)

    def pieces(self) -> Tuple[Tuple[Optional[Fraction], Optional[Fraction], Fraction, Fraction], ...]:
        """Maximal affine pieces (lo, hi, u, v) with f(t) = u + v*t on [lo, hi].

        ``lo``/``hi`` are None at the infinite ends.  Adjacent pieces with the
        same affine form are merged, so f == const yields one piece covering R.
        """
        if not self.breakpoints:
            return ((None, None, self.left_value, Fraction(0)),)
        raw = [(None, self.breakpoints[0][0], self.left_value, Fraction(0))]
        for (t1, v1), (t2, v2) in zip(self.breakpoints, self.breakpoints[1:]):
            slope = (v2 - v1) / (t2 - t1)
            raw.append((t1, t2, v1 - slope * t1, slope))
        raw.append((self.breakpoints[-1][0], None, self.right_value, Fraction(0)))
        merged: List[list] = []
        for lo, hi, u, v in raw:
            if merged and merged[-1][2] == u and merged[-1][3] == v:
                merged[-1][1] = hi
            else:
                merged.append([lo, hi, u, v])
        return tuple((lo, hi, u, v) for lo, hi, u, v in merged)


def build_graphing_map(points: Sequence[SingularPoint]) -> GraphingMap:
    """Graphing map through (re z1, im z1) of each singular point.

    Plateau half-width is 1/4 of the minimal gap between consecutive singular
    abscissae (1 when there are at most one point), which keeps plateaus
    disjoint and leaves room for the connecting ramps.
    """
    anchors = sorted((p.point[0].re, p.point[0].im) for p in points)
    xs = [x for x, _ in anchors]
    if len(set(xs)) != len(xs):
        raise ValueError("singular abscissae must be pairwise distinct; normalize first")
    if not anchors:
        return GraphingMap((), Fraction(0), Fraction(0))
    if len(anchors) == 1:
        delta = Fraction(1)
    else:
        delta = min(x2 - x1 for x1, x2 in zip(xs, xs[1:])) / 4
    bps = []
    for x, y in anchors:
        bps.append((x - delta, y))
        bps.append((x + delta, y))
    return GraphingMap(tuple(bps), anchors[0][1], anchors[-1][1])


def strand_position(line, t, f: GraphingMap) -> Tuple[Fraction, Fraction]:
    """(re z2, im z2) of the strand of ``line`` on the vertical line at abscissa t.

    The strand point is z2 = m*(t + i*f(t)) + beta for the line z2 = m*z1 + beta.
    """
    m, beta = slope_intercept(line)
    t = Fraction(t)
    ft = f.value(t)
    return (m.re * t - m.im * ft + beta.re, m.im * t + m.re * ft + beta.im)


def sign_virtual(y2_pair: Tuple[Fraction, Fraction], ascending: int) -> int:
    """Sign of a virtual crossing: +1 when the ascending strand passes in front.

    ``y2_pair`` holds the two strands' im z2 at the crossing; ``ascending``
    selects the entry belonging to the strand moving from lower to higher
    re z2 rank.  "In front" means larger im z2.
    """
    y_asc = y2_pair[ascending]
    y_other = y2_pair[1 - ascending]
    if y_asc == y_other:
        raise ValueError("equal depths: this crossing is an intersection, not virtual")
    return 1 if y_asc > y_other else -1


@dataclass(frozen=True)
class WiringEvent:
    """One vertex of the diagram, located by strand positions just before it.

    Actual events reverse the contiguous block [block_lo .. block_hi] of
    strand positions and reference their singular point; virtual events swap
    the adjacent pair (block_lo, block_lo + 1) and carry a sign.
    """

    kind: str
    t: Fraction
    block_lo: int
    block_hi: int
    sign: Optional[int] = None
    point: Optional[SingularPoint] = None

    @property
    def is_actual(self) -> bool:
        return self.kind == ACTUAL


@dataclass(frozen=True)
class WiringDiagram:
    """Initial strand order plus the time-ordered event sequence.

    ``initial_order`` and ``final_order`` map strand position (1-based rank in
    the re z2 ordering) to line index before the first and after the last
    event.
    """

    n: int
    initial_order: Tuple[int, ...]
    events: Tuple[WiringEvent, ...]
    final_order: Tuple[int, ...]

    def actual_events(self) -> Tuple[WiringEvent, ...]:
        return tuple(e for e in self.events if e.is_actual)

    def virtual_events(self) -> Tuple[WiringEvent, ...]:
        return tuple(e for e in self.events if not e.is_actual)

    def replay(self) -> Tuple[int, ...]:
        """Fold every event's block reversal/swap over the initial order."""
        order = list(self.initial_order)
        for ev in self.events:
            order[ev.block_lo - 1 : ev.block_hi] = reversed(
                order[ev.block_lo - 1 : ev.block_hi]
            )
        return tuple(order)

    def dump(self) -> str:
        """Stable text form, one line per event."""
        out = [f"STRANDS {self.n} ORDER {' '.join(map(str, self.initial_order))}"]
        for ev in self.events:
            if ev.is_actual:
                z1, z2 = ev.point.point
                out.append(
                    f"ACTUAL t={ev.t} block={ev.block_lo}..{ev.block_hi} "
                    f"point=({z1},{z2})"
                )
            else:
                sign = "+" if ev.sign > 0 else "-"
                out.append(f"VIRTUAL t={ev.t} pos={ev.block_lo} sign={sign}")
        return "\n".join(out) + "\n"


def _strand_coeffs(lines, piece):
    """Per line: (A, B, C, D) with re z2 = A*t + B and im z2 = C*t + D on the piece."""
    _, _, u, v = piece
    coeffs = []
    for line in lines:
        m, beta = slope_intercept(line)
        coeffs.append(
            (
                m.re - v * m.im,
                beta.re - u * m.im,
                m.im + v * m.re,
                beta.im + u * m.re,
            )
        )
    return coeffs


def compute_wiring_diagram(arr: Arrangement, f: GraphingMap) -> WiringDiagram:
    """Sweep the normalized arrangement along f and emit the event sequence.

    Crossings are found exactly by solving re z2_i(t) = re z2_j(t) on each
    affine piece of f.  A crossing is an actual vertex when it sits at a
    singular abscissa with all incident strands fully coincident there, and a
    virtual vertex (signed) otherwise.  Any coincidence that breaks the
    one-vertex-per-vertical-line discipline raises :class:`RegularityError`.
    """
    n = arr.n
    points = singular_points(arr)
    centers: Dict[Fraction, SingularPoint] = {p.point[0].re: p for p in points}

    crossings: Dict[Fraction, List[Tuple[int, int]]] = {}
    for piece in f.pieces():
        lo, hi, _, _ = piece
        coeffs = _strand_coeffs(arr.lines, piece)
        for i, j in combinations(range(n), 2):
            da = coeffs[i][0] - coeffs[j][0]
            db = coeffs[i][1] - coeffs[j][1]
            if da == 0:
                if db == 0:
                    raise RegularityError(
                        f"strands {i + 1} and {j + 1} project to the same line"
                    )
                continue
            t = -db / da
            if (lo is not None and t == lo) or (hi is not None and t == hi):
                raise RegularityError("crossing at a breakpoint of the graphing map")
            if (lo is None or t > lo) and (hi is None or t < hi):
                crossings.setdefault(t, []).append((i + 1, j + 1))

    times = sorted(crossings)

    def depth(line_index: int, t: Fraction) -> Fraction:
        return strand_position(arr.line(line_index), t, f)[1]

    # classify each abscissa group
    classified = []
    for t in times:
        pairs = crossings[t]
        involved = sorted({idx for pair in pairs for idx in pair})
        point = centers.get(t)
        if point is not None and tuple(involved) == point.incident:
            if set(map(tuple, pairs)) != set(combinations(point.incident, 2)):
                raise RegularityError("incomplete crossing group at a singular point")
            depths = {depth(idx, t) for idx in involved}
            assert len(depths) == 1, "incident strands must coincide at their point"
            classified.append((t, ACTUAL, involved, point))
        elif len(pairs) == 1 and len(involved) == 2:
            if depth(involved[0], t) == depth(involved[1], t):
                raise RegularityError("full strand intersection away from a plateau center")
            classified.append((t, VIRTUAL, involved, None))
        else:
            raise RegularityError(f"multiple vertices on the vertical line t={t}")

    def order_at(t: Fraction) -> Tuple[int, ...]:
        keyed = sorted(
            (strand_position(arr.line(idx), t, f)[0], idx) for idx in range(1, n + 1)
        )
        for (x1, _), (x2, _) in zip(keyed, keyed[1:]):
            if x1 == x2:
                raise RegularityError("strand tie away from any event")
        return tuple(idx for _, idx in keyed)

    t0 = times[0] - 1 if times else Fraction(0)
    initial = order_at(t0)
    current = list(initial)
    events: List[WiringEvent] = []
    for k, (t, kind, involved, point) in enumerate(classified):
        probe = t0 if k == 0 else (classified[k - 1][0] + t) / 2
        if tuple(current) != order_at(probe):
            raise RegularityError("event replay disagrees with direct strand ordering")
        positions = sorted(current.index(idx) + 1 for idx in involved)
        j, kk = positions[0], positions[-1]
        if positions != list(range(j, kk + 1)):
            raise RegularityError("event block is not contiguous in the strand order")
        if kind == ACTUAL:
            events.append(WiringEvent(ACTUAL, t, j, kk, point=point))
        else:
            ascending_line = current[j - 1]
            other_line = current[kk - 1]
            sign = sign_virtual((depth(ascending_line, t), depth(other_line, t)), 0)
            events.append(WiringEvent(VIRTUAL, t, j, kk, sign=sign))
        current[j - 1 : kk] = reversed(current[j - 1 : kk])

    t_end = times[-1] + 1 if times else Fraction(0)
    if tuple(current) != order_at(t_end):
        raise RegularityError("final strand order disagrees with replay")

    diagram = WiringDiagram(n, initial, tuple(events), tuple(current))

    # structural censuses; failures here are logic errors, not bad shears
    actuals = diagram.actual_events()
    assert len(actuals) == len(points)
    assert sorted(e.block_hi - e.block_lo + 1 for e in actuals) == sorted(
        p.multiplicity for p in points
    )
    covered = {}
    for e in actuals:
        for pair in combinations(e.point.incident, 2):
            covered[pair] = covered.get(pair, 0) + 1
    expected_pairs = {
        (i, j)
        for i, j in combinations(range(1, n + 1), 2)
        if arr.line(i).direction() != arr.line(j).direction()
    }
    assert set(covered) == expected_pairs and all(v == 1 for v in covered.values())

    return diagram


@dataclass(frozen=True)
class WiringResult:
    """Everything the sweep produced, for downstream reports and figures."""

    arrangement: Arrangement
    change: CoordinateChange
    points: Tuple[SingularPoint, ...]
    graphing_map: GraphingMap
    diagram: WiringDiagram
    candidate_index: int


def wire_arrangement(arr: Arrangement, seed: int = 0) -> WiringResult:
    """Normalize and sweep, escalating through shear candidates on regularity failures.

    Each retry resumes the candidate scan strictly past the shear that failed,
    so the search makes progress; exhausting the budget raises
    :class:`GenericityError`.
    """
    index = seed
    limit = seed + CANDIDATE_BUDGET
    last_error: Optional[RegularityError] = None
    while index < limit:
        sheared, change, used = normalize_indexed(arr, index)
        if used >= limit:
            break
        try:
            f = build_graphing_map(singular_points(sheared))
            diagram = compute_wiring_diagram(sheared, f)
        except RegularityError as exc:
            last_error = exc
            index = used + 1
            continue
        return WiringResult(
            sheared, change, singular_points(sheared), f, diagram, used
        )
    raise GenericityError(
        f"no regular wiring diagram among shear candidates {seed}..{limit - 1}"
        + (f" (last failure: {last_error})" if last_error else "")
    )
