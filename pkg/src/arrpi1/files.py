"""Arrangement files: a small JSON schema with exact coefficient strings.

Affine:      {"space": "affine2", "lines": [{"a": "1", "b": "-1", "c": "i"}, ...]}
Projective:  {"space": "projective", "m": 1, "hyperplanes": [["1", "0", "i", "0"], ...]}

All coefficients use the Gaussian-rational text grammar; serialization
re-emits canonical forms, so parse -> serialize -> parse is the identity on
validated files.  Parse failures carry a stable error code and the location
of the first offending element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from arrpi1.exactnum import format_gq, parse_gq
from arrpi1.geometry import AffineLine, Arrangement
from arrpi1.projective import ProjectiveArrangement, ProjectiveHyperplane

AFFINE = "affine2"
PROJECTIVE = "projective"


class ParseError(ValueError):
    """Invalid arrangement file; ``code`` is stable, ``location`` best-effort."""

    def __init__(self, code: str, message: str, location: Optional[str] = None):
        self.code = code
        self.location = location
        super().__init__(message)

    def __str__(self) -> str:
        where = f" at {self.location}" if self.location else ""
        return f"{self.code}{where}: {super().__str__()}"


@dataclass(frozen=True)
class ArrangementFile:
    space: str
    affine: Optional[Arrangement] = None
    projective: Optional[ProjectiveArrangement] = None

    @property
    def m(self) -> Optional[int]:
        return self.projective.ambient_m if self.projective else None


def _gq(text, location: str):
    if not isinstance(text, str):
        raise ParseError("MALFORMED_GQ", f"expected a coefficient string, got {text!r}", location)
    try:
        return parse_gq(text)
    except ValueError as exc:
        raise ParseError("MALFORMED_GQ", str(exc), location) from exc


def parse_arrangement(text: str) -> ArrangementFile:
    """Validate an arrangement file, or raise :class:`ParseError` at the first fault."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            "MALFORMED_JSON", exc.msg, f"line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(data, dict):
        raise ParseError("SCHEMA", "top level must be a JSON object")
    space = data.get("space")
    if space == AFFINE:
        if "hyperplanes" in data:
            raise ParseError("SCHEMA", "affine2 files use 'lines', not 'hyperplanes'")
        return ArrangementFile(AFFINE, affine=_parse_affine(data))
    if space == PROJECTIVE:
        if "lines" in data:
            raise ParseError("SCHEMA", "projective files use 'hyperplanes', not 'lines'")
        return ArrangementFile(PROJECTIVE, projective=_parse_projective(data))
    raise ParseError("BAD_SPACE", f"space must be {AFFINE!r} or {PROJECTIVE!r}, got {space!r}")


def _parse_affine(data: dict) -> Arrangement:
    entries = data.get("lines")
    if not isinstance(entries, list) or not entries:
        raise ParseError("SCHEMA", "'lines' must be a nonempty array")
    lines = []
    for i, entry in enumerate(entries):
        loc = f"lines[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"a", "b", "c"}:
            raise ParseError("SCHEMA", "each line needs exactly the keys a, b, c", loc)
        a = _gq(entry["a"], loc + ".a")
        b = _gq(entry["b"], loc + ".b")
        c = _gq(entry["c"], loc + ".c")
        if not a and not b:
            raise ParseError("ZERO_COEFFICIENTS", "(a, b) must not both vanish", loc)
        line = AffineLine(a, b, c)
        if line in lines:
            raise ParseError("DUPLICATE_LINE", "line repeats an earlier one", loc)
        lines.append(line)
    return Arrangement(tuple(lines))


def _parse_projective(data: dict) -> ProjectiveArrangement:
    m = data.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ParseError("BAD_M", f"'m' must be an integer >= 0, got {m!r}")
    entries = data.get("hyperplanes")
    if not isinstance(entries, list) or not entries:
        raise ParseError("SCHEMA", "'hyperplanes' must be a nonempty array")
    width = m + 3
    planes = []
    for i, entry in enumerate(entries):
        loc = f"hyperplanes[{i}]"
        if not isinstance(entry, list) or len(entry) != width:
            raise ParseError("WRONG_LENGTH", f"expected {width} coefficient strings", loc)
        coeffs = tuple(_gq(x, f"{loc}[{j}]") for j, x in enumerate(entry))
        if not any(coeffs):
            raise ParseError("ZERO_COEFFICIENTS", "coefficient vector is zero", loc)
        plane = ProjectiveHyperplane(coeffs)
        if plane in planes:
            raise ParseError("DUPLICATE_LINE", "hyperplane repeats an earlier one", loc)
        planes.append(plane)
    return ProjectiveArrangement(m, tuple(planes))


def serialize_arrangement(af: ArrangementFile) -> str:
    """Canonical JSON text; stable between runs."""
    if af.space == AFFINE:
        obj = {
            "space": AFFINE,
            "lines": [
                {"a": format_gq(l.a), "b": format_gq(l.b), "c": format_gq(l.c)}
                for l in af.affine.lines
            ],
        }
    else:
        obj = {
            "space": PROJECTIVE,
            "m": af.projective.ambient_m,
            "hyperplanes": [
                [format_gq(c) for c in h.coeffs] for h in af.projective.hyperplanes
            ],
        }
    return json.dumps(obj, indent=2) + "\n"
