"""Free-group words and the wiring-diagram rewriting engine.

A word is a freely reduced sequence of signed generator indices (+g for the
generator, -g for its inverse), the representation used throughout: exponent
sums, certificates and text output all read it directly.

Walking the wiring diagram left to right maintains one word per strand
position.  Virtual crossings conjugate one of the two swapped words; an
actual vertex at positions j..k reverses the block, conjugates by trailing
products, and emits the cyclic relation on the pre-event words, which expands
into block-size - 1 commutation relators.  Relators are kept as commutator
pairs (a, b), meaning a b a^-1 b^-1, because every downstream check
(exponent-sum certificates in particular) quantifies over that shape.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from arrpi1.wiring import WiringDiagram


def _reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    stack: List[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word; the empty tuple is the identity."""

    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(x == 0 for x in self.letters):
            raise ValueError("letters are nonzero signed generator indices")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def gen(cls, index: int, power: int = 1) -> "Word":
        if index < 1:
            raise ValueError("generator indices are 1-based")
        sign = 1 if power > 0 else -1
        return cls((sign * index,) * abs(power))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return (~self) ** (-k)
        return Word(self.letters * k)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"g{x}" if x > 0 else f"g{-x}^-1" for x in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


_LETTER_RE = _re.compile(r"^g(\d+)(\^-1)?$")


def parse_word(text: str) -> Word:
    """Inverse of ``str(word)``: whitespace-separated g<idx> / g<idx>^-1, or 'e'."""
    text = text.strip()
    if text == "e" or not text:
        return Word.identity()
    letters = []
    for token in text.split():
        m = _LETTER_RE.match(token)
        if m is None:
            raise ValueError(f"bad word letter: {token!r}")
        idx = int(m.group(1))
        letters.append(-idx if m.group(2) else idx)
    return Word(tuple(letters))


def concat(u: Word, v: Word) -> Word:
    """Freely reduced concatenation u*v."""
    return u * v


def conjugate(u: Word, v: Word) -> Word:
    """v^-1 * u * v, freely reduced."""
    return ~v * u * v


def product(words: Sequence[Word]) -> Word:
    acc = Word.identity()
    for w in words:
        acc = acc * w
    return acc


@dataclass(frozen=True)
class CyclicRelation:
    """Words (w_k, w_{k-1}, ..., w_j) captured at an actual vertex, before the event."""

    words: Tuple[Word, ...]

    def __post_init__(self):
        if len(self.words) < 2:
            raise ValueError("a cyclic relation needs at least two words")


@dataclass(frozen=True)
class Relator:
    """Commutator relator a b a^-1 b^-1, tagged with its source actual event."""

    a: Word
    b: Word
    vertex: int  # index of the actual event in the diagram's event list

    def flattened(self) -> Word:
        return self.a * self.b * ~self.a * ~self.b


@dataclass(frozen=True)
class Presentation:
    n_generators: int
    relators: Tuple[Relator, ...]

    def to_text(self) -> str:
        lines = [f"gens {self.n_generators}"]
        for r in self.relators:
            lines.append(f"[ {r.a} , {r.b} ]")
        return "\n".join(lines) + "\n"


WordTuple = Tuple[Word, ...]


def apply_actual(words: WordTuple, j: int, k: int) -> Tuple[WordTuple, CyclicRelation]:
    """Pass a block of strands through an actual vertex at positions j..k.

    The new tuple lists the block reversed, each entry conjugated by the
    product of the pre-event words below it in the block; the emitted cyclic
    relation is on the pre-event words, top down.
    """
    if not (1 <= j < k <= len(words)):
        raise ValueError(f"bad block [{j}..{k}] for {len(words)} strands")
    block = words[j - 1 : k]
    primes = []
    acc = Word.identity()
    for w in block:
        primes.append(conjugate(w, acc))
        acc = w * acc
    new_words = words[: j - 1] + tuple(reversed(primes)) + words[k:]
    return new_words, CyclicRelation(tuple(reversed(block)))


def apply_virtual(words: WordTuple, j: int, sign: int) -> WordTuple:
    """Pass two strands through a virtual crossing at positions (j, j+1)."""
    if not (1 <= j < len(words)):
        raise ValueError(f"bad position {j} for {len(words)} strands")
    wj, wj1 = words[j - 1], words[j]
    if sign > 0:
        pair = (conjugate(wj1, wj), wj)
    else:
        pair = (wj1, conjugate(wj, ~wj1))
    return words[: j - 1] + pair + words[j + 1 :]


def expand_cyclic(rel: CyclicRelation) -> Tuple[Tuple[Word, Word], ...]:
    """The h-1 commutators equivalent to a cyclic relation on h words.

    Entry i pairs u_{i+1} with the product of the remaining words in cyclic
    order, so each pair (a, b) encodes a*b = b*a.
    """
    u = rel.words
    h = len(u)
    return tuple(
        (u[i], product(u[i + 1 :] + u[:i])) for i in range(h - 1)
    )


def _fold(
    diagram: WiringDiagram, start_event: int, words: WordTuple
) -> Tuple[WordTuple, Tuple[Relator, ...]]:
    relators: List[Relator] = []
    for idx in range(start_event, len(diagram.events)):
        ev = diagram.events[idx]
        if ev.is_actual:
            words, rel = apply_actual(words, ev.block_lo, ev.block_hi)
            relators.extend(Relator(a, b, vertex=idx) for a, b in expand_cyclic(rel))
        else:
            words = apply_virtual(words, ev.block_lo, ev.sign)
    return words, tuple(relators)


def arvola_presentation(diagram: WiringDiagram) -> Presentation:
    """Presentation of the complement's fundamental group read from the diagram.

    Generators are attached to strand positions before the first event; the
    relators are the expanded cyclic relations of the actual vertices, so the
    relator count is the sum of (multiplicity - 1) over singular points.
    """
    start = tuple(Word.gen(i) for i in range(1, diagram.n + 1))
    _, relators = _fold(diagram, 0, start)
    return Presentation(diagram.n, relators)


def rebase_at_first_actual(
    diagram: WiringDiagram,
) -> Tuple[Presentation, Dict[int, Word]]:
    """Present the group on the strand words just before the first actual vertex.

    The virtual crossings preceding that vertex are inverted one by one to
    express each original generator in the new ones; the returned substitution
    maps old generator index -> word in the new generators.  The first actual
    vertex then sees a tuple of plain generators, so its relators involve no
    conjugation.
    """
    first = next((i for i, ev in enumerate(diagram.events) if ev.is_actual), None)
    if first is None:
        raise ValueError("arrangement is parallel; rebase meaningless")
    fresh = tuple(Word.gen(i) for i in range(1, diagram.n + 1))
    _, relators = _fold(diagram, first, fresh)
    # invert the preceding virtual events, last to first
    expr = list(fresh)
    for idx in range(first - 1, -1, -1):
        ev = diagram.events[idx]
        j = ev.block_lo
        alpha, beta = expr[j - 1], expr[j]
        if ev.sign > 0:
            # after-positions held (w_{j+1}^{w_j}, w_j)
            expr[j - 1], expr[j] = beta, beta * alpha * ~beta
        else:
            # after-positions held (w_{j+1}, w_j^{w_{j+1}^-1})
            expr[j - 1], expr[j] = ~alpha * beta * alpha, alpha
    substitution = {i + 1: expr[i] for i in range(diagram.n)}
    return Presentation(diagram.n, relators), substitution


def substitute(w: Word, images: Dict[int, Word]) -> Word:
    """Replace every generator by its image word (inverses map to inverse images)."""
    acc = Word.identity()
    for x in w.letters:
        img = images[abs(x)]
        acc = acc * (img if x > 0 else ~img)
    return acc


def cyclically_reduced(w: Word) -> Word:
    """Strip matching inverse letters from the two ends."""
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        letters = letters[1:-1]
    return Word(tuple(letters))


def conjugate_of_generator(w: Word) -> Optional[int]:
    """The generator index g with w conjugate to g, or None."""
    core = cyclically_reduced(w)
    if len(core.letters) == 1 and core.letters[0] > 0:
        return core.letters[0]
    return None
