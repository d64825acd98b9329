"""Dotted chord diagrams on a directed arc.

A diagram of dot-degree ``m`` is stored as an involution on the positions
``0..m-1``: a fixed point is a dot, a 2-cycle is a chord.  The textual code
uses ``.`` for a dot and a letter (or ``[n]`` past 26 chords) for each chord
endpoint, with letters assigned in order of first occurrence.
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

WHITE = "white"
BLACK = "black"

_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
_TOKEN = re.compile(r"\.|[A-Za-z]|\[(\d+)\]")

DEFAULT_MAX_DEGREE = 12


class DiagramError(ValueError):
    """Malformed diagram code or a diagram outside an operation's domain."""


def max_degree() -> int:
    """Enumeration bound, overridable with ``DOTTED_CHORDS_MAX_DEGREE``."""
    raw = os.environ.get("DOTTED_CHORDS_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        return int(raw)
    except ValueError:
        raise DiagramError(f"DOTTED_CHORDS_MAX_DEGREE is not an integer: {raw!r}")


def check_bound(m: int, what: str = "degree") -> None:
    if m < 0:
        raise DiagramError(f"{what} must be nonnegative, got {m}")
    bound = max_degree()
    if m > bound:
        raise DiagramError(f"{what} {m} exceeds the configured bound {bound}")


def _chord_token(k: int) -> str:
    # k is 0-based
    return _LETTERS[k] if k < 26 else f"[{k + 1}]"


@dataclass(frozen=True, order=False)
class Diagram:
    """An immutable dotted chord diagram.

    ``partner[i]`` is the 0-based position paired with position ``i``; dots
    are fixed points.  Use :func:`parse` or :meth:`from_pairs` to build one.
    """

    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        for i, j in enumerate(p):
            if not 0 <= j < len(p) or p[j] != i:
                raise DiagramError(f"not an involution: {p}")

    @classmethod
    def from_pairs(cls, m: int, pairs: Sequence[tuple[int, int]]) -> Diagram:
        """Build from 1-based ``(i, j)`` pairs; ``(i, i)`` is a dot."""
        partner = [-1] * m
        for i, j in pairs:
            for x in (i, j):
                if not 1 <= x <= m:
                    raise DiagramError(f"position {x} outside 1..{m}")
                if partner[x - 1] != -1:
                    raise DiagramError(f"position {x} used twice")
            partner[i - 1] = j - 1
            partner[j - 1] = i - 1
        if -1 in partner:
            raise DiagramError(f"position {partner.index(-1) + 1} is unpaired")
        return cls(tuple(partner))

    @classmethod
    def dots(cls, n: int) -> Diagram:
        """The chordless diagram ``[n]``."""
        return cls(tuple(range(n)))

    # -- basic data -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.partner)

    @property
    def pairing(self) -> tuple[int, ...]:
        """1-based involution array."""
        return tuple(j + 1 for j in self.partner)

    @cached_property
    def chords(self) -> tuple[tuple[int, int], ...]:
        """0-based ``(start, end)`` of each chord, ordered by start."""
        return tuple((i, j) for i, j in enumerate(self.partner) if i < j)

    @cached_property
    def dot_positions(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.partner) if i == j)

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """All pairs (chords and dots) in label order, i.e. by first point."""
        return tuple((i, j) for i, j in enumerate(self.partner) if i <= j)

    @property
    def num_chords(self) -> int:
        return len(self.chords)

    @property
    def num_dots(self) -> int:
        return len(self.dot_positions)

    @property
    def is_empty(self) -> bool:
        return not self.partner

    @cached_property
    def code(self) -> str:
        return render(self)

    @cached_property
    def sort_key(self) -> tuple:
        """Graded-lexicographic key: degree first, then the canonical code."""
        tokens = []
        labels: dict[int, int] = {}
        for i, j in enumerate(self.partner):
            if i == j:
                tokens.append(0)
            else:
                start = min(i, j)
                if start not in labels:
                    labels[start] = len(labels) + 1
                tokens.append(labels[start])
        return (len(self.partner), tuple(tokens))

    def __lt__(self, other: Diagram) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return self.code

    def __repr__(self) -> str:
        return f"Diagram({self.code!r})"

    def __mul__(self, other: Diagram) -> Diagram:
        return concat(self, other)

    # -- structure --------------------------------------------------------

    def subdiagram(self, pair_indices: Sequence[int]) -> Diagram:
        """Re-embed the selected pairs (indices into :attr:`pairs`) on their own arc."""
        points = sorted(x for k in pair_indices for x in set(self.pairs[k]))
        index = {x: n for n, x in enumerate(points)}
        return Diagram(tuple(index[self.partner[x]] for x in points))


EMPTY = Diagram(())
DOT = Diagram((0,))
CHORD = Diagram((1, 0))


def parse(code: str) -> Diagram:
    """Parse a diagram code; chord tokens may be any letters or ``[n]`` indices.

    >>> parse("XYYX").code
    'ABBA'
    """
    tokens = []
    pos = 0
    while pos < len(code):
        if code[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(code, pos)
        if match is None:
            raise DiagramError(f"bad token at offset {pos} in {code!r}")
        tokens.append(match.group(0))
        pos = match.end()

    seen: dict[str, int] = {}
    partner = list(range(len(tokens)))
    for i, tok in enumerate(tokens):
        if tok == ".":
            continue
        if tok.startswith("[") and int(tok[1:-1]) == 0:
            raise DiagramError(f"chord index must be positive: {tok}")
        if tok not in seen:
            seen[tok] = i
        elif seen[tok] >= 0:
            j = seen[tok]
            partner[i], partner[j] = j, i
            seen[tok] = -1
        else:
            raise DiagramError(f"chord token {tok!r} occurs more than twice")
    unclosed = [tok for tok, j in seen.items() if j >= 0]
    if unclosed:
        raise DiagramError(f"chord token {unclosed[0]!r} occurs only once")
    return Diagram(tuple(partner))


def render(d: Diagram) -> str:
    """Canonical code of ``d``."""
    out = []
    labels: dict[int, int] = {}
    for i, j in enumerate(d.partner):
        if i == j:
            out.append(".")
            continue
        start = min(i, j)
        if start not in labels:
            labels[start] = len(labels)
        out.append(_chord_token(labels[start]))
    return "".join(out)


def as_diagram(d: Diagram | str) -> Diagram:
    return parse(d) if isinstance(d, str) else d


def degree(d: Diagram) -> int:
    return d.degree


def concat(a: Diagram, b: Diagram) -> Diagram:
    """Glue the arc of ``b`` after the arc of ``a``."""
    shift = a.degree
    return Diagram(a.partner + tuple(j + shift for j in b.partner))


def concat_all(parts: Sequence[Diagram]) -> Diagram:
    partner: list[int] = []
    for part in parts:
        shift = len(partner)
        partner.extend(j + shift for j in part.partner)
    return Diagram(tuple(partner))


# -- predicates -----------------------------------------------------------


def crosses(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Whether two chords ``(start, end)`` interleave."""
    return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]


def is_regular(d: Diagram) -> bool:
    """No two non-crossing chords are nested."""
    chords = d.chords
    for s, a in enumerate(chords):
        for b in chords[s + 1:]:
            # b starts after a; nested iff b ends before a does
            if b[1] < a[1]:
                return False
    return True


def is_quasiplanar(d: Diagram) -> bool:
    """No dot lies strictly between the endpoints of a chord."""
    return not any(i < z < j for i, j in d.chords for z in d.dot_positions)


@dataclass(frozen=True)
class IntersectionGraph:
    """Labelled intersection graph: one vertex per pair, labels 1..K by first point.

    ``adjacency`` is the extended incidence matrix, 0-indexed by label - 1.
    """

    colors: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.colors)

    def edges(self) -> list[tuple[int, int]]:
        """1-based label pairs ``(s, t)`` with ``s < t``."""
        return [
            (s + 1, t + 1)
            for s in range(self.size)
            for t in range(s + 1, self.size)
            if self.adjacency[s][t]
        ]

    def is_connected(self) -> bool:
        if self.size == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            s = queue.popleft()
            for t, bit in enumerate(self.adjacency[s]):
                if bit and t not in seen:
                    seen.add(t)
                    queue.append(t)
        return len(seen) == self.size

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for s, color in enumerate(self.colors):
            style = "filled" if color == BLACK else "solid"
            fill = "black" if color == BLACK else "white"
            font = "white" if color == BLACK else "black"
            lines.append(
                f'  {s + 1} [label="{s + 1}", shape=circle, style={style}, '
                f"fillcolor={fill}, fontcolor={font}];"
            )
        for s, t in self.edges():
            lines.append(f"  {s} -- {t};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "labels": list(range(1, self.size + 1)),
            "colors": list(self.colors),
            "adjacency": [list(row) for row in self.adjacency],
        }


def intersection_graph(d: Diagram) -> IntersectionGraph:
    pairs = d.pairs
    k = len(pairs)
    adj = [[0] * k for _ in range(k)]
    for s in range(k):
        a = pairs[s]
        for t in range(s + 1, k):
            b = pairs[t]
            a_dot, b_dot = a[0] == a[1], b[0] == b[1]
            if a_dot and b_dot:
                edge = False
            elif a_dot:
                edge = b[0] < a[0] < b[1]
            elif b_dot:
                edge = a[0] < b[0] < a[1]
            else:
                edge = crosses(a, b)
            if edge:
                adj[s][t] = adj[t][s] = 1
    colors = tuple(BLACK if i == j else WHITE for i, j in pairs)
    return IntersectionGraph(colors, tuple(tuple(row) for row in adj))


def is_connected(d: Diagram) -> bool:
    return intersection_graph(d).is_connected()


def cut_points(d: Diagram) -> list[int]:
    """Positions ``0 < c <= m`` such that no chord joins ``[0, c)`` to ``[c, m)``.

    The last entry is always ``m`` for a nonempty diagram.
    """
    cuts = []
    reach = 0
    for i, j in enumerate(d.partner):
        reach = max(reach, j)
        if reach == i:
            cuts.append(i + 1)
    return cuts


def cut_pieces(d: Diagram) -> list[Diagram]:
    """Split ``d`` at every cut point; the pieces concatenate back to ``d``."""
    pieces = []
    start = 0
    for cut in cut_points(d):
        pieces.append(Diagram(tuple(j - start for j in d.partner[start:cut])))
        start = cut
    return pieces


def concat_factorize(d: Diagram) -> list[Diagram]:
    """Unique factorization of a regular diagram into connected pieces.

    For a regular diagram two chords whose spans overlap must cross, so the
    pieces between cut points are exactly the connected factors.
    """
    if not is_regular(d):
        raise DiagramError(f"{d.code!r} is not regular; factorization is undefined")
    return cut_pieces(d)


def momentum_signature(d: Diagram) -> tuple[str, ...]:
    """Per-position momentum symbols: ``k<i>`` / ``-k<i>`` on chords, ``u<j>`` on dots."""
    out = []
    chord_label: dict[int, int] = {}
    dots = 0
    for i, j in enumerate(d.partner):
        if i == j:
            dots += 1
            out.append(f"u{dots}")
        elif i < j:
            chord_label[i] = len(chord_label) + 1
            out.append(f"k{chord_label[i]}")
        else:
            out.append(f"-k{chord_label[j]}")
    return tuple(out)


# -- enumeration ----------------------------------------------------------


def iter_diagrams(m: int, *, dots: bool = True) -> Iterator[Diagram]:
    """All involutions on ``m`` points in graded-lexicographic code order.

    With ``dots=False`` only perfect matchings (chord-only diagrams) are produced.
    """
    partner = [-1] * m
    open_starts: list[int] = []

    def rec(i: int) -> Iterator[Diagram]:
        if i == m:
            yield Diagram(tuple(partner))
            return
        remaining = m - i
        if dots and remaining > len(open_starts):
            partner[i] = i
            yield from rec(i + 1)
        # closing tokens come before the fresh letter, in letter order
        for k, start in enumerate(open_starts):
            partner[i], partner[start] = start, i
            del open_starts[k]
            yield from rec(i + 1)
            open_starts.insert(k, start)
            partner[start] = -1
        if remaining - 1 >= len(open_starts) + 1:
            open_starts.append(i)
            yield from rec(i + 1)
            open_starts.pop()
        partner[i] = -1

    yield from rec(0)


def enumerate_diagrams(m: int) -> list[Diagram]:
    """Basis of the degree-``m`` space: every dotted chord diagram on ``m`` points."""
    check_bound(m)
    return list(iter_diagrams(m))


def pretty(d: Diagram | str) -> str:
    """ASCII art: chords as brackets above the arc, dots as ``o`` on it."""
    d = as_diagram(d)
    width = 3 * d.degree + 2
    chords = sorted(d.chords, key=lambda c: (c[0] - c[1], c[0]))
    grid = [[" "] * width for _ in chords]
    for r, (a, b) in enumerate(chords):
        xa, xb = 3 * a + 1, 3 * b + 1
        for x in range(xa, xb + 1):
            if grid[r][x] == " ":
                grid[r][x] = "-"
        grid[r][xa] = grid[r][xb] = "+"
        for below in range(r + 1, len(chords)):
            for x in (xa, xb):
                grid[below][x] = "|"
    axis = ["-"] * width
    for i, j in enumerate(d.partner):
        axis[3 * i + 1] = "o" if i == j else "+"
    axis[-1] = ">"
    lines = ["".join(row).rstrip() for row in grid] + ["".join(axis)]
    return "\n".join(lines)
