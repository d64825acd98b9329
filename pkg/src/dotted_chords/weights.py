"""Twist data of dotless diagrams and the framing / 4T checks.

The twisting phase of a diagram is ``exp(-i sum_{s<t} J_st k_s theta k_t)``
with ``theta`` antisymmetric.  It is encoded here by the antisymmetric
integer matrix ``T`` with ``T[s][t] = J[s][t]`` for ``s < t``; ``theta`` is
never instantiated.  Two phases are formally equal when one matrix turns
into the other under a renaming ``k_s -> eps_s k_{sigma(s)}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .diagram import Diagram, DiagramError, as_diagram, crosses, intersection_graph, parse

RhsChoice = Literal["middle", "right"]


@dataclass(frozen=True)
class TwistMatrix:
    """Antisymmetric ``{-1, 0, 1}`` matrix over the labels of a diagram (0-indexed)."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, st: tuple[int, int]) -> int:
        s, t = st
        return self.entries[s][t]

    def zero_rows(self) -> list[int]:
        return [s for s, row in enumerate(self.entries) if not any(row)]

    def flipped(self, labels: Sequence[int]) -> TwistMatrix:
        """Substitute ``k_s -> -k_s`` for the given labels."""
        eps = [-1 if s in labels else 1 for s in range(self.size)]
        return TwistMatrix(tuple(
            tuple(eps[s] * eps[t] * v for t, v in enumerate(row))
            for s, row in enumerate(self.entries)
        ))

    def relabelled(self, sigma: Sequence[int]) -> TwistMatrix:
        """Matrix after renaming label ``s`` to ``sigma[s]``."""
        n = self.size
        out = [[0] * n for _ in range(n)]
        for s in range(n):
            for t in range(n):
                out[sigma[s]][sigma[t]] = self.entries[s][t]
        return TwistMatrix(tuple(tuple(r) for r in out))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def twist_matrix(d: Diagram | str) -> TwistMatrix:
    """Antisymmetrized extended incidence matrix, labels in order of first point."""
    d = as_diagram(d)
    adj = intersection_graph(d).adjacency
    n = len(adj)
    return TwistMatrix(tuple(
        tuple(adj[s][t] if s < t else -adj[s][t] for t in range(n))
        for s in range(n)
    ))


def _require_dotless(d: Diagram) -> None:
    if d.num_dots:
        raise DiagramError(f"{d.code!r} has dots; weight checks use dotless diagrams")


def has_isolated_chord(d: Diagram | str) -> bool:
    """Direct check: some chord crosses no other chord."""
    d = as_diagram(d)
    chords = d.chords
    return any(
        not any(crosses(a, b) for b in chords if b is not a) for a in chords
    )


def framing_check(d: Diagram | str) -> bool:
    """True iff ``d`` contains an isolated chord, read off as a zero row of its twist matrix.

    Such diagrams are sent to zero by the twisted integral once the test
    function has total integral zero.
    """
    d = as_diagram(d)
    _require_dotless(d)
    return bool(twist_matrix(d).zero_rows())


# -- phase equivalence -------------------------------------------------------


@dataclass(frozen=True)
class Equivalence:
    """Renaming ``k_s -> eps_s k_{sigma(s)}`` that carries one twist matrix to another."""

    sigma: tuple[int, ...]
    flips: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "permutation": [s + 1 for s in self.sigma],
            "flipped_labels": [s + 1 for s in self.flips],
        }


def _solve_flips(a: TwistMatrix, b: TwistMatrix, sigma, allow_flips: bool):
    """Sign assignment with ``eps_s eps_t a[s,t] = b[sigma s, sigma t]``, or None."""
    n = a.size
    eps = [0] * n
    for root in range(n):
        if eps[root]:
            continue
        eps[root] = 1
        stack = [root]
        while stack:
            s = stack.pop()
            for t in range(n):
                v = a.entries[s][t]
                w = b.entries[sigma[s]][sigma[t]]
                if (v == 0) != (w == 0):
                    return None
                if v == 0 or s == t:
                    continue
                want = eps[s] * (1 if v == w else -1)
                if eps[t] == 0:
                    eps[t] = want
                    stack.append(t)
                elif eps[t] != want:
                    return None
    if not allow_flips and any(e < 0 for e in eps):
        return None
    return eps


def find_equivalence(
    a: TwistMatrix, b: TwistMatrix, *, allow_flips: bool = True
) -> Equivalence | None:
    """Search label permutations (and optionally per-label sign flips) mapping ``a`` to ``b``.

    Flips are solved per permutation by sign propagation, so the search is
    over at most ``n!`` permutations, pruned by the nonzero pattern.
    """
    n = a.size
    if b.size != n:
        return None
    deg_a = [sum(1 for v in row if v) for row in a.entries]
    deg_b = [sum(1 for v in row if v) for row in b.entries]
    if sorted(deg_a) != sorted(deg_b):
        return None

    sigma = [-1] * n
    used = [False] * n

    def rec(s: int):
        if s == n:
            eps = _solve_flips(a, b, sigma, allow_flips)
            if eps is None:
                return None
            return Equivalence(tuple(sigma), tuple(i for i in range(n) if eps[i] < 0))
        for t in range(n):
            if used[t] or deg_b[t] != deg_a[s]:
                continue
            if any(
                (a.entries[s][r] == 0) != (b.entries[t][sigma[r]] == 0)
                for r in range(s)
            ):
                continue
            sigma[s] = t
            used[t] = True
            found = rec(s + 1)
            used[t] = False
            sigma[s] = -1
            if found is not None:
                return found
        return None

    return rec(0)


def best_relabelling(a: TwistMatrix, b: TwistMatrix) -> tuple[int, Equivalence, int]:
    """Renaming with the fewest mismatched entries, plus the worst label under it.

    Returns ``(mismatches, renaming, offending_label)``; brute force over
    ``n! * 2**n`` renamings, meant for witness reporting on small diagrams.
    """
    n = a.size
    best = None
    for sigma in itertools.permutations(range(n)):
        for mask in range(1 << n):
            eps = [-1 if mask >> s & 1 else 1 for s in range(n)]
            bad_per_label = [0] * n
            total = 0
            for s in range(n):
                for t in range(s + 1, n):
                    if eps[s] * eps[t] * a.entries[s][t] != b.entries[sigma[s]][sigma[t]]:
                        bad_per_label[s] += 1
                        bad_per_label[t] += 1
                        total += 1
            key = (total, bin(mask).count("1"))
            if best is None or key < best[0]:
                worst = max(range(n), key=lambda s: bad_per_label[s]) if total else -1
                flips = tuple(s for s in range(n) if eps[s] < 0)
                best = (key, Equivalence(tuple(sigma), flips), worst)
        if best[0][0] == 0 and best[0][1] == 0:
            break
    (total, _), equiv, worst = best
    return total, equiv, worst


# -- 4T contexts -------------------------------------------------------------

_REGIONS = "123"


@dataclass(frozen=True)
class FourTContext:
    """Spectator chords around three marked regions of the arc.

    ``template`` is a dotless code over spectator letters in which the region
    markers ``1``, ``2``, ``3`` appear in that order.  In each 4T diagram one
    region holds the two adjacent moving endpoints and the other two hold one
    endpoint each; spectators stay put.  A marker may be written twice
    (``"1A1"``) to say where the two endpoints of that region sit; anything
    between them breaks their adjacency and is rejected.
    """

    template: str
    tokens: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        toks = []
        pos = 0
        text = self.template
        while pos < len(text):
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch == "[":
                end = text.index("]", pos)
                toks.append(text[pos:end + 1])
                pos = end + 1
                continue
            if ch == ".":
                raise DiagramError("4T contexts are dotless")
            if not (ch in _REGIONS or ch.isalpha()):
                raise DiagramError(f"bad character {ch!r} in 4T context")
            toks.append(ch)
            pos += 1
        markers = [t for t in toks if t in _REGIONS]
        order = [m for k, m in enumerate(markers) if k == 0 or markers[k - 1] != m]
        if order != list(_REGIONS):
            raise DiagramError(
                f"context must mention regions 1, 2, 3 once each, in order: {self.template!r}"
            )
        for r in _REGIONS:
            where = [k for k, t in enumerate(toks) if t == r]
            if len(where) > 2:
                raise DiagramError(f"region {r} marked more than twice")
            if len(where) == 2 and where[1] != where[0] + 1:
                raise DiagramError(
                    f"marked points of region {r} are not adjacent in {self.template!r}"
                )
        spectators = [t for t in toks if t not in _REGIONS]
        for t in set(spectators):
            if spectators.count(t) != 2:
                raise DiagramError(f"spectator chord {t!r} needs exactly two endpoints")
        # collapse doubled markers to one slot
        slots = []
        for t in toks:
            if t in _REGIONS and slots and slots[-1] == t:
                continue
            slots.append(t)
        object.__setattr__(self, "tokens", tuple(slots))

    @property
    def num_spectators(self) -> int:
        return sum(1 for t in self.tokens if t not in _REGIONS) // 2

    def diagram(self, pair_region: str, links: dict[str, str]) -> Diagram:
        """Instantiate with the adjacent pair in ``pair_region``.

        ``links`` maps ``"u1"``/``"u2"`` (left/right endpoint of the pair) to
        the single-endpoint region each one is joined to.
        """
        out = []
        moving = {links["u1"]: "#1", links["u2"]: "#2"}
        for t in self.tokens:
            if t == pair_region:
                out += ["#1", "#2"]
            elif t in _REGIONS:
                out.append(moving[t])
            else:
                out.append(t)
        rename: dict[str, str] = {}
        for t in out:
            if t not in rename:
                rename[t] = f"[{len(rename) + 1}]"
        return parse("".join(rename[t] for t in out))

    def to_json(self) -> dict:
        return {"template": self.template, "spectators": self.num_spectators}


# One closing chord between the outer regions: the smallest context in which
# the four diagrams are distinct and have distinct twist data.
MINIMAL_CONTEXT = FourTContext("1A2A3")

# Standard family: the minimal context plus one or two nested spectators;
# each template keeps every comparison unmatched.
_STANDARD_TEMPLATES = ("1A2A3", "1A2AB3B", "C1A2ACB3B")

# Four spectators interleaved with all three regions (no shared endpoints).
CLOSING_CONTEXT = FourTContext("BA1AC2CBD3D")


def standard_context(spectators: int = 0) -> FourTContext:
    """Minimal context with ``spectators`` (0, 1 or 2) additional chords."""
    if not 0 <= spectators < len(_STANDARD_TEMPLATES):
        raise DiagramError(
            f"standard contexts exist for 0..{len(_STANDARD_TEMPLATES) - 1} extra spectators"
        )
    return FourTContext(_STANDARD_TEMPLATES[spectators])


def four_t_sides(
    ctx: FourTContext, rhs: RhsChoice = "middle"
) -> tuple[list[tuple[int, Diagram]], list[tuple[int, Diagram]]]:
    """Signed diagrams of the left difference and of the chosen right-hand difference.

    With ``a < b`` the single-endpoint regions and ``u1 < u2`` the adjacent pair:
    pair left: ``(u1-b, u2-a) - (u1-a, u2-b)``;
    pair middle: ``(a-u1, u2-b) - (a-u2, u1-b)``;
    pair right: ``(a-u2, b-u1) - (a-u1, b-u2)``.
    """
    left = [
        (1, ctx.diagram("1", {"u1": "3", "u2": "2"})),
        (-1, ctx.diagram("1", {"u1": "2", "u2": "3"})),
    ]
    if rhs == "middle":
        right = [
            (1, ctx.diagram("2", {"u1": "1", "u2": "3"})),
            (-1, ctx.diagram("2", {"u1": "3", "u2": "1"})),
        ]
    elif rhs == "right":
        right = [
            (1, ctx.diagram("3", {"u1": "2", "u2": "1"})),
            (-1, ctx.diagram("3", {"u1": "1", "u2": "2"})),
        ]
    else:
        raise ValueError(f"rhs must be 'middle' or 'right', got {rhs!r}")
    return left, right


# -- obstruction report ------------------------------------------------------


def move_leftmost_chord(d: Diagram | str) -> tuple[Diagram, tuple[int, ...]]:
    """Move the start of the leftmost chord ``(x, y)`` past the right end: ``(y, x')``.

    Returns the new diagram and the label correspondence ``old label -> new label``
    (0-based, chords ordered by first point).
    """
    d = as_diagram(d)
    _require_dotless(d)
    if d.num_chords < 2:
        raise DiagramError("the move needs at least two chords")
    y = d.partner[0]
    m = d.degree
    new_partner = [j - 1 for j in d.partner[1:]] + [y - 1]
    new_partner[y - 1] = m - 1
    moved = Diagram(tuple(new_partner))
    starts_after = [s for s, _ in moved.chords]
    old_to_new = []
    for s, e in d.chords:
        key = y - 1 if s == 0 else s - 1
        old_to_new.append(starts_after.index(key))
    return moved, tuple(old_to_new)


@dataclass(frozen=True)
class MoveComparison:
    diagram: Diagram
    moved: Diagram
    correspondence: tuple[int, ...]
    equal_without_flip: bool
    equal_with_flip: bool
    isolated: bool

    @property
    def flipped_label(self) -> int | None:
        """1-based label whose momentum must change sign, or None if no flip is needed."""
        if self.equal_without_flip:
            return None
        return 1 if self.equal_with_flip else None

    def to_json(self) -> dict:
        return {
            "diagram": self.diagram.code,
            "moved": self.moved.code,
            "correspondence": [t + 1 for t in self.correspondence],
            "equal_without_flip": self.equal_without_flip,
            "equal_with_flip": self.equal_with_flip,
            "flipped_label": self.flipped_label,
            "moved_chord_isolated": self.isolated,
        }


def compare_move(d: Diagram | str) -> MoveComparison:
    """Twist data of ``d`` against its moved copy, under the natural chord correspondence.

    The moved chord crosses the same chords as before but now starts after
    them, so every crossing term changes orientation: the phases agree only
    after ``p -> -p`` on that one label.
    """
    d = as_diagram(d)
    moved, corr = move_leftmost_chord(d)
    before = twist_matrix(d)
    inv = [0] * len(corr)
    for old, new in enumerate(corr):
        inv[new] = old
    after = twist_matrix(moved).relabelled(inv)
    return MoveComparison(
        diagram=d,
        moved=moved,
        correspondence=corr,
        equal_without_flip=before == after,
        equal_with_flip=before.flipped([0]) == after,
        isolated=not any(before.entries[0]),
    )


@dataclass
class ObstructionReport:
    """Outcome of comparing the two sides of a 4T relation through their twist data."""

    context: FourTContext
    rhs: str
    lhs: list[tuple[int, Diagram]]
    rhs_terms: list[tuple[int, Diagram]]
    classes: list[int]
    match: bool
    match_without_flips: bool
    match_mod_framing: bool
    pairing: list[dict]
    best_partial: list[dict]
    offending_label: int | None
    moves: list[MoveComparison]

    @property
    def framing_killed(self) -> list[Diagram]:
        return [d for _, d in self.lhs + self.rhs_terms if framing_check(d)]

    @property
    def all_framing_killed(self) -> bool:
        return len(self.framing_killed) == 4

    @property
    def sign_flip_witness(self) -> MoveComparison | None:
        for cmp in self.moves:
            if not cmp.equal_without_flip and cmp.equal_with_flip:
                return cmp
        return None

    def to_json(self) -> dict:
        def side(terms):
            return [
                {
                    "sign": s,
                    "diagram": d.code,
                    "twist": twist_matrix(d).to_json(),
                    "framing_killed": framing_check(d),
                }
                for s, d in terms
            ]

        witness = {
            "context": self.context.to_json(),
            "rhs_choice": self.rhs,
            "lhs": side(self.lhs),
            "rhs": side(self.rhs_terms),
            "phase_classes": self.classes,
            "match_without_flips": self.match_without_flips,
            "match_mod_framing": self.match_mod_framing,
            "framing_killed": [d.code for d in self.framing_killed],
            "move_comparisons": [c.to_json() for c in self.moves],
            "notes": NOTES,
        }
        if self.match:
            witness["pairing"] = self.pairing
        else:
            witness["best_partial"] = self.best_partial
            witness["offending_label"] = self.offending_label
        flip = self.sign_flip_witness
        witness["sign_flip"] = (
            {"diagram": flip.diagram.code, "moved": flip.moved.code,
             "flipped_label": flip.flipped_label}
            if flip else None
        )
        if self.all_framing_killed:
            witness["flag"] = "every diagram has an isolated chord; framing independence already kills them"
        return {"match": self.match, "witness": witness}


NOTES = [
    "Twist data are the coefficient matrices of the noncommutative phase; theta is never instantiated.",
    "On the mass shell a momentum sign flip also flips the energy component, so flipped matches do not transfer there.",
    "Over full momentum space the move would force f(p_1, ..., -p_0) = f(p_0, p_1, ...), incompatible with total integral zero.",
]


def _phase_classes(diagrams: Sequence[Diagram], allow_flips: bool = True) -> list[int]:
    reps: list[TwistMatrix] = []
    out = []
    for d in diagrams:
        t = twist_matrix(d)
        for k, r in enumerate(reps):
            if find_equivalence(t, r, allow_flips=allow_flips) is not None:
                out.append(k)
                break
        else:
            reps.append(t)
            out.append(len(reps) - 1)
    return out


def _signed_vector(terms, classes, killed=None) -> dict[int, int]:
    vec: dict[int, int] = {}
    for k, ((s, _), c) in enumerate(zip(terms, classes)):
        if killed is not None and killed[k]:
            continue
        vec[c] = vec.get(c, 0) + s
    return {c: v for c, v in vec.items() if v}


def four_t_obstruction(
    ctx: FourTContext,
    rhs: RhsChoice = "middle",
    *,
    allow_flips: bool = True,
    detail: bool = True,
) -> ObstructionReport:
    """Try to match the two sides of a 4T relation term by term via their phases.

    Phases count as equal when their twist matrices agree up to relabelling and
    (unless ``allow_flips`` is off) per-label momentum sign flips.  Also runs
    the leftmost-chord move on every diagram of the relation and records the
    sign flip it needs.  ``detail=False`` skips the brute-force best partial
    matching, leaving only the verdict and the move comparisons.
    """
    lhs, right = four_t_sides(ctx, rhs)
    terms = lhs + right
    diagrams = [d for _, d in terms]
    classes = _phase_classes(diagrams, allow_flips)
    killed = [framing_check(d) for d in diagrams]
    lvec = _signed_vector(lhs, classes[:2])
    rvec = _signed_vector(right, classes[2:])
    match = lvec == rvec
    if allow_flips:
        strict = _phase_classes(diagrams, False)
        match_without_flips = _signed_vector(lhs, strict[:2]) == _signed_vector(right, strict[2:])
    else:
        match_without_flips = match
    match_mod_framing = _signed_vector(lhs, classes[:2], killed[:2]) == _signed_vector(
        right, classes[2:], killed[2:]
    )

    pairing: list[dict] = []
    best: list[dict] = []
    offending = None
    if match:
        if not lvec:
            pairing.append({"cancelled": "both sides vanish termwise"})
        for (s, d), c in zip(lhs, classes[:2]):
            for (s2, e), c2 in zip(right, classes[2:]):
                if s == s2 and c == c2:
                    eq = find_equivalence(
                        twist_matrix(d), twist_matrix(e), allow_flips=allow_flips
                    )
                    pairing.append({"lhs": d.code, "rhs": e.code, "renaming": eq.to_json()})
                    break
    elif detail:
        worst_total = -1
        for (s, d), (s2, e) in zip(lhs, right):
            total, eq, label = best_relabelling(twist_matrix(d), twist_matrix(e))
            entry = {
                "sign": s,
                "lhs": d.code,
                "rhs": e.code,
                "mismatched_entries": total,
                "renaming": eq.to_json(),
                "offending_label": label + 1 if label >= 0 else None,
            }
            best.append(entry)
            if total > worst_total:
                worst_total = total
                offending = entry["offending_label"]

    moves = [compare_move(d) for d in diagrams if d.num_chords >= 2]
    return ObstructionReport(
        context=ctx,
        rhs=rhs,
        lhs=lhs,
        rhs_terms=right,
        classes=classes,
        match=match,
        match_without_flips=match_without_flips,
        match_mod_framing=match_mod_framing,
        pairing=pairing,
        best_partial=best,
        offending_label=offending,
        moves=moves,
    )
