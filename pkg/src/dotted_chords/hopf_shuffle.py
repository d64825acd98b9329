"""Shuffle Hopf algebra on products of connected quasiplanar diagrams.

Such a product splits uniquely at its cut points back into its connected
factors; the structure maps act on those factor words.  Every regular
quasiplanar diagram is of this form, but so are non-regular ones such as
``ABCACB``, which already occur in ``W([6])``.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from typing import Callable

from .diagram import (
    EMPTY,
    Diagram,
    DiagramError,
    as_diagram,
    concat_all,
    cut_pieces,
    is_connected,
    is_quasiplanar,
    is_regular,
)
from .formal_sum import FormalSum, TensorSum, as_sum
from .wick import _cq


def is_regular_quasiplanar(d: Diagram) -> bool:
    return is_regular(d) and is_quasiplanar(d)


def in_domain(d: Diagram) -> bool:
    """Whether ``d`` is a product of connected quasiplanar diagrams."""
    return is_quasiplanar(d) and all(is_connected(p) for p in cut_pieces(d))


@lru_cache(maxsize=None)
def factors(d: Diagram) -> tuple[Diagram, ...]:
    """Connected quasiplanar factors of ``d``, left to right."""
    if not is_quasiplanar(d):
        raise DiagramError(f"{d.code!r} is not quasiplanar")
    pieces = cut_pieces(d)
    for p in pieces:
        if not is_connected(p):
            raise DiagramError(
                f"{d.code!r} is not a product of connected quasiplanar diagrams"
            )
    return tuple(pieces)


def _shuffle_words(u: tuple, v: tuple):
    n, m = len(u), len(v)
    for picks in combinations(range(n + m), n):
        chosen = set(picks)
        word = []
        i = j = 0
        for pos in range(n + m):
            if pos in chosen:
                word.append(u[i])
                i += 1
            else:
                word.append(v[j])
                j += 1
        yield word


@lru_cache(maxsize=None)
def _shuffle_diagrams(a: Diagram, b: Diagram) -> FormalSum:
    acc: dict[Diagram, int] = defaultdict(int)
    for word in _shuffle_words(factors(a), factors(b)):
        acc[concat_all(word)] += 1
    return FormalSum(acc)


def shuffle(a: FormalSum | Diagram | str, b: FormalSum | Diagram | str) -> FormalSum:
    """Shuffle product of the factor words, extended bilinearly."""
    acc: dict[Diagram, int] = defaultdict(int)
    for x, cx in as_sum(a).items():
        for y, cy in as_sum(b).items():
            for d, c in _shuffle_diagrams(x, y).items():
                acc[d] += cx * cy * c
    return FormalSum(acc)


@lru_cache(maxsize=None)
def deconcat(d: Diagram | str) -> TensorSum:
    """Deconcatenation of the factor word, including both trivial splits."""
    d = as_diagram(d)
    word = factors(d)
    acc: dict = defaultdict(int)
    for k in range(len(word) + 1):
        acc[(concat_all(word[:k]), concat_all(word[k:]))] += 1
    return TensorSum(acc)


def shuffle_antipode(d: Diagram | str) -> FormalSum:
    """``S(D_1...D_n) = (-1)**n D_n...D_1``."""
    d = as_diagram(d)
    word = factors(d)
    return FormalSum.of(concat_all(word[::-1]), (-1) ** len(word))


def counit_unit(d: Diagram | str) -> FormalSum:
    """The convolution identity: unit after counit."""
    d = as_diagram(d)
    return FormalSum.of(EMPTY) if d.is_empty else FormalSum()


@lru_cache(maxsize=None)
def _h_even(n: int) -> FormalSum:
    acc: dict[Diagram, int] = defaultdict(int)

    def rec(rest: int, blocks: tuple):
        if rest == 0:
            acc[concat_all(blocks)] += (-1) ** len(blocks)
            return
        for k in range(2, rest + 1, 2):
            for block in _cq(k):
                rec(rest - k, blocks + (block,))

    rec(n, ())
    return FormalSum(acc)


def h_map(d: Diagram | str) -> FormalSum:
    """Signed sum over concatenations of dotless connected blocks on ``[2k]``; zero elsewhere."""
    d = as_diagram(d)
    if d.is_empty:
        return FormalSum.of(EMPTY)
    if d.num_chords or d.degree % 2:
        return FormalSum()
    return _h_even(d.degree)


def identity(d: Diagram) -> FormalSum:
    return FormalSum.of(d)


def convolve(
    f: Callable[[Diagram], FormalSum],
    g: Callable[[Diagram], FormalSum],
    d: Diagram | str,
) -> FormalSum:
    """``mu_# (f ⊗ g) Delta_dc`` applied to a diagram in the shuffle domain."""
    d = as_diagram(d)
    acc = FormalSum()
    for (left, right), c in deconcat(d).items():
        acc = acc + c * shuffle(f(left), g(right))
    return acc


def convolution_trace(
    f: Callable[[Diagram], FormalSum],
    g: Callable[[Diagram], FormalSum],
    d: Diagram | str,
) -> list[tuple[Diagram, Diagram, FormalSum, FormalSum]]:
    """One row per deconcatenation term: ``(left, right, g(right), f(left) # g(right))``."""
    d = as_diagram(d)
    rows = []
    for (left, right), c in deconcat(d).items():
        gr = c * g(right)
        rows.append((left, right, gr, shuffle(f(left), gr)))
    rows.sort(key=lambda r: (r[0].degree, r[0].sort_key))
    return rows
