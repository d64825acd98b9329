"""Quasiplanar Wick map, its closed form, the extension W', and basis rewriting."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

from .diagram import (
    DOT,
    EMPTY,
    Diagram,
    DiagramError,
    as_diagram,
    check_bound,
    concat_all,
    is_connected,
    is_quasiplanar,
    iter_diagrams,
)
from .formal_sum import FormalSum, _Combination, apply_linear, as_sum


@lru_cache(maxsize=None)
def _cq(m: int) -> tuple[Diagram, ...]:
    if m == 1:
        return (DOT,)
    if m == 0 or m % 2:
        return ()
    return tuple(d for d in iter_diagrams(m, dots=False) if is_connected(d))


def enumerate_cq(m: int) -> list[Diagram]:
    """Connected quasiplanar diagrams of dot-degree ``m``.

    Apart from the single dot these are dotless, so even degrees are found by
    filtering perfect matchings for connectivity.
    """
    check_bound(m)
    return list(_cq(m))


def f_sum(m: int) -> FormalSum:
    """Sum of all connected quasiplanar diagrams of dot-degree ``m``."""
    return FormalSum((d, 1) for d in enumerate_cq(m))


def _compositions(n: int, parts_ok=lambda k: True) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        if parts_ok(first):
            for rest in _compositions(n - first, parts_ok):
                yield (first,) + rest


def _block_degree_ok(k: int) -> bool:
    return k == 1 or k % 2 == 0


def iter_block_products(n: int, parts_ok=_block_degree_ok):
    """Yield ``(blocks, diagram)`` for every concatenation of connected
    quasiplanar blocks of total degree ``n`` whose block degrees satisfy ``parts_ok``."""
    for comp in _compositions(n, lambda k: parts_ok(k) and bool(_cq(k))):
        for blocks in product(*(_cq(k) for k in comp)):
            yield blocks, concat_all(blocks)


@lru_cache(maxsize=None)
def wick_inductive(n: int) -> FormalSum:
    """``W([n]) = sum_{m=1..n} (-1)**(m+1) f([m]) W([n-m])``."""
    check_bound(n)
    if n == 0:
        return FormalSum.of(EMPTY)
    acc = FormalSum()
    for m in range(1, n + 1):
        fm = f_sum(m)
        if fm:
            acc = acc + (-1) ** (m + 1) * (fm * wick_inductive(n - m))
    return acc


@lru_cache(maxsize=None)
def wick_closed(n: int) -> FormalSum:
    """Signed sum over ordered concatenations of connected quasiplanar blocks."""
    check_bound(n)
    if n == 0:
        return FormalSum.of(EMPTY)
    acc: dict[Diagram, int] = defaultdict(int)
    for blocks, d in iter_block_products(n):
        acc[d] += (-1) ** (n + len(blocks))
    return FormalSum(acc)


def _wick_diagram(d: Diagram) -> FormalSum:
    if d.num_chords:
        return FormalSum()
    return wick_inductive(d.degree)


def wick(a: FormalSum | Diagram | str) -> FormalSum:
    """The quasiplanar Wick map, extended linearly; zero on diagrams with chords."""
    return apply_linear(_wick_diagram, as_sum(a))


def _reembed(d: Diagram, slots: tuple[int, ...], term: Diagram) -> Diagram:
    """Replace the points of ``d`` at ``slots`` (its dots) by the pairs of ``term``."""
    partner = list(d.partner)
    for local, target in enumerate(term.partner):
        partner[slots[local]] = slots[target]
    return Diagram(tuple(partner))


@lru_cache(maxsize=None)
def wick_prime(d: Diagram | str) -> FormalSum:
    """Act as the Wick map on the dots of ``d`` while keeping its chords fixed."""
    d = as_diagram(d)
    if d.num_chords and not is_quasiplanar(d):
        raise DiagramError(f"W' is only defined on quasiplanar diagrams, got {d.code!r}")
    slots = d.dot_positions
    return FormalSum(
        (_reembed(d, slots, term), c) for term, c in wick_inductive(len(slots)).items()
    )


# -- basis rewriting ---------------------------------------------------------


@dataclass(frozen=True)
class WickOf:
    """Marked atom standing for ``W'(diagram)``."""

    diagram: Diagram

    @property
    def sort_key(self) -> tuple:
        return (0,) + self.diagram.sort_key

    def __str__(self) -> str:
        return f"W'({self.diagram.code or '1'})"


def _atom_sort_key(atom) -> tuple:
    if isinstance(atom, WickOf):
        return atom.sort_key
    return (1,) + atom.sort_key


class MarkedSum(_Combination):
    """Integer combination of ``WickOf`` atoms and plain diagrams."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key) -> None:
        if not isinstance(key, (WickOf, Diagram)):
            raise TypeError("MarkedSum keys must be WickOf or Diagram")

    @staticmethod
    def _sort_key(key) -> tuple:
        return _atom_sort_key(key)

    @staticmethod
    def _key_text(key) -> str:
        return str(key) if isinstance(key, WickOf) else (key.code or "1")

    def expand(self) -> FormalSum:
        """Substitute ``W'(E)`` for every marked atom."""
        acc = FormalSum()
        for atom, c in self.items():
            value = wick_prime(atom.diagram) if isinstance(atom, WickOf) else FormalSum.of(atom)
            acc = acc + c * value
        return acc

    def to_json(self) -> dict:
        terms = []
        for atom, c in self.items():
            if isinstance(atom, WickOf):
                terms.append({"coeff": str(c), "wick_of": atom.diagram.code})
            else:
                terms.append({"coeff": str(c), "diagram": atom.code})
        return {"terms": terms}


@lru_cache(maxsize=None)
def wick_basis_decompose(d: Diagram | str) -> MarkedSum:
    """Write a quasiplanar diagram via W'-images and dotless diagrams.

    Uses ``d = W'(d) - (W'(d) - d)``; every residual term has fewer dots, so
    the recursion terminates.
    """
    d = as_diagram(d)
    if not is_quasiplanar(d):
        raise DiagramError(f"{d.code!r} is not quasiplanar")
    if d.num_dots == 0:
        return MarkedSum({d: 1})
    acc: dict = defaultdict(int)
    acc[WickOf(d)] += 1
    residual = wick_prime(d) - FormalSum.of(d)
    for e, c in residual.items():
        for atom, ca in wick_basis_decompose(e).items():
            acc[atom] -= c * ca
    return MarkedSum(acc)


def wick_product_expansion(n: int, m: int) -> FormalSum:
    """Correction ``W([n]) W([m]) - W([n+m])`` as a sum over unsplittable products."""
    if n < 1 or m < 1:
        raise DiagramError("wick_product_expansion needs positive n and m")
    check_bound(n + m)
    acc: dict[Diagram, int] = defaultdict(int)
    for blocks, d in iter_block_products(n + m):
        prefix = 0
        splittable = False
        for b in blocks:
            prefix += b.degree
            if prefix == n:
                splittable = True
                break
        if not splittable:
            acc[d] += (-1) ** (n + m + len(blocks) + 1)
    return FormalSum(acc)
