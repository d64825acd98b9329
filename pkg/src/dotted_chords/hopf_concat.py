"""Concatenation product, subdiagram coproduct, counit and antipode on V."""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from .diagram import EMPTY, Diagram, as_diagram
from .formal_sum import FormalSum, TensorSum, apply_linear, apply_linear_tensor, as_sum


def mu(a: FormalSum | Diagram | str, b: FormalSum | Diagram | str) -> FormalSum:
    """Gluing product, bilinear; the empty diagram is the unit."""
    return as_sum(a) * as_sum(b)


def unit() -> FormalSum:
    return FormalSum.of(EMPTY)


def _subsets(k: int):
    for mask in range(1 << k):
        inside = [s for s in range(k) if mask >> s & 1]
        outside = [s for s in range(k) if not mask >> s & 1]
        yield inside, outside


@lru_cache(maxsize=None)
def delta(d: Diagram) -> TensorSum:
    """Sum over all subdiagrams ``D' ⊗ (D \\ D')``, ``2**K`` terms for ``K`` pairs."""
    d = as_diagram(d)
    acc: dict = defaultdict(int)
    for inside, outside in _subsets(len(d.pairs)):
        acc[(d.subdiagram(inside), d.subdiagram(outside))] += 1
    return TensorSum(acc)


def delta_sum(a: FormalSum) -> TensorSum:
    return apply_linear_tensor(delta, a)


def counit(a: FormalSum | Diagram | str) -> int:
    return as_sum(a).coeff(EMPTY)


@lru_cache(maxsize=None)
def antipode(d: Diagram) -> FormalSum:
    """Antipode by induction on the number of pairs.

    ``S(D) = -D - sum S(D') (D \\ D')`` over proper nonempty subdiagrams.
    """
    d = as_diagram(d)
    if d.is_empty:
        return unit()
    k = len(d.pairs)
    acc: dict[Diagram, int] = defaultdict(int)
    acc[d] -= 1
    for inside, outside in _subsets(k):
        if not inside or not outside:
            continue
        left = antipode(d.subdiagram(inside))
        right = d.subdiagram(outside)
        for e, c in left.items():
            acc[e * right] -= c
    return FormalSum(acc)


def antipode_sum(a: FormalSum) -> FormalSum:
    return apply_linear(antipode, a)
