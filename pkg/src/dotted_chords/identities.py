"""Exhaustive checks of the algebraic identities, used by ``dotted-chords verify``.

Each suite returns a list of :class:`Failure`; an empty list means pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from .diagram import Diagram, is_connected, iter_diagrams
from .formal_sum import FormalSum, TensorSum, tensor_map
from .hopf_concat import antipode, antipode_sum, counit, delta, mu
from .hopf_shuffle import (
    counit_unit,
    convolve,
    deconcat,
    h_map,
    identity,
    in_domain,
    shuffle,
    shuffle_antipode,
)
from .wick import (
    iter_block_products,
    wick,
    wick_closed,
    wick_inductive,
    wick_product_expansion,
)


@dataclass(frozen=True)
class Failure:
    identity: str
    case: str
    detail: str

    def __str__(self) -> str:
        return f"{self.identity} failed at {self.case}: {self.detail}"


def _all_upto(n: int):
    for m in range(n + 1):
        yield from iter_diagrams(m)


def _domain_upto(n: int):
    return [d for d in _all_upto(n) if in_domain(d)]


def _tensor3(t: TensorSum, left: bool) -> dict:
    """``(Delta ⊗ id) t`` or ``(id ⊗ Delta) t`` as a dict over triples."""
    acc: dict = {}
    for (a, b), c in t.items():
        inner = delta(a) if left else delta(b)
        for (x, y), ci in inner.items():
            key = (x, y, b) if left else (a, x, y)
            acc[key] = acc.get(key, 0) + c * ci
    return {k: v for k, v in acc.items() if v}


def _mu_tensor(t: TensorSum, product_fn) -> FormalSum:
    acc = FormalSum()
    for (a, b), c in t.items():
        acc = acc + c * product_fn(FormalSum.of(a), FormalSum.of(b))
    return acc


def check_hopf_concat(max_degree: int) -> list[Failure]:
    out = []
    ds = list(_all_upto(max_degree))
    for d in ds:
        dd = delta(d)
        if _tensor3(dd, True) != _tensor3(dd, False):
            out.append(Failure("coassociativity", d.code, "(D⊗id)D != (id⊗D)D"))
        left = FormalSum()
        right = FormalSum()
        for (a, b), c in dd.items():
            left = left + (c * counit(a)) * FormalSum.of(b)
            right = right + (c * counit(b)) * FormalSum.of(a)
        if left != FormalSum.of(d) or right != FormalSum.of(d):
            out.append(Failure("counit", d.code, "(eps⊗id)D != id"))
        if dd.flip() != dd:
            out.append(Failure("cocommutativity", d.code, "flip D != D"))
        conv = _mu_tensor(tensor_map(antipode, identity, dd), mu)
        want = FormalSum.of(d) if d.is_empty else FormalSum()
        if conv != want:
            out.append(Failure("antipode axiom", d.code, f"got {conv}"))
        if antipode_sum(antipode(d)) != FormalSum.of(d):
            out.append(Failure("S^2 = id", d.code, str(antipode_sum(antipode(d)))))
    for a in ds:
        for b in ds:
            if a.degree + b.degree > max_degree:
                continue
            ab = a * b
            if delta(ab) != delta(a) * delta(b):
                out.append(Failure("bialgebra", f"{a.code}|{b.code}", "D(ab) != D(a)D(b)"))
            if antipode(ab) != antipode(b) * antipode(a):
                out.append(Failure("antihomomorphism", f"{a.code}|{b.code}", "S(ab) != S(b)S(a)"))
    return out


def check_hopf_shuffle(max_degree: int) -> list[Failure]:
    out = []
    ds = _domain_upto(max_degree)
    for d in ds:
        dd = deconcat(d)
        lhs = {}
        rhs = {}
        for (a, b), c in dd.items():
            for (x, y), ci in deconcat(a).items():
                lhs[(x, y, b)] = lhs.get((x, y, b), 0) + c * ci
            for (x, y), ci in deconcat(b).items():
                rhs[(a, x, y)] = rhs.get((a, x, y), 0) + c * ci
        if lhs != rhs:
            out.append(Failure("deconcatenation coassociativity", d.code, ""))
        conv = convolve(shuffle_antipode, identity, d)
        if conv != counit_unit(d):
            out.append(Failure("shuffle antipode axiom", d.code, f"got {conv}"))
        primitive = len(dd) == 2 and not d.is_empty
        if primitive != (not d.is_empty and is_connected(d)):
            out.append(Failure("primitives", d.code, "primitive iff connected"))
    for a, b in product(ds, ds):
        if a.degree + b.degree > max_degree:
            continue
        if shuffle(a, b) != shuffle(b, a):
            out.append(Failure("shuffle commutativity", f"{a.code}|{b.code}", ""))
    small = [d for d in ds if d.degree <= max_degree // 3 or d.degree <= 2]
    for a, b, c in product(small, small, small):
        if a.degree + b.degree + c.degree > max_degree:
            continue
        if shuffle(shuffle(a, b), c) != shuffle(a, shuffle(b, c)):
            out.append(Failure("shuffle associativity", f"{a.code}|{b.code}|{c.code}", ""))
    if not any(deconcat(d).flip() != deconcat(d) for d in ds):
        out.append(Failure("non-cocommutativity", f"<= {max_degree}", "no witness found"))
    return out


def check_projection(max_degree: int) -> list[Failure]:
    out = []
    for n in range(max_degree + 1):
        w = wick(Diagram.dots(n))
        if wick(w) != w:
            out.append(Failure("projection", f"[{n}]", "W(W([n])) != W([n])"))
    for d in _all_upto(min(max_degree, 8)):
        if d.num_chords and wick(d):
            out.append(Failure("projection", d.code, "W does not vanish on a chord diagram"))
    return out


def check_convolution(max_degree: int) -> list[Failure]:
    out = []
    for n in range(max_degree + 1):
        got = convolve(identity, h_map, Diagram.dots(n))
        if got != wick_inductive(n):
            out.append(Failure("convolution", f"[{n}]", f"id*h = {got}"))
    return out


def check_product(max_degree: int) -> list[Failure]:
    out = []
    for n in range(1, max_degree):
        for m in range(1, max_degree - n + 1):
            diff = mu(wick_inductive(n), wick_inductive(m)) - wick_inductive(n + m)
            if diff != wick_product_expansion(n, m):
                out.append(Failure("product", f"({n},{m})", f"difference {diff}"))
    return out


def check_signs(max_degree: int) -> list[Failure]:
    out = []
    for n in range(1, max_degree + 1):
        for blocks, d in iter_block_products(n):
            d2 = sum(1 for b in blocks if b.degree > 1)
            if (-1) ** (n + len(blocks)) != (-1) ** d2:
                out.append(Failure("signs", d.code, f"K={len(blocks)}, d2={d2}"))
    return out


def check_closed_form(max_degree: int) -> list[Failure]:
    out = []
    for n in range(max_degree + 1):
        if wick_closed(n) != wick_inductive(n):
            out.append(Failure("closed form", f"[{n}]", "closed != inductive"))
    return out


SUITES: dict[str, Callable[[int], list[Failure]]] = {
    "hopf-concat": check_hopf_concat,
    "hopf-shuffle": check_hopf_shuffle,
    "projection": check_projection,
    "convolution": check_convolution,
    "product": check_product,
    "signs": check_signs,
    "closed-form": check_closed_form,
}
