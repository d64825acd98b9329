"""Exact integer linear combinations of diagrams and of diagram pairs."""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Callable, Generic, Hashable, Iterable, Iterator, Mapping, TypeVar

from .diagram import EMPTY, Diagram, DiagramError, parse

K = TypeVar("K", bound=Hashable)


class _Combination(Generic[K]):
    """Immutable finite Z-linear combination of hashable basis keys.

    Zero coefficients are never stored, so equality is plain dict equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[K, int] | Iterable[tuple[K, int]] = ()):
        acc: dict[K, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            self._check_key(key)
            acc[key] += int(coeff)
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _check_key(cls, key) -> None:
        pass

    @staticmethod
    def _sort_key(key) -> tuple:
        return key.sort_key

    @classmethod
    def _wrap(cls, terms: dict):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- container protocol ---------------------------------------------

    def __iter__(self) -> Iterator[K]:
        return iter(self.keys())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __getitem__(self, key: K) -> int:
        return self._terms.get(key, 0)

    def coeff(self, key: K) -> int:
        return self._terms.get(key, 0)

    def keys(self) -> list[K]:
        """Basis keys in deterministic (graded-lexicographic) order."""
        return sorted(self._terms, key=self._sort_key)

    def items(self) -> list[tuple[K, int]]:
        return [(k, self._terms[k]) for k in self.keys()]

    def as_dict(self) -> dict[K, int]:
        return dict(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if type(other) is not type(self):
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return self._wrap(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, c: int):
        if not isinstance(c, int):
            return NotImplemented
        if c == 0:
            return self._wrap({})
        return self._wrap({k: c * v for k, v in self._terms.items()})

    # -- rendering --------------------------------------------------------

    @staticmethod
    def _key_text(key) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for n, (key, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = self._key_text(key)
            if mag != 1:
                body = f"{mag}*{body}"
            if n == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


def _diagram_text(d: Diagram) -> str:
    return d.code if not d.is_empty else "1"


class FormalSum(_Combination[Diagram]):
    """Finite integer combination of dotted chord diagrams."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key) -> None:
        if not isinstance(key, Diagram):
            raise TypeError(f"FormalSum keys must be Diagrams, got {type(key).__name__}")

    @staticmethod
    def _key_text(key: Diagram) -> str:
        return _diagram_text(key)

    @classmethod
    def of(cls, d: Diagram | str, coeff: int = 1) -> FormalSum:
        if isinstance(d, str):
            d = parse(d)
        return cls({d: coeff})

    @classmethod
    def zero(cls) -> FormalSum:
        return cls()

    @classmethod
    def parse(cls, text: str) -> FormalSum:
        """Read the text rendering back, e.g. ``".. - AA"`` or ``"2*ABAB + 1"``."""
        return cls(_parse_terms(text, _parse_diagram_atom))

    def __mul__(self, other):
        """Concatenation product, extended bilinearly."""
        if isinstance(other, int):
            return other * self
        if not isinstance(other, FormalSum):
            return NotImplemented
        acc: dict[Diagram, int] = defaultdict(int)
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                acc[a * b] += ca * cb
        return FormalSum(acc)

    def to_json(self) -> dict:
        return {
            "terms": [{"coeff": str(c), "diagram": d.code} for d, c in self.items()]
        }

    @classmethod
    def from_json(cls, data: dict) -> FormalSum:
        return cls((parse(t["diagram"]), int(t["coeff"])) for t in data["terms"])


class TensorSum(_Combination[tuple[Diagram, Diagram]]):
    """Finite integer combination of ordered pairs ``left ⊗ right``."""

    __slots__ = ()

    @classmethod
    def _check_key(cls, key) -> None:
        if not (isinstance(key, tuple) and len(key) == 2
                and all(isinstance(x, Diagram) for x in key)):
            raise TypeError("TensorSum keys must be (Diagram, Diagram) pairs")

    @staticmethod
    def _sort_key(key) -> tuple:
        return (key[0].degree + key[1].degree, key[0].sort_key, key[1].sort_key)

    @staticmethod
    def _key_text(key) -> str:
        return f"{_diagram_text(key[0])} (x) {_diagram_text(key[1])}"

    @classmethod
    def of(cls, left: Diagram | str, right: Diagram | str, coeff: int = 1) -> TensorSum:
        if isinstance(left, str):
            left = parse(left)
        if isinstance(right, str):
            right = parse(right)
        return cls({(left, right): coeff})

    @classmethod
    def parse(cls, text: str) -> TensorSum:
        def atom(s: str):
            if "(x)" not in s:
                raise DiagramError(f"tensor term needs '(x)': {s!r}")
            left, right = s.split("(x)")
            return (_parse_diagram_atom(left), _parse_diagram_atom(right))

        return cls(_parse_terms(text, atom))

    def __mul__(self, other):
        """Component-wise concatenation product on ``V ⊗ V``."""
        if isinstance(other, int):
            return other * self
        if not isinstance(other, TensorSum):
            return NotImplemented
        acc: dict[tuple[Diagram, Diagram], int] = defaultdict(int)
        for (a1, a2), ca in self._terms.items():
            for (b1, b2), cb in other._terms.items():
                acc[(a1 * b1, a2 * b2)] += ca * cb
        return TensorSum(acc)

    def flip(self) -> TensorSum:
        return TensorSum(((r, l), c) for (l, r), c in self._terms.items())

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": str(c), "left": l.code, "right": r.code}
                for (l, r), c in self.items()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> TensorSum:
        return cls(
            ((parse(t["left"]), parse(t["right"])), int(t["coeff"]))
            for t in data["terms"]
        )


def _parse_diagram_atom(s: str) -> Diagram:
    s = s.strip()
    return EMPTY if s == "1" else parse(s)


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*)?\s*([^+-]*)")


def _parse_terms(text: str, atom: Callable[[str], object]):
    text = text.strip()
    if text in ("", "0"):
        return []
    terms = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise DiagramError(f"cannot parse sum at offset {pos}: {text!r}")
        sign, mag, body = m.groups()
        if not body.strip():
            raise DiagramError(f"empty term in {text!r}")
        c = int(mag) if mag else 1
        terms.append((atom(body), -c if sign == "-" else c))
        pos = m.end()
    return terms


# -- module-level operations ------------------------------------------------


def add(a: FormalSum, b: FormalSum) -> FormalSum:
    return a + b


def scale(c: int, a: FormalSum) -> FormalSum:
    return c * a


def apply_linear(f: Callable[[Diagram], FormalSum], a: FormalSum) -> FormalSum:
    """Extend a map on diagrams linearly to a formal sum."""
    acc: dict[Diagram, int] = defaultdict(int)
    for d, c in a.items():
        for e, ce in f(d).items():
            acc[e] += c * ce
    return FormalSum(acc)


def apply_linear_tensor(
    f: Callable[[Diagram], TensorSum], a: FormalSum
) -> TensorSum:
    acc: dict = defaultdict(int)
    for d, c in a.items():
        for key, ce in f(d).items():
            acc[key] += c * ce
    return TensorSum(acc)


def tensor_map(
    f: Callable[[Diagram], FormalSum],
    g: Callable[[Diagram], FormalSum],
    t: TensorSum,
) -> TensorSum:
    """``(f ⊗ g)`` applied to a tensor sum."""
    acc: dict = defaultdict(int)
    for (left, right), c in t.items():
        fl = f(left)
        gr = g(right)
        for a, ca in fl.items():
            for b, cb in gr.items():
                acc[(a, b)] += c * ca * cb
    return TensorSum(acc)


def as_sum(x: FormalSum | Diagram | str) -> FormalSum:
    if isinstance(x, FormalSum):
        return x
    return FormalSum.of(x)
