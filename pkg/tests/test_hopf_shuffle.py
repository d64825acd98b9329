import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from dotted_chords.diagram import (
    EMPTY,
    Diagram,
    DiagramError,
    concat_all,
    is_connected,
    iter_diagrams,
    parse,
)
from dotted_chords.formal_sum import FormalSum, TensorSum
from dotted_chords.hopf_shuffle import (
    convolution_trace,
    convolve,
    counit_unit,
    deconcat,
    factors,
    h_map,
    identity,
    in_domain,
    is_regular_quasiplanar,
    shuffle,
    shuffle_antipode,
)
from dotted_chords.wick import enumerate_cq, wick_inductive

DOMAIN6 = [d for m in range(7) for d in iter_diagrams(m) if in_domain(d)]
PIECES = [d for m in range(1, 5) for d in enumerate_cq(m)]


def test_domain_contains_regular_quasiplanar():
    for m in range(9):
        for d in iter_diagrams(m):
            if is_regular_quasiplanar(d):
                assert in_domain(d)
    assert in_domain(parse("ABCACB"))
    assert not in_domain(parse("A.A"))
    assert not in_domain(parse("ABBA"))
    with pytest.raises(DiagramError):
        factors(parse("ABBA"))


def test_factors():
    assert [f.code for f in factors(parse("ABAB.CC."))] == ["ABAB", ".", "AA", "."]
    assert factors(EMPTY) == ()


def test_golden_shuffle():
    got = shuffle("ABAB", ".AA.")
    assert got == FormalSum.parse(".AA.BCBC + .AABCBC. + .ABABCC. + ABAB.CC.")
    assert shuffle(".", ".") == FormalSum.parse("2*..")
    assert shuffle(EMPTY, "AA") == FormalSum.of("AA")


def test_golden_deconcat():
    want = (
        TensorSum.of(EMPTY, "ABAB.CC.")
        + TensorSum.of("ABAB", ".CC.")
        + TensorSum.of("ABAB.", "AA.")
        + TensorSum.of("ABAB.CC", ".")
        + TensorSum.of("ABAB.CC.", EMPTY)
    )
    assert deconcat(parse("ABAB.CC.")) == want


def test_shuffle_matches_permutation_oracle():
    for a, b in itertools.product(DOMAIN6, DOMAIN6):
        if a.degree + b.degree > 6:
            continue
        u, v = factors(a), factors(b)
        want = FormalSum(
            (concat_all(word), c) for word, c in O.shuffles_by_permutation(u, v).items()
        )
        assert shuffle(a, b) == want


@given(st.lists(st.sampled_from(PIECES), max_size=3), st.lists(st.sampled_from(PIECES), max_size=3))
def test_binomial_total(u, v):
    s = shuffle(concat_all(u), concat_all(v))
    assert sum(s.as_dict().values()) == comb(len(u) + len(v), len(u))


@settings(max_examples=60)
@given(*[st.lists(st.sampled_from(PIECES), max_size=2)] * 3)
def test_shuffle_commutative_associative(u, v, w):
    a, b, c = concat_all(u), concat_all(v), concat_all(w)
    assert shuffle(a, b) == shuffle(b, a)
    assert shuffle(shuffle(a, b), c) == shuffle(a, shuffle(b, c))


def test_deconcat_coassociative():
    for d in DOMAIN6:
        lhs, rhs = {}, {}
        for (a, b), c in deconcat(d).items():
            for (x, y), ci in deconcat(a).items():
                lhs[(x, y, b)] = lhs.get((x, y, b), 0) + c * ci
            for (x, y), ci in deconcat(b).items():
                rhs[(a, x, y)] = rhs.get((a, x, y), 0) + c * ci
        assert lhs == rhs


def test_non_cocommutative_witness():
    t = deconcat(parse("AA."))
    assert t.flip() != t


def test_bialgebra_compatibility():
    # Delta_dc(a # b) = Delta_dc(a) # Delta_dc(b) componentwise
    for a, b in itertools.product(DOMAIN6, DOMAIN6):
        if a.degree + b.degree > 5:
            continue
        lhs = TensorSum()
        for d, c in shuffle(a, b).items():
            lhs = lhs + c * deconcat(d)
        rhs = {}
        for (a1, a2), ca in deconcat(a).items():
            for (b1, b2), cb in deconcat(b).items():
                for x, cx in shuffle(a1, b1).items():
                    for y, cy in shuffle(a2, b2).items():
                        rhs[(x, y)] = rhs.get((x, y), 0) + ca * cb * cx * cy
        assert lhs == TensorSum(rhs)


def test_antipode_axiom():
    for d in DOMAIN6:
        assert convolve(shuffle_antipode, identity, d) == counit_unit(d)
        assert convolve(identity, shuffle_antipode, d) == counit_unit(d)


def test_antipode_values():
    assert shuffle_antipode(parse("ABAB.")) == FormalSum.of(".ABAB")
    assert shuffle_antipode(parse("AA")) == FormalSum.parse("-AA")


def test_primitives_are_connected():
    for m in range(1, 9):
        for d in iter_diagrams(m):
            if in_domain(d):
                primitive = len(deconcat(d)) == 2
                assert primitive == is_connected(d)


def test_h_values():
    assert h_map(EMPTY) == FormalSum.of(EMPTY)
    assert h_map(parse("..")) == FormalSum.parse("-AA")
    assert h_map(parse("...")) == 0
    assert h_map(parse("....")) == FormalSum.parse("AABB - ABAB")
    assert h_map(parse("AA")) == 0


def test_convolution_theorem():
    for n in range(9):
        assert convolve(identity, h_map, Diagram.dots(n)) == wick_inductive(n)


def test_convolution_trace_for_four():
    rows = convolution_trace(identity, h_map, Diagram.dots(4))
    assert [(l.code, r.code) for l, r, _, _ in rows] == [
        ("", "...."), (".", "..."), ("..", ".."), ("...", "."), ("....", ""),
    ]
    assert [str(g) for _, _, g, _ in rows] == ["AABB - ABAB", "0", "-AA", "0", "1"]
    total = FormalSum()
    for *_, contribution in rows:
        total = total + contribution
    assert total == wick_inductive(4)
