"""Brute-force reference implementations, independent of the library.

Diagrams here are plain tuples ``p`` with ``p[i]`` the 0-based partner of
``i``.  Nothing in this module imports ``dotted_chords``.
"""

from __future__ import annotations

import itertools
from collections import Counter


def involutions(m):
    """All involutions of range(m) by filtering every permutation."""
    out = []
    for p in itertools.permutations(range(m)):
        if all(p[p[i]] == i for i in range(m)):
            out.append(p)
    return out


def perfect_matchings(m):
    return [p for p in involutions(m) if all(p[i] != i for i in range(m))]


def code(p):
    letters = {}
    out = []
    for i, j in enumerate(p):
        if i == j:
            out.append(".")
            continue
        s = min(i, j)
        if s not in letters:
            k = len(letters)
            letters[s] = chr(ord("A") + k) if k < 26 else f"[{k + 1}]"
        out.append(letters[s])
    return "".join(out)


def from_code(text):
    """Letters only (no bracket tokens)."""
    seen = {}
    p = [None] * len(text)
    for i, ch in enumerate(text):
        if ch == ".":
            p[i] = i
        elif ch in seen:
            j = seen.pop(ch)
            p[i], p[j] = j, i
        else:
            seen[ch] = i
    assert not seen, text
    return tuple(p)


def chords(p):
    return [(i, j) for i, j in enumerate(p) if i < j]


def dots(p):
    return [i for i, j in enumerate(p) if i == j]


def cross(c, d):
    (a, b), (x, y) = sorted([c, d])
    return a < x < b < y


def quasiplanar(p):
    return not any(a < x < b for a, b in chords(p) for x in dots(p))


def regular(p):
    cs = chords(p)
    for c in cs:
        for d in cs:
            if c != d and c[0] < d[0] and d[1] < c[1]:
                return False
    return True


def connected(p):
    """Union-find over pairs: chords joined on crossing, dots joined to chords above them."""
    items = [(i, j) for i, j in enumerate(p) if i <= j]
    parent = list(range(len(items)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for s, t in itertools.combinations(range(len(items)), 2):
        (a, b), (x, y) = items[s], items[t]
        linked = False
        if a < b and x < y:
            linked = cross((a, b), (x, y))
        elif a < b and x == y:
            linked = a < x < b
        elif a == b and x < y:
            linked = x < a < y
        if linked:
            parent[find(s)] = find(t)
    return len({find(s) for s in range(len(items))}) <= 1


def blocks(p):
    """Split at every position where no chord passes over the gap."""
    out = []
    start = 0
    reach = -1
    for i, j in enumerate(p):
        reach = max(reach, j)
        if reach == i:
            out.append(tuple(x - start for x in p[start:i + 1]))
            start = i + 1
    return out


def glue(*ps):
    out = []
    for p in ps:
        off = len(out)
        out.extend(x + off for x in p)
    return tuple(out)


def sub(p, chosen_pairs):
    pts = sorted({x for pr in chosen_pairs for x in pr})
    idx = {x: k for k, x in enumerate(pts)}
    return tuple(idx[p[x]] for x in pts)


def pairs(p):
    return [(i, j) for i, j in enumerate(p) if i <= j]


def wick_bruteforce(n):
    """Coefficient of every involution on n points in W([n]).

    A diagram occurs iff each of its cut blocks is a dot or a connected
    chord-only diagram; its sign is (-1)**(n + number of blocks).
    """
    out = {}
    for p in involutions(n):
        bs = blocks(p)
        if all(b == (0,) or (not dots(b) and connected(b)) for b in bs):
            out[code(p)] = (-1) ** (n + len(bs))
    return out


def antipode_takeuchi(p):
    """S(D) = sum over ordered set partitions of the pairs, (-1)**k times the glued blocks."""
    prs = pairs(p)
    n = len(prs)
    out = Counter()
    if n == 0:
        out[code(())] = 1
        return dict(out)
    for labels in itertools.product(range(n), repeat=n):
        k = max(labels) + 1
        if set(labels) != set(range(k)):
            continue
        parts = [sub(p, [prs[i] for i in range(n) if labels[i] == b]) for b in range(k)]
        out[code(glue(*parts))] += (-1) ** k
    return {c: v for c, v in out.items() if v}


def coproduct_bitmask(p):
    prs = pairs(p)
    out = Counter()
    for mask in range(1 << len(prs)):
        left = [prs[i] for i in range(len(prs)) if mask >> i & 1]
        right = [prs[i] for i in range(len(prs)) if not mask >> i & 1]
        out[(code(sub(p, left)), code(sub(p, right)))] += 1
    return dict(out)


def shuffles_by_permutation(u, v):
    """Multiset of merged words, by filtering all orderings of the tagged letters."""
    tagged = [("u", k) for k in range(len(u))] + [("v", k) for k in range(len(v))]
    out = Counter()
    for perm in itertools.permutations(tagged):
        us = [k for t, k in perm if t == "u"]
        vs = [k for t, k in perm if t == "v"]
        if us == sorted(us) and vs == sorted(vs):
            word = tuple(u[k] if t == "u" else v[k] for t, k in perm)
            out[word] += 1
    return out


def extended_incidence(p):
    prs = pairs(p)
    n = len(prs)
    adj = [[0] * n for _ in range(n)]
    for s, t in itertools.combinations(range(n), 2):
        (a, b), (x, y) = prs[s], prs[t]
        if a < b and x < y:
            e = cross((a, b), (x, y))
        elif a < b:
            e = a < x < b
        elif x < y:
            e = x < a < y
        else:
            e = False
        adj[s][t] = adj[t][s] = int(e)
    return adj


def has_isolated_chord(p):
    cs = chords(p)
    return any(not any(cross(c, d) for d in cs if d != c) for c in cs)
