#!/usr/bin/env python3
"""Regenerate the built-in group and character-table assets.

Groups are closed from permutation generators in breadth-first discovery
order (identity first, products g*s for each generator s in order), with
the left-to-right convention: (g*h)(i) = h(g(i)). This must match
`FiniteGroup::from_permutations` in the core crate.

Character values come from explicit representations or permutation
characters, never from the class-algebra eigen-solver, so the shipped
tables serve as an independent check of `compute_character_table`.
"""
import cmath
import math
import os
import sys

import numpy as np

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")


def perm_from_cycles(m, cycles):
    p = list(range(m))
    for c in cycles:
        for i, a in enumerate(c):
            p[a - 1] = c[(i + 1) % len(c)] - 1
    return tuple(p)


def compose(g, h):
    # apply g first, then h
    return tuple(h[g[i]] for i in range(len(g)))


def close(gens, m):
    ident = tuple(range(m))
    elems = [ident]
    index = {ident: 0}
    words = [[]]  # generator path from identity
    q = 0
    while q < len(elems):
        g = elems[q]
        for si, s in enumerate(gens):
            h = compose(g, s)
            if h not in index:
                index[h] = len(elems)
                elems.append(h)
                words.append(words[q] + [si])
        q += 1
    n = len(elems)
    mul = [[index[compose(elems[a], elems[b])] for b in range(n)] for a in range(n)]
    return elems, mul, words


def classes(mul):
    n = len(mul)
    inv = [next(b for b in range(n) if mul[a][b] == 0) for a in range(n)]
    cls = [-1] * n
    reps, sizes = [], []
    for g in range(n):
        if cls[g] >= 0:
            continue
        k = len(reps)
        orbit = {mul[mul[inv[x]][g]][x] for x in range(n)}
        for h in orbit:
            cls[h] = k
        reps.append(g)
        sizes.append(len(orbit))
    return cls, reps, sizes


def rep_character(mul, words, images):
    """Trace of the homomorphism fixed by generator images; checks the hom law."""
    n = len(mul)
    dim = images[0].shape[0]
    mats = []
    for w in words:
        m = np.eye(dim, dtype=complex)
        for s in w:
            m = m @ images[s]
        mats.append(m)
    for a in range(n):
        for b in range(n):
            if not np.allclose(mats[mul[a][b]], mats[a] @ mats[b], atol=1e-12):
                raise SystemExit("generator images do not define a homomorphism")
    return [complex(np.trace(m)) for m in mats]


def fix(p):
    return sum(1 for i, x in enumerate(p) if i == x)


def sign(p):
    seen, s = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def rot(theta):
    return np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]], dtype=complex)


def one(z):
    return np.array([[z]], dtype=complex)


def q8_generators():
    # elements 1,-1,i,-i,j,-j,k,-k as points 1..8; left multiplication
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    table = {
        ("i", "1"): "i", ("i", "-1"): "-i", ("i", "i"): "-1", ("i", "-i"): "1",
        ("i", "j"): "k", ("i", "-j"): "-k", ("i", "k"): "-j", ("i", "-k"): "j",
        ("j", "1"): "j", ("j", "-1"): "-j", ("j", "i"): "-k", ("j", "-i"): "k",
        ("j", "j"): "-1", ("j", "-j"): "1", ("j", "k"): "i", ("j", "-k"): "-i",
    }
    gens = []
    for g in ("i", "j"):
        gens.append(tuple(names.index(table[(g, x)]) for x in names))
    return gens


def build(name, m, gens):
    elems, mul, words = close(gens, m)
    cls, reps, sizes = classes(mul)
    return elems, mul, words, cls, reps, sizes


def fmt_complex(z):
    re = 0.0 if abs(z.real) < 5e-16 else z.real
    im = 0.0 if abs(z.imag) < 5e-16 else z.imag
    sign_ch = "-" if im < 0 else "+"
    return f"{re:.15f}{sign_ch}{abs(im):.15f}i"


def emit(name, mul, reps, sizes, rows):
    n = len(mul)
    with open(os.path.join(OUT, "groups", f"{name}.grp"), "w") as f:
        f.write(f"group {name} order {n}\n")
        for row in mul:
            f.write(" ".join(str(x) for x in row) + "\n")
    with open(os.path.join(OUT, "tables", f"{name}.tbl"), "w") as f:
        f.write(f"chartable {name} classes {len(reps)}\n")
        f.write(" ".join(str(r) for r in reps) + "\n")
        f.write(" ".join(str(s) for s in sizes) + "\n")
        for row in rows:
            f.write(" ".join(fmt_complex(row[r]) for r in reps) + "\n")


def main():
    entries = []
    for n in range(2, 13):
        gens = [perm_from_cycles(n, [list(range(1, n + 1))])]
        reps = [[one(cmath.exp(2j * math.pi * k / n))] for k in range(n)]
        entries.append((f"Z{n}", n, gens, reps, []))

    s3 = [perm_from_cycles(3, [[1, 2]]), perm_from_cycles(3, [[1, 2, 3]])]
    entries.append(("S3", 3, s3, [], [lambda p: 1, sign, lambda p: fix(p) - 1]))

    def pairings_fixed(p):
        pairs = [frozenset({frozenset({0, 1}), frozenset({2, 3})}),
                 frozenset({frozenset({0, 2}), frozenset({1, 3})}),
                 frozenset({frozenset({0, 3}), frozenset({1, 2})})]
        return sum(1 for pr in pairs if frozenset(frozenset(p[i] for i in b) for b in pr) == pr)

    s4 = [perm_from_cycles(4, [[1, 2]]), perm_from_cycles(4, [[1, 2, 3, 4]])]
    entries.append(("S4", 4, s4, [], [
        lambda p: 1, sign, lambda p: pairings_fixed(p) - 1,
        lambda p: fix(p) - 1, lambda p: (fix(p) - 1) * sign(p)]))

    d4 = [perm_from_cycles(4, [[1, 2, 3, 4]]), perm_from_cycles(4, [[1, 3]])]
    refl_y = np.array([[-1, 0], [0, 1]], dtype=complex)
    entries.append(("D4", 4, d4, [
        [one(1), one(1)], [one(1), one(-1)], [one(-1), one(1)], [one(-1), one(-1)],
        [rot(math.pi / 2), refl_y]], []))

    d5 = [perm_from_cycles(5, [[1, 2, 3, 4, 5]]), perm_from_cycles(5, [[2, 5], [3, 4]])]
    refl_x = np.array([[1, 0], [0, -1]], dtype=complex)
    entries.append(("D5", 5, d5, [
        [one(1), one(1)], [one(1), one(-1)],
        [rot(2 * math.pi / 5), refl_x], [rot(4 * math.pi / 5), refl_x]], []))

    qi = np.array([[1j, 0], [0, -1j]], dtype=complex)
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    entries.append(("Q8", 8, q8_generators(), [
        [one(1), one(1)], [one(1), one(-1)], [one(-1), one(1)], [one(-1), one(-1)],
        [qi, qj]], []))

    w = cmath.exp(2j * math.pi / 3)
    a4 = [perm_from_cycles(4, [[1, 2, 3]]), perm_from_cycles(4, [[2, 3, 4]])]
    entries.append(("A4", 4, a4, [
        [one(1), one(1)], [one(w), one(w * w)], [one(w * w), one(w)]],
        [lambda p: fix(p) - 1]))

    for name, m, gens, reps, perm_chars in entries:
        elems, mul, words, cls, creps, sizes = build(name, m, gens)
        rows = [rep_character(mul, words, imgs) for imgs in reps]
        rows += [[complex(f(p)) for p in elems] for f in perm_chars]
        if len(rows) != len(creps):
            sys.exit(f"{name}: {len(rows)} characters for {len(creps)} classes")
        emit(name, mul, creps, sizes, rows)
        print(name, len(mul), sizes)


if __name__ == "__main__":
    main()
