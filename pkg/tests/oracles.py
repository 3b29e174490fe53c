"""Brute-force reference implementations used to cross-check the package.

Everything here works on plain nested lists (0-based, identity 0) and never
calls into ``aloops`` beyond reading ``Q.table``.
"""
from __future__ import annotations

from itertools import permutations


def rows_of(Q) -> list[list[int]]:
    return [list(map(int, r)) for r in Q.table]


def ldiv(t, x, y):
    return next(z for z in range(len(t)) if t[x][z] == y)


def rdiv(t, x, y):
    return next(z for z in range(len(t)) if t[z][y] == x)


def is_latin_loop(t) -> bool:
    n = len(t)
    full = set(range(n))
    if any(set(r) != full for r in t):
        return False
    if any({t[r][c] for r in range(n)} != full for c in range(n)):
        return False
    return t[0] == list(range(n)) and [t[r][0] for r in range(n)] == list(range(n))


def is_associative(t) -> bool:
    n = len(t)
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x in range(n) for y in range(n) for z in range(n))


def is_commutative(t) -> bool:
    n = len(t)
    return all(t[x][y] == t[y][x] for x in range(n) for y in range(n))


def is_hom(t, f) -> bool:
    n = len(t)
    return all(f[t[x][y]] == t[f[x]][f[y]] for x in range(n) for y in range(n))


def left_inner(t, x, y):
    """L_{x,y}(z) = (yx) \\ (y(xz))."""
    n = len(t)
    yx = t[y][x]
    return [ldiv(t, yx, t[y][t[x][z]]) for z in range(n)]


def right_inner(t, x, y):
    """R_{x,y}(z) = ((zx)y) / (xy)."""
    n = len(t)
    xy = t[x][y]
    return [rdiv(t, t[t[z][x]][y], xy) for z in range(n)]


def middle_inner(t, x):
    """T_x(y) = x \\ (yx)."""
    return [ldiv(t, x, t[y][x]) for y in range(len(t))]


def automorphic_flags(t) -> tuple[bool, bool, bool]:
    n = len(t)
    left = all(is_hom(t, left_inner(t, x, y)) for x in range(n) for y in range(n))
    right = all(is_hom(t, right_inner(t, x, y)) for x in range(n) for y in range(n))
    middle = all(is_hom(t, middle_inner(t, x)) for x in range(n))
    return left, right, middle


def nuclei(t) -> dict[str, set[int]]:
    n = len(t)
    r = range(n)
    nl = {a for a in r if all(t[a][t[x][y]] == t[t[a][x]][y] for x in r for y in r)}
    nm = {a for a in r if all(t[x][t[a][y]] == t[t[x][a]][y] for x in r for y in r)}
    nr = {a for a in r if all(t[x][t[y][a]] == t[t[x][y]][a] for x in r for y in r)}
    nuc = nl & nm & nr
    z = {a for a in nuc if all(t[a][x] == t[x][a] for x in r)}
    return {"left": nl, "middle": nm, "right": nr, "nucleus": nuc, "center": z}


def subloop_closure(t, seeds) -> set[int]:
    S = {0, *seeds}
    while True:
        new = set(S)
        for a in S:
            for b in S:
                new |= {t[a][b], ldiv(t, a, b), rdiv(t, a, b)}
        if new == S:
            return S
        S = new


def isomorphic(t1, t2) -> bool:
    """Exhaustive search over bijections fixing the identity (small orders only)."""
    n = len(t1)
    if n != len(t2):
        return False
    for rest in permutations(range(1, n)):
        f = (0, *rest)
        if all(f[t1[x][y]] == t2[f[x]][f[y]] for x in range(n) for y in range(n)):
            return True
    return False


def count_classes(tables) -> int:
    reps: list = []
    for t in tables:
        if not any(isomorphic(t, r) for r in reps):
            reps.append(t)
    return len(reps)


def sqrt_of(t, x):
    roots = [y for y in range(len(t)) if t[y][y] == x]
    assert len(roots) == 1
    return roots[0]


def bruck_operation(t) -> list[list[int]]:
    """x o y = (x^-1 \\ (y^2 x))^(1/2) in a uniquely 2-divisible loop."""
    n = len(t)
    inv = [ldiv(t, x, 0) for x in range(n)]
    return [[sqrt_of(t, ldiv(t, inv[x], t[t[y][y]][x])) for y in range(n)] for x in range(n)]


def reduced_latin_squares(n: int):
    """Cell-by-cell generator of Latin squares with first row and column 0..n-1."""
    grid = [[-1] * n for _ in range(n)]
    for i in range(n):
        grid[0][i] = i
        grid[i][0] = i
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]

    def go(k):
        if k == len(cells):
            yield [row[:] for row in grid]
            return
        r, c = cells[k]
        used = set(grid[r][:c]) | {grid[i][c] for i in range(r)}
        for v in range(n):
            if v not in used:
                grid[r][c] = v
                yield from go(k + 1)
        grid[r][c] = -1

    yield from go(0)


def count_reduced_latin(n: int) -> int:
    return sum(1 for _ in reduced_latin_squares(n))


def loops_in_group(gens_G, gens_H, d) -> set:
    """All loops on 0..d-1 whose left translations lie in <gens_G> and on which every h in
    gens_H acts as an automorphism."""
    G = perm_closure([tuple(g) for g in gens_G], d)
    out = set()
    for t in reduced_latin_squares(d):
        if all(tuple(r) in G for r in t) and all(is_hom(t, h) for h in gens_H):
            out.add(tuple(map(tuple, t)))
    return out


def perm_closure(gens, degree) -> set[tuple[int, ...]]:
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[i]] for i in range(degree))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def multiplication_group_order(t) -> int:
    n = len(t)
    gens = [tuple(t[x]) for x in range(n)] + [tuple(t[y][x] for y in range(n)) for x in range(n)]
    return len(perm_closure(gens, n))


def mobius_orbit(p: int, tt: int):
    """Forward orbit of 0 under x -> (x+1)/(tx+1) mod p, or None if undefined."""
    orbit = []
    x = 0
    for _ in range(p + 1):
        den = (tt * x + 1) % p
        if den == 0:
            return None
        x = (x + 1) * pow(den, -1, p) % p
        if x in orbit:
            return orbit
        orbit.append(x)
    return orbit
