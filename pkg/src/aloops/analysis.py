"""Structural analysis of finite loops.

Inner mappings follow Bruck's generating set::

    L_{x,y}(z) = (yx) \\ (y(xz)),   R_{x,y}(z) = ((zx)y) / (xy),   T_x(y) = x \\ (yx)

Most scans are vectorized over the whole table; results that are reused
(inner-map stacks, nuclei, multiplication groups) are cached on the loop.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import (BudgetExceeded, CapExceeded, DecompositionFailed, IllDefined,
                     InternalCheckFailed, NotASubloop, NotCommutativeAutomorphic, NotNormal)
from .perm import DEFAULT_CAP, Permutation, PermGroup, closure, is_primitive, stabilizer, \
    subgroup_from_elements
from .table import LoopTable, direct_product

DEFAULT_AUT_BUDGET = 10_000_000


def _cached(Q: LoopTable, key, fn):
    try:
        return Q._cache[key]
    except KeyError:
        val = Q._cache[key] = fn()
        return val


# ------------------------------------------------------------ inner maps

def left_inner_stack(Q: LoopTable) -> np.ndarray:
    """Array ``M[x, y]`` holding the images of ``L_{x,y}``."""
    def build():
        t, ld = Q.table, Q.ldiv_table
        n = Q.n
        X = np.arange(n)[:, None, None]
        Y = np.arange(n)[None, :, None]
        Z = np.arange(n)[None, None, :]
        return ld[t[Y, X], t[Y, t[X, Z]]]
    return _cached(Q, "Lxy", build)


def right_inner_stack(Q: LoopTable) -> np.ndarray:
    """Array ``M[x, y]`` holding the images of ``R_{x,y}``."""
    def build():
        t, rd = Q.table, Q.rdiv_table
        n = Q.n
        X = np.arange(n)[:, None, None]
        Y = np.arange(n)[None, :, None]
        Z = np.arange(n)[None, None, :]
        return rd[t[t[Z, X], Y], t[X, Y]]
    return _cached(Q, "Rxy", build)


def middle_inner_stack(Q: LoopTable) -> np.ndarray:
    """Array ``M[x]`` holding the images of ``T_x``."""
    def build():
        t, ld = Q.table, Q.ldiv_table
        n = Q.n
        X = np.arange(n)[:, None]
        Y = np.arange(n)[None, :]
        return ld[X, t[Y, X]]
    return _cached(Q, "T", build)


@dataclass(frozen=True)
class InnerGenerators:
    left: dict
    right: dict
    middle: dict

    def all(self) -> list[Permutation]:
        return [*self.left.values(), *self.right.values(), *self.middle.values()]


def inner_generators(Q: LoopTable) -> InnerGenerators:
    n = Q.n
    Lm, Rm, Tm = left_inner_stack(Q), right_inner_stack(Q), middle_inner_stack(Q)
    left = {(x, y): Permutation._raw(Lm[x, y].tolist()) for x in range(n) for y in range(n)}
    right = {(x, y): Permutation._raw(Rm[x, y].tolist()) for x in range(n) for y in range(n)}
    middle = {x: Permutation._raw(Tm[x].tolist()) for x in range(n)}
    return InnerGenerators(left, right, middle)


def _all_inner_maps(Q: LoopTable) -> np.ndarray:
    def build():
        n = Q.n
        M = np.concatenate([left_inner_stack(Q).reshape(n * n, n),
                            right_inner_stack(Q).reshape(n * n, n),
                            middle_inner_stack(Q)])
        return np.unique(M, axis=0)
    return _cached(Q, "inner_all", build)


# ------------------------------------------------------- mult. groups

def mlt(Q: LoopTable, cap: int = DEFAULT_CAP) -> PermGroup:
    gens = [Q.L(x) for x in range(1, Q.n)] + [Q.R(x) for x in range(1, Q.n)]
    return _cached(Q, ("mlt", cap), lambda: closure(gens, cap=cap, degree=Q.n))


def lmlt(Q: LoopTable, cap: int = DEFAULT_CAP) -> PermGroup:
    gens = [Q.L(x) for x in range(1, Q.n)]
    return _cached(Q, ("lmlt", cap), lambda: closure(gens, cap=cap, degree=Q.n))


def inn(Q: LoopTable, cap: int = DEFAULT_CAP) -> PermGroup:
    """Stabilizer of the identity in Mlt(Q)."""
    return _cached(Q, ("inn", cap), lambda: stabilizer(mlt(Q, cap), 0))


def inn_from_generators(Q: LoopTable, cap: int = DEFAULT_CAP) -> PermGroup:
    gens = [Permutation._raw(r.tolist()) for r in _all_inner_maps(Q)]
    return closure(gens, cap=cap, degree=Q.n)


# ---------------------------------------------------------- automorphisms

def is_automorphism(Q: LoopTable, f) -> bool:
    f = np.asarray(f)
    t = Q.table
    if f.shape != (Q.n,) or f[0] != 0:
        return False
    return bool((f[t] == t[np.ix_(f, f)]).all())


def _all_automorphisms(Q: LoopTable, maps: np.ndarray) -> bool:
    """True iff every row of ``maps`` is an automorphism."""
    if len(maps) == 0:
        return True
    t = Q.table
    n = Q.n
    chunk = max(1, 4_000_000 // (n * n))
    for start in range(0, len(maps), chunk):
        M = maps[start:start + chunk]
        lhs = M[:, t]
        rhs = t[M[:, :, None], M[:, None, :]]
        if not (lhs == rhs).all():
            return False
    return True


@dataclass(frozen=True)
class AutomorphicClass:
    left: bool
    right: bool
    middle: bool

    @property
    def full(self) -> bool:
        return self.left and self.right and self.middle


def automorphic_class(Q: LoopTable) -> AutomorphicClass:
    def build():
        n = Q.n
        middle = _all_automorphisms(Q, middle_inner_stack(Q))
        left = _all_automorphisms(Q, left_inner_stack(Q).reshape(n * n, n))
        right = _all_automorphisms(Q, right_inner_stack(Q).reshape(n * n, n))
        ac = AutomorphicClass(left, right, middle)
        full = left and right and middle
        if full != (left and middle) or full != (right and middle):
            raise InternalCheckFailed(f"left/middle/right automorphic flags inconsistent: {ac}")
        return ac
    return _cached(Q, "aclass", build)


def is_automorphic(Q: LoopTable) -> bool:
    return automorphic_class(Q).full


# ------------------------------------------------------------------ nuclei

@dataclass(frozen=True)
class NucleiReport:
    left: frozenset
    middle: frozenset
    right: frozenset
    nucleus: frozenset
    center: frozenset
    normal: dict


def _mask_to_set(mask) -> frozenset:
    return frozenset(int(i) for i in np.flatnonzero(mask))


def left_nucleus(Q: LoopTable) -> frozenset:
    return _mask_to_set(Q.associativity_cube.all(axis=(1, 2)))


def middle_nucleus(Q: LoopTable) -> frozenset:
    return _mask_to_set(Q.associativity_cube.all(axis=(0, 2)))


def right_nucleus(Q: LoopTable) -> frozenset:
    return _mask_to_set(Q.associativity_cube.all(axis=(0, 1)))


def center(Q: LoopTable) -> frozenset:
    def build():
        N = left_nucleus(Q) & middle_nucleus(Q) & right_nucleus(Q)
        comm = (Q.table == Q.table.T).all(axis=1)
        return frozenset(a for a in N if comm[a])
    return _cached(Q, "center", build)


def nuclei(Q: LoopTable) -> NucleiReport:
    def build():
        nl, nm, nr = left_nucleus(Q), middle_nucleus(Q), right_nucleus(Q)
        N = nl & nm & nr
        Z = center(Q)
        sets = {"left": nl, "middle": nm, "right": nr, "nucleus": N, "center": Z}
        normal = {k: is_normal(Q, v) for k, v in sets.items()}
        return NucleiReport(nl, nm, nr, N, Z, normal)
    return _cached(Q, "nuclei", build)


# ------------------------------------------------------ normal subloops

def _invariant_under_inner(Q: LoopTable, S: frozenset) -> bool:
    mask = np.zeros(Q.n, dtype=bool)
    mask[list(S)] = True
    M = _all_inner_maps(Q)
    return bool(mask[M[:, sorted(S)]].all())


def is_normal(Q: LoopTable, S: Iterable[int]) -> bool:
    S = frozenset(S)
    if not Q.is_subloop(S):
        raise NotASubloop("is_normal expects a subloop")
    return _invariant_under_inner(Q, S)


def normal_closure(Q: LoopTable, S: Iterable[int]) -> frozenset:
    M = _all_inner_maps(Q)
    cur = Q.subloop_generated(S)
    while True:
        images = frozenset(int(v) for v in np.unique(M[:, sorted(cur)]))
        nxt = Q.subloop_generated(cur | images)
        if nxt == cur:
            return cur
        cur = nxt


def cosets(Q: LoopTable, N: Iterable[int]) -> list[frozenset]:
    """Left cosets ``xN`` ordered by least element (the coset of 1 first)."""
    N = sorted(N)
    seen: set[int] = set()
    out = []
    for x in range(Q.n):
        if x in seen:
            continue
        c = frozenset(Q.rows[x][a] for a in N)
        seen |= c
        out.append(c)
    return out


def quotient(Q: LoopTable, N: Iterable[int], label: str | None = None) -> LoopTable:
    N = frozenset(N)
    if not is_normal(Q, N):
        raise NotNormal("quotient requires a normal subloop")
    cs = cosets(Q, N)
    which = np.empty(Q.n, dtype=np.int64)
    for i, c in enumerate(cs):
        which[list(c)] = i
    labels = which[Q.table]
    reps = [min(c) for c in cs]
    t = labels[np.ix_(reps, reps)]
    for i, ci in enumerate(cs):
        for j, cj in enumerate(cs):
            block = labels[np.ix_(sorted(ci), sorted(cj))]
            if (block != t[i, j]).any():
                raise IllDefined("coset product is not well defined")
    return LoopTable(t, label=label)


# ---------------------------------------------------------- solvability

def associator(Q: LoopTable, x: int, y: int, z: int) -> int:
    """``(x, y, z)`` defined by ``(xy)z = x(yz) * (x, y, z)``."""
    r = Q.rows
    return Q.ldiv(r[x][r[y][z]], r[r[x][y]][z])


def derived_subloop(Q: LoopTable) -> frozenset:
    def build():
        t, ld = Q.table, Q.ldiv_table
        assoc = ld[t[:, t], t[t]]
        comm = ld[t, t.T]
        seeds = set(np.unique(assoc).tolist()) | set(np.unique(comm).tolist())
        D = normal_closure(Q, seeds)
        Qd = quotient(Q, D)
        if not Qd.is_abelian_group:
            raise InternalCheckFailed("quotient by the derived subloop is not an abelian group")
        return D
    return _cached(Q, "derived", build)


def derived_series(Q: LoopTable) -> list[LoopTable]:
    series = [Q]
    while series[-1].n > 1:
        D = derived_subloop(series[-1])
        if len(D) == series[-1].n:
            break
        series.append(series[-1].sub_table(D))
    return series


def is_solvable_loop(Q: LoopTable) -> bool:
    return derived_series(Q)[-1].n == 1


def upper_central_series(Q: LoopTable) -> list[frozenset]:
    def build():
        series = [frozenset({0})]
        while True:
            Z = series[-1]
            Qz = quotient(Q, Z)
            cz = center(Qz)
            cs = cosets(Q, Z)
            nxt = frozenset().union(*(cs[i] for i in cz))
            if nxt == Z:
                return series
            series.append(nxt)
    return _cached(Q, "ucs", build)


def nilpotency_class(Q: LoopTable) -> int | None:
    """Least ``i`` with ``Z_i = Q``, or ``None`` when the series stalls below Q."""
    series = upper_central_series(Q)
    if len(series[-1]) == Q.n:
        return len(series) - 1
    return None


def is_simple(Q: LoopTable, cross_check: bool = True, cap: int = DEFAULT_CAP) -> bool:
    """Order 1 is reported as not simple."""
    if Q.n == 1:
        return False
    simple = all(len(normal_closure(Q, {x})) == Q.n for x in range(1, Q.n))
    if cross_check:
        try:
            primitive = is_primitive(mlt(Q, cap))
        except CapExceeded:
            return simple
        if primitive != simple:
            raise InternalCheckFailed("simplicity disagrees with primitivity of Mlt")
    return simple


# ------------------------------------------------------------ isomorphism

def element_invariants(Q: LoopTable) -> tuple:
    def build():
        A = Q.associativity_cube
        la = A.sum(axis=(1, 2))
        ma = A.sum(axis=(0, 2))
        ra = A.sum(axis=(0, 1))
        comm = (Q.table == Q.table.T).sum(axis=1)
        sq = Counter(Q.squaring)
        try:
            orders = Q.order_profile
        except Exception:
            orders = (0,) * Q.n
        sqo = [orders[Q.squaring[x]] for x in range(Q.n)]
        return tuple((orders[x], int(la[x]), int(ma[x]), int(ra[x]), int(comm[x]), sq[x], sqo[x])
                     for x in range(Q.n))
    return _cached(Q, "einv", build)


def order_profile_counts(Q: LoopTable) -> tuple:
    try:
        prof = Q.order_profile
    except Exception:
        return ()
    return tuple(sorted(Counter(prof).items()))


def fingerprint(Q: LoopTable) -> tuple:
    """(order, order profile, |N_l|, |N_m|, |N_r|, |Z|, commutative, associative)."""
    def build():
        return (Q.n, order_profile_counts(Q), len(left_nucleus(Q)), len(middle_nucleus(Q)),
                len(right_nucleus(Q)), len(center(Q)), Q.is_commutative, Q.is_associative)
    return _cached(Q, "fp", build)


def _generating_sequence(Q: LoopTable, rarity) -> list[int]:
    gens = []
    span = frozenset({0})
    while len(span) < Q.n:
        x = min((x for x in range(Q.n) if x not in span), key=lambda x: (rarity(x), x))
        gens.append(x)
        span = Q.subloop_generated(span | {x})
    return gens


def iter_isomorphisms(Q1: LoopTable, Q2: LoopTable, budget: int = DEFAULT_AUT_BUDGET) -> Iterator[Permutation]:
    """Yield every isomorphism ``Q1 -> Q2`` as a permutation of element labels."""
    n = Q1.n
    if n != Q2.n:
        return
    inv1, inv2 = element_invariants(Q1), element_invariants(Q2)
    if sorted(inv1) != sorted(inv2):
        return
    by_inv: dict = {}
    for y, key in enumerate(inv2):
        by_inv.setdefault(key, []).append(y)
    gens = _generating_sequence(Q1, lambda x: len(by_inv[inv1[x]]))
    r1, l1, d1 = Q1.rows, Q1._ld, Q1._rd
    r2, l2, d2 = Q2.rows, Q2._ld, Q2._rd
    nodes = 0

    def extend(phi, used, domain, a, b):
        # Assign a -> b, then close the partial map under products and divisions.
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            if phi[a] == b:
                continue
            if phi[a] != -1 or used[b] or inv1[a] != inv2[b]:
                return False
            phi[a] = b
            used[b] = True
            domain.append(a)
            for c in list(domain):
                e = phi[c]
                for u, v in ((r1[a][c], r2[b][e]), (r1[c][a], r2[e][b]), (l1[a][c], l2[b][e]),
                             (l1[c][a], l2[e][b]), (d1[a][c], d2[b][e]), (d1[c][a], d2[e][b])):
                    pu = phi[u]
                    if pu == -1:
                        queue.append((u, v))
                    elif pu != v:
                        return False
        return True

    def search(k, phi, used, domain):
        nonlocal nodes
        if k == len(gens):
            yield Permutation._raw(phi)
            return
        g = gens[k]
        if phi[g] != -1:
            yield from search(k + 1, phi, used, domain)
            return
        for b in by_inv[inv1[g]]:
            if used[b]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"isomorphism search exceeded {budget} nodes")
            phi2, used2, dom2 = list(phi), list(used), list(domain)
            if extend(phi2, used2, dom2, g, b):
                yield from search(k + 1, phi2, used2, dom2)

    phi0 = [-1] * n
    used0 = [False] * n
    phi0[0] = 0
    used0[0] = True
    yield from search(0, phi0, used0, [0])


def are_isomorphic(Q1: LoopTable, Q2: LoopTable, budget: int = DEFAULT_AUT_BUDGET) -> Permutation | None:
    if Q1.n != Q2.n or fingerprint(Q1) != fingerprint(Q2):
        return None
    return next(iter_isomorphisms(Q1, Q2, budget), None)


def automorphism_group(Q: LoopTable, budget: int = DEFAULT_AUT_BUDGET, cap: int = DEFAULT_CAP) -> PermGroup:
    def build():
        auts = []
        for f in iter_isomorphisms(Q, Q, budget):
            auts.append(f)
            if len(auts) > cap:
                raise CapExceeded(cap)
        return subgroup_from_elements(auts, Q.n)
    return _cached(Q, ("aut", budget, cap), build)


# ---------------------------------------------------- autotopisms

def is_autotopism(Q: LoopTable, f, g, h) -> bool:
    f, g, h = (np.asarray(p) for p in (f, g, h))
    t = Q.table
    return bool((t[np.ix_(f, g)] == h[t]).all())


def pseudo_automorphism_companions(Q: LoopTable, f) -> frozenset:
    """All ``c`` with ``f(x) * (f(y) c) = f(xy) c`` for every x, y."""
    f = np.asarray(f)
    t = Q.table
    out = set()
    for c in range(Q.n):
        fyc = t[f, c]
        lhs = t[f[:, None], fyc[None, :]]
        rhs = t[f[t], c]
        if (lhs == rhs).all():
            out.add(c)
    return frozenset(out)


# ------------------------------------------------------ torsion split

def _is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def decompose_torsion(Q: LoopTable) -> tuple[frozenset, frozenset]:
    """Split a finite commutative automorphic loop into 2-part and odd part."""
    if not (Q.is_commutative and is_automorphic(Q)):
        raise NotCommutativeAutomorphic("torsion decomposition needs a commutative automorphic loop")
    orders = Q.order_profile
    A = frozenset(x for x in range(Q.n) if _is_power_of_two(orders[x]))
    B = frozenset(x for x in range(Q.n) if orders[x] % 2 == 1)
    if not (Q.is_subloop(A) and Q.is_subloop(B)):
        raise DecompositionFailed("torsion parts are not subloops")
    if not _is_power_of_two(len(A)) or len(B) % 2 == 0:
        raise DecompositionFailed("torsion part orders are wrong")
    if len(A) * len(B) != Q.n:
        raise DecompositionFailed("torsion parts do not account for the whole loop")
    prod = direct_product(Q.sub_table(A), Q.sub_table(B))
    if are_isomorphic(Q, prod) is None:
        raise DecompositionFailed("loop is not the direct product of its torsion parts")
    return A, B
