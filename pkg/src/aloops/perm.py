"""Permutations and materialized permutation groups.

Points are ``0..d-1``. A :class:`Permutation` is a tuple of images, so it
hashes and compares by its image array. Products compose right to left,
``(p * q)(x) == p(q(x))``, matching the way translations are composed in
loop theory (``L_x L_y`` applies ``L_y`` first).

Groups are materialized by breadth-first closure under a hard element cap.
"""
from __future__ import annotations

from collections import deque
from itertools import permutations as _iter_permutations
from math import gcd
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CapExceeded, EvenOrder, LoopError, NotAnAutomorphism, NotTransitive

DEFAULT_CAP = 2_000_000


class Permutation(tuple):
    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise LoopError(f"not a permutation of 0..{len(images) - 1}: {images}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return tuple.__new__(cls, range(degree))

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> "Permutation":
        return cls(i - 1 for i in images)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Iterable[int]) -> "Permutation":
        """Build from 0-based cycles, e.g. ``from_cycles(4, (0, 1), (2, 3))``."""
        img = list(range(degree))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    def one_based(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self)

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, x: int) -> int:
        return self[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return tuple.__new__(Permutation, map(self.__getitem__, other))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return tuple.__new__(Permutation, inv)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(len(self))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by * self * by^-1``."""
        out = [0] * len(self)
        for i, j in enumerate(self):
            out[by[i]] = by[j]
        return tuple.__new__(Permutation, out)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        m = 1
        for c in self.cycles():
            m = m * len(c) // gcd(m, len(c))
        return m

    def __repr__(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return f"Permutation.identity({len(self)})"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in nontrivial)


def is_fixed_point_free(p: Permutation) -> bool:
    return all(i != j for i, j in enumerate(p))


class PermGroup:
    """A finitely generated permutation group, materialized lazily.

    ``elements`` triggers a breadth-first closure bounded by ``cap``; the
    materialized set is immutable afterwards.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 cap: int = DEFAULT_CAP, elements: Iterable[Permutation] | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise LoopError("degree is required for a group without generators")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise LoopError("generators have differing degrees")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self.cap = cap
        self._elements = frozenset(elements) if elements is not None else None

    @property
    def elements(self) -> frozenset[Permutation]:
        if self._elements is None:
            self._elements = _bfs_closure(self.generators, self.degree, self.cap)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, p) -> bool:
        return p in self.elements

    def __iter__(self) -> Iterator[Permutation]:
        return iter(sorted(self.elements))

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other.elements for g in self.generators)

    def __repr__(self) -> str:
        size = len(self._elements) if self._elements is not None else "?"
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)}, order={size})"


def _bfs_closure(gens, degree, cap) -> frozenset:
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise CapExceeded(cap)
                queue.append(h)
    return frozenset(seen)


def closure(gens: Iterable[Permutation], cap: int = DEFAULT_CAP, degree: int | None = None) -> PermGroup:
    G = PermGroup(gens, degree=degree, cap=cap)
    G.elements
    return G


def subgroup_from_elements(elements: Iterable[Permutation], degree: int) -> PermGroup:
    """Wrap an element set that is already known to be a group."""
    elements = frozenset(elements)
    return PermGroup(_small_generating_set(elements, degree), degree=degree, elements=elements)


def _small_generating_set(elements, degree) -> list[Permutation]:
    gens: list[Permutation] = []
    span = {Permutation.identity(degree)}
    for g in sorted(elements):
        if g not in span:
            gens.append(g)
            span = set(_bfs_closure(gens, degree, len(elements)))
            if len(span) == len(elements):
                break
    return gens


def symmetric_group(d: int) -> PermGroup:
    if d <= 1:
        return closure([], degree=max(d, 1))
    gens = [Permutation.from_cycles(d, (0, 1))]
    if d > 2:
        gens.append(Permutation.from_cycles(d, tuple(range(d))))
    return closure(gens)


def alternating_group(d: int) -> PermGroup:
    if d <= 2:
        return closure([], degree=max(d, 1))
    gens = [Permutation.from_cycles(d, (0, 1, i)) for i in range(2, d)]
    return closure(gens)


def cyclic_group(d: int) -> PermGroup:
    return closure([Permutation.from_cycles(d, tuple(range(d)))] if d > 1 else [], degree=d)


# ---------------------------------------------------------------- actions

def orbit(G: PermGroup, pt: int) -> frozenset[int]:
    seen = {pt}
    queue = [pt]
    while queue:
        x = queue.pop()
        for g in G.generators:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def orbits(G: PermGroup, points: Iterable[int] | None = None) -> list[frozenset[int]]:
    remaining = sorted(range(G.degree) if points is None else points)
    out, done = [], set()
    for x in remaining:
        if x not in done:
            o = orbit(G, x)
            done |= o
            out.append(o)
    return out


def stabilizer(G: PermGroup, pt: int) -> PermGroup:
    return subgroup_from_elements((g for g in G.elements if g[pt] == pt), G.degree)


def is_transitive(G: PermGroup, k: int = 1) -> bool:
    """Transitivity on ordered k-tuples of distinct points (k <= 4)."""
    d = G.degree
    if k > d:
        raise LoopError(f"k={k} exceeds degree {d}")
    if k > 4:
        raise LoopError("k-transitivity is only tested for k <= 4")
    needed = 1
    for i in range(k):
        needed *= d - i
    if G.order < needed:
        return False
    start = tuple(range(k))
    seen = {start}
    queue = [start]
    while queue:
        t = queue.pop()
        for g in G.generators:
            u = tuple(g[i] for i in t)
            if u not in seen:
                seen.add(u)
                if len(seen) == needed:
                    return True
                queue.append(u)
    return len(seen) == needed


def minimal_block(G: PermGroup, a: int, b: int) -> list[int]:
    """Finest G-invariant partition merging ``a`` and ``b``, as a root array."""
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = [(a, b)]
    parent[find(b)] = find(a)
    while pending:
        x, y = pending.pop()
        for g in G.generators:
            rx, ry = find(g[x]), find(g[y])
            if rx != ry:
                parent[ry] = rx
                pending.append((g[x], g[y]))
    return [find(x) for x in range(G.degree)]


def is_primitive(G: PermGroup) -> bool:
    if not is_transitive(G):
        raise NotTransitive("primitivity is defined for transitive groups")
    d = G.degree
    for b in range(1, d):
        roots = minimal_block(G, 0, b)
        if len(set(roots)) != 1:
            return False
    return True


def block_system(G: PermGroup, a: int, b: int) -> list[frozenset[int]]:
    roots = minimal_block(G, a, b)
    blocks: dict[int, set[int]] = {}
    for x, r in enumerate(roots):
        blocks.setdefault(r, set()).add(x)
    return sorted((frozenset(s) for s in blocks.values()), key=min)


# ----------------------------------------------------------- subgroups

def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``[a, b] = a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def normal_closure(G: PermGroup, seeds: Iterable[Permutation]) -> PermGroup:
    gens = [s for s in seeds if not s.is_identity()]
    H = closure(gens, cap=G.cap, degree=G.degree)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for s in list(H.generators):
                c = s.conjugate(g)
                if c not in H.elements:
                    gens.append(c)
                    H = closure(gens, cap=G.cap, degree=G.degree)
                    changed = True
    return H


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(G, comms)


def is_solvable_group(G: PermGroup) -> bool:
    H = G
    while H.order > 1:
        D = derived_subgroup(H)
        if D.order == H.order:
            return False
        H = D
    return True


def conj_class(H: PermGroup, g: Permutation) -> frozenset[Permutation]:
    """``{h g h^-1 : h in H}``, by orbit search under the generators."""
    seen = {g}
    queue = [g]
    while queue:
        x = queue.pop()
        for h in H.generators:
            y = x.conjugate(h)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def centralizer(G: PermGroup, S: Iterable[Permutation]) -> PermGroup:
    S = list(S)
    return subgroup_from_elements((g for g in G.elements if all(g * s == s * g for s in S)), G.degree)


def is_twisted_subgroup(ambient: PermGroup, S: Iterable[Permutation]) -> bool:
    S = frozenset(S)
    if not S <= ambient.elements:
        return False
    if ambient.identity() not in S:
        return False
    if any(x.inverse() not in S for x in S):
        return False
    return all(x * y * x in S for x in S for y in S)


def k_tau(G: PermGroup, t: Permutation) -> frozenset[Permutation]:
    """``K(tau) = {x in G : tau(x) = x^-1}`` for tau = conjugation by ``t``."""
    if any(g.conjugate(t) not in G.elements for g in G.generators):
        raise NotAnAutomorphism("conjugation by t does not preserve G")
    return frozenset(x for x in G.elements if x.conjugate(t) == x.inverse())


def group_sqrt(G: PermGroup, g: Permutation) -> Permutation:
    if g not in G.elements:
        raise LoopError("element not in group")
    m = g.order()
    if m % 2 == 0:
        raise EvenOrder(f"element of even order {m} has no canonical square root")
    return g ** ((m + 1) // 2)


def all_permutations(d: int) -> Iterator[Permutation]:
    for p in _iter_permutations(range(d)):
        yield Permutation._raw(p)


# ---------------------------------------------------------------- I/O

def parse_generators(text: str) -> list[Permutation]:
    gens: list[Permutation] = []
    degree = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            images = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise LoopError(f"line {lineno}: non-integer entry") from exc
        if degree is None:
            degree = len(images)
        elif len(images) != degree:
            raise LoopError(f"line {lineno}: expected {degree} images, got {len(images)}")
        gens.append(Permutation.from_one_based(images))
    return gens


def format_generators(gens: Iterable[Permutation], header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [" ".join(str(i) for i in g.one_based()) for g in gens]
    return "\n".join(lines) + "\n"


def read_group(path, cap: int = DEFAULT_CAP) -> PermGroup:
    gens = parse_generators(Path(path).read_text())
    if not gens:
        raise LoopError(f"{path}: no generators")
    return PermGroup(gens, degree=len(gens[0]), cap=cap)
