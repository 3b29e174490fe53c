"""Cayley-table loops.

Elements are the integers ``0..n-1`` and the identity is ``0``. Text formats
and :func:`from_rows` use the 1-based labels ``1..n`` of the usual loop
literature, with ``1`` as identity; everything in between is 0-based.
"""
from __future__ import annotations

from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (LoopError, NoIdentity, NotLatin, NotPowerAssociative, NotUniquely2Divisible,
                     NoTwoSidedInverse)
from .perm import Permutation

LEFT, RIGHT = "left", "right"


class LoopTable:
    """An immutable loop given by its multiplication table.

    ``table[x, y]`` is the product ``x * y``. Construction validates the Latin
    property and the identity; use :func:`from_rows` for 1-based input.
    """

    def __init__(self, table, label: str | None = None, *, check: bool = True):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise LoopError("table must be a nonempty square array")
        n = t.shape[0]
        if check:
            _validate(t)
        t.flags.writeable = False
        self.table = t
        self.n = n
        self.label = label
        self._cache: dict = {}

    # ----------------------------------------------------------- basics
    def __len__(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"<LoopTable{tag} order={self.n}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, LoopTable) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in r) for r in self.table)

    @cached_property
    def ldiv_table(self) -> np.ndarray:
        """``ldiv_table[x, y]`` is ``x \\ y``: the z with ``x z = y``."""
        n = self.n
        out = np.empty_like(self.table)
        rng = np.arange(n)
        for x in range(n):
            out[x, self.table[x]] = rng
        out.flags.writeable = False
        return out

    @cached_property
    def rdiv_table(self) -> np.ndarray:
        """``rdiv_table[x, y]`` is ``x / y``: the z with ``z y = x``."""
        n = self.n
        out = np.empty_like(self.table)
        rng = np.arange(n)
        for y in range(n):
            out[self.table[:, y], y] = rng
        out.flags.writeable = False
        return out

    @cached_property
    def _ld(self):
        return tuple(tuple(int(v) for v in r) for r in self.ldiv_table)

    @cached_property
    def _rd(self):
        return tuple(tuple(int(v) for v in r) for r in self.rdiv_table)

    def mul(self, x: int, y: int) -> int:
        return self.rows[x][y]

    def ldiv(self, x: int, y: int) -> int:
        return self._ld[x][y]

    def rdiv(self, x: int, y: int) -> int:
        return self._rd[x][y]

    def divide(self, side: str, x: int, y: int) -> int:
        """Left: z with ``x z = y``. Right: z with ``z y = x``."""
        if side == LEFT:
            return self.ldiv(x, y)
        if side == RIGHT:
            return self.rdiv(x, y)
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def translation(self, side: str, x: int) -> Permutation:
        if side == LEFT:
            return Permutation._raw(self.rows[x])
        if side == RIGHT:
            return Permutation._raw(int(v) for v in self.table[:, x])
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def L(self, x: int) -> Permutation:
        return self.translation(LEFT, x)

    def R(self, x: int) -> Permutation:
        return self.translation(RIGHT, x)

    # ------------------------------------------------------ structure flags
    @cached_property
    def associativity_cube(self) -> np.ndarray:
        """Boolean array with ``[x, y, z]`` true iff ``(xy)z == x(yz)``."""
        t = self.table
        return t[t] == t[:, t]

    @cached_property
    def is_associative(self) -> bool:
        return bool(self.associativity_cube.all())

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.table == self.table.T).all())

    @property
    def is_abelian_group(self) -> bool:
        return self.is_commutative and self.is_associative

    # ------------------------------------------------------------ inverses
    def left_inverse(self, x: int) -> int:
        return self.rdiv(0, x)

    def right_inverse(self, x: int) -> int:
        return self.ldiv(x, 0)

    @cached_property
    def has_two_sided_inverses(self) -> bool:
        return all(self.left_inverse(x) == self.right_inverse(x) for x in range(self.n))

    def inverse(self, x: int) -> int:
        y = self.right_inverse(x)
        if self.left_inverse(x) != y:
            raise NoTwoSidedInverse(f"element {x + 1} has distinct left and right inverses")
        return y

    @cached_property
    def inversion(self) -> Permutation:
        """The map ``J: x -> x^-1``."""
        return Permutation._raw(self.inverse(x) for x in range(self.n))

    # -------------------------------------------------------------- powers
    def power(self, x: int, k: int) -> int:
        """Left nominal power: ``x^[0] = 1``, ``x^[k+1] = x x^[k]``, ``x^[-k] = (x^[k])^-1``."""
        if k < 0:
            return self.inverse(self.power(x, -k))
        row = self.rows[x]
        y = 0
        for _ in range(k):
            y = row[y]
        return y

    def element_order(self, x: int) -> int:
        return self.order_profile[x]

    @cached_property
    def order_profile(self) -> tuple[int, ...]:
        """Element orders, raising if some ``<x>`` is not a cyclic group."""
        return tuple(self._element_order(x) for x in range(self.n))

    def _element_order(self, x: int) -> int:
        row = self.rows[x]
        pw = [0]
        y = row[0]
        while y != 0 and len(pw) <= self.n:
            pw.append(y)
            y = row[y]
        if y != 0:
            raise NotPowerAssociative(f"powers of {x + 1} never return to the identity")
        m = len(pw)
        for i in range(m):
            ri = self.rows[pw[i]]
            for j in range(m):
                if ri[pw[j]] != pw[(i + j) % m]:
                    raise NotPowerAssociative(f"powers of {x + 1} do not form a cyclic group")
        return m

    @cached_property
    def squaring(self) -> tuple[int, ...]:
        return tuple(self.rows[x][x] for x in range(self.n))

    def is_uniquely_2_divisible(self) -> bool:
        return len(set(self.squaring)) == self.n

    @cached_property
    def _sqrt(self):
        if not self.is_uniquely_2_divisible():
            raise NotUniquely2Divisible("squaring map is not a bijection")
        out = [0] * self.n
        for x, y in enumerate(self.squaring):
            out[y] = x
        return tuple(out)

    def unique_sqrt(self, x: int) -> int:
        return self._sqrt[x]

    # ------------------------------------------------------------ subloops
    def subloop_generated(self, S: Iterable[int]) -> frozenset[int]:
        """Least subset containing ``S`` and the identity closed under the three operations."""
        elems = {0, *S}
        rows, ld, rd = self.rows, self._ld, self._rd
        frontier = list(elems)
        while frontier:
            new = set()
            current = list(elems)
            for a in frontier:
                for b in current:
                    for c in (rows[a][b], rows[b][a], ld[a][b], ld[b][a], rd[a][b], rd[b][a]):
                        if c not in elems:
                            new.add(c)
            elems |= new
            frontier = list(new)
        return frozenset(elems)

    def is_subloop(self, S: Iterable[int]) -> bool:
        S = frozenset(S)
        return 0 in S and self.subloop_generated(S) == S

    def sub_table(self, S: Iterable[int], label: str | None = None) -> "LoopTable":
        """The subloop on ``S`` relabeled by ascending element (identity stays 0)."""
        elems = sorted(S)
        if elems[0] != 0 or not self.is_subloop(elems):
            raise LoopError("not a subloop")
        index = {e: i for i, e in enumerate(elems)}
        t = [[index[self.rows[a][b]] for b in elems] for a in elems]
        return LoopTable(t, label=label, check=False)

    def relabel(self, perm: Sequence[int], label: str | None = None) -> "LoopTable":
        """Isomorphic copy: element ``x`` is renamed ``perm[x]``. Requires ``perm[0] == 0``."""
        perm = np.asarray(perm, dtype=np.int64)
        if perm[0] != 0:
            raise NoIdentity("relabeling must fix the identity")
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self.n)
        t = perm[self.table[np.ix_(inv, inv)]]
        return LoopTable(t, label=label or self.label, check=False)

    # ----------------------------------------------------------------- I/O
    def one_based_rows(self) -> list[list[int]]:
        return [[v + 1 for v in r] for r in self.rows]

    def to_text(self, header: Iterable[str] = ()) -> str:
        lines = [f"# {h}" for h in header]
        lines.append(str(self.n))
        lines += [" ".join(str(v) for v in r) for r in self.one_based_rows()]
        return "\n".join(lines) + "\n"


def _validate(t: np.ndarray) -> None:
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise LoopError("entries out of range")
    for r in range(n):
        seen = {}
        for c in range(n):
            v = int(t[r, c])
            if v in seen:
                raise NotLatin(r + 1, c + 1, "row")
            seen[v] = c
    for c in range(n):
        seen = set()
        for r in range(n):
            v = int(t[r, c])
            if v in seen:
                raise NotLatin(r + 1, c + 1, "column")
            seen.add(v)
    ident = np.arange(n)
    if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
        raise NoIdentity("element 1 is not a two-sided identity")


def from_rows(rows: Sequence[Sequence[int]], label: str | None = None) -> LoopTable:
    """Build a loop from 1-based rows whose identity is element 1."""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise LoopError("rows must form a nonempty square")
    if any(not (1 <= v <= n) for r in rows for v in r):
        raise LoopError(f"entries must lie in 1..{n}")
    return LoopTable([[v - 1 for v in r] for r in rows], label=label)


def normalize_identity(rows: Sequence[Sequence[int]], label: str | None = None) -> LoopTable:
    """Relabel a 0-based loop table whose identity is not 0 so that it is."""
    t = np.array(rows, dtype=np.int64)
    n = t.shape[0]
    ident = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], ident) and np.array_equal(t[:, e], ident):
            perm = list(range(n))
            perm[0], perm[e] = e, 0
            perm = np.array(perm)
            return LoopTable(perm[t[np.ix_(perm, perm)]], label=label)
    raise NoIdentity("table has no two-sided identity")


def parse_table(text: str, label: str | None = None) -> LoopTable:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise LoopError("empty table file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise LoopError("non-integer entry in table file") from exc
    if len(rows) != n:
        raise LoopError(f"expected {n} rows, found {len(rows)}")
    return from_rows(rows, label=label)


def read_table(path) -> LoopTable:
    path = Path(path)
    return parse_table(path.read_text(), label=path.stem)


def write_table(Q: LoopTable, path, header: Iterable[str] = ()) -> None:
    Path(path).write_text(Q.to_text(header))


def direct_product(Q1: LoopTable, Q2: LoopTable, label: str | None = None) -> LoopTable:
    """Componentwise product; the pair (a, b) is element ``a * |Q2| + b``."""
    n2 = Q2.n
    a = Q1.table[:, None, :, None]
    b = Q2.table[None, :, None, :]
    t = (a * n2 + b).reshape(Q1.n * n2, Q1.n * n2)
    return LoopTable(t, label=label, check=False)


Q6_ROWS = (
    (1, 2, 3, 4, 5, 6),
    (2, 1, 4, 6, 3, 5),
    (3, 5, 1, 2, 6, 4),
    (4, 3, 6, 5, 1, 2),
    (5, 6, 2, 1, 4, 3),
    (6, 4, 5, 3, 2, 1),
)


def q6() -> LoopTable:
    """The nonassociative automorphic loop of order 6."""
    return from_rows(Q6_ROWS, label="Q6")
