"""Loop varieties and the associated operations.

The transforms link uniquely 2-divisible left Bol and automorphic loops with
left Bruck loops, odd-order left Bruck loops with Gamma-loops, and automorphic
loops whose associated Bruck loop is an abelian group with Lie rings.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .analysis import _cached, automorphic_class, lmlt
from .errors import (BruckNotAbelian, EvenOrder, InternalCheckFailed, LoopError, NotAutomorphic,
                     NotLeftBol, NotLeftBruck, NotUniquely2Divisible, NoTwoSidedInverse,
                     Wright1Fails)
from .perm import DEFAULT_CAP, Permutation, commutator, group_sqrt
from .table import LoopTable


class PropertyId(str, enum.Enum):
    flexible = "flexible"
    lip = "lip"
    rip = "rip"
    ip = "ip"
    aaip = "aaip"
    aip = "aip"
    left_alternative = "left_alternative"
    right_alternative = "right_alternative"
    left_bol = "left_bol"
    moufang = "moufang"
    left_bruck = "left_bruck"
    gamma = "gamma"
    diassociative = "diassociative"
    power_associative = "power_associative"
    commutative = "commutative"
    associative = "associative"


_NEEDS_INVERSES = {PropertyId.lip, PropertyId.rip, PropertyId.ip, PropertyId.aaip,
                   PropertyId.aip}


def _grid(n: int, k: int):
    r = np.arange(n)
    shapes = [[1] * k for _ in range(k)]
    out = []
    for i in range(k):
        shapes[i][i] = n
        out.append(r.reshape(shapes[i]))
    return out


def _first_failure(ok: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(~ok)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def _inverses(Q: LoopTable) -> np.ndarray:
    if not Q.has_two_sided_inverses:
        raise NoTwoSidedInverse(f"{Q.label or 'loop'} lacks two-sided inverses")
    return np.array(Q.inversion, dtype=np.int64)


def p_stack(Q: LoopTable) -> np.ndarray:
    """Row x is ``P_x = R_x L_{x^-1}^-1``, i.e. ``z -> (x^-1 \\ z) x``."""
    def build():
        inv = _inverses(Q)
        x = np.arange(Q.n)[:, None]
        z = np.arange(Q.n)[None, :]
        return Q.table[Q.ldiv_table[inv[x], z], x]
    return _cached(Q, "p_stack", build)


def p_map(Q: LoopTable, x: int) -> Permutation:
    return Permutation._raw(p_stack(Q)[x].tolist())


def _witness_pairs(Q, fn):
    n = Q.n
    return _first_failure(fn(*_grid(n, 2)))


def _witness_triples(Q, fn):
    n = Q.n
    return _first_failure(fn(*_grid(n, 3)))


def _subloops_associative(Q: LoopTable, k: int) -> tuple[int, ...] | None:
    seen: dict[frozenset, bool] = {}
    n = Q.n
    if Q.is_associative:
        return None
    pairs = ((x,) for x in range(n)) if k == 1 else ((x, y) for x in range(n) for y in range(x, n))
    for gens in pairs:
        S = Q.subloop_generated(gens)
        if S not in seen:
            seen[S] = Q.sub_table(S).is_associative
        if not seen[S]:
            return gens
    return None


def _gamma_witness(Q: LoopTable):
    if not Q.is_commutative:
        w = _witness_pairs(Q, lambda x, y: Q.table[x, y] == Q.table[y, x])
        return ("commutative",) + w
    w = property_witness(Q, PropertyId.aip)
    if w is not None:
        return ("aip",) + w
    t = Q.table
    inv = _inverses(Q)
    w = _witness_pairs(Q, lambda x, z: t[x, t[inv[x], z]] == t[inv[x], t[x, z]])
    if w is not None:
        return ("commuting_translations",) + w
    P = p_stack(Q)
    w = _witness_triples(Q, lambda x, y, z: P[x, P[y, P[x, z]]] == P[P[x, y], z])
    if w is not None:
        return ("twisted_subgroup",) + w
    return None


def property_witness(Q: LoopTable, prop) -> tuple | None:
    """A 0-based tuple of elements violating ``prop``, or None when it holds.

    The witness is the lexicographically least failing assignment of the
    variables in the defining identity.
    """
    prop = PropertyId(prop)
    t = Q.table
    if prop in _NEEDS_INVERSES:
        inv = _inverses(Q)
    if prop is PropertyId.commutative:
        return _witness_pairs(Q, lambda x, y: t[x, y] == t[y, x])
    if prop is PropertyId.associative:
        return _first_failure(Q.associativity_cube)
    if prop is PropertyId.flexible:
        return _witness_pairs(Q, lambda x, y: t[x, t[y, x]] == t[t[x, y], x])
    if prop is PropertyId.left_alternative:
        return _witness_pairs(Q, lambda x, y: t[x, t[x, y]] == t[t[x, x], y])
    if prop is PropertyId.right_alternative:
        return _witness_pairs(Q, lambda x, y: t[t[y, x], x] == t[y, t[x, x]])
    if prop is PropertyId.lip:
        return _witness_pairs(Q, lambda x, y: t[inv[x], t[x, y]] == y)
    if prop is PropertyId.rip:
        return _witness_pairs(Q, lambda x, y: t[t[y, x], inv[x]] == y)
    if prop is PropertyId.ip:
        return property_witness(Q, PropertyId.lip) or property_witness(Q, PropertyId.rip)
    if prop is PropertyId.aaip:
        return _witness_pairs(Q, lambda x, y: inv[t[x, y]] == t[inv[y], inv[x]])
    if prop is PropertyId.aip:
        return _witness_pairs(Q, lambda x, y: inv[t[x, y]] == t[inv[x], inv[y]])
    if prop is PropertyId.left_bol:
        return _witness_triples(Q, lambda x, y, z: t[x, t[y, t[x, z]]] == t[t[x, t[y, x]], z])
    if prop is PropertyId.moufang:
        return _witness_triples(Q, lambda x, y, z: t[t[x, y], t[z, x]] == t[t[x, t[y, z]], x])
    if prop is PropertyId.left_bruck:
        return property_witness(Q, PropertyId.left_bol) or property_witness(Q, PropertyId.aip)
    if prop is PropertyId.gamma:
        return _gamma_witness(Q)
    if prop is PropertyId.power_associative:
        return _subloops_associative(Q, 1)
    if prop is PropertyId.diassociative:
        return _subloops_associative(Q, 2)
    raise ValueError(prop)


def has_property(Q: LoopTable, prop) -> bool:
    prop = PropertyId(prop)
    return _cached(Q, ("prop", prop.value), lambda: property_witness(Q, prop) is None)


# ----------------------------------------------------------- Bruck loops

def _require_u2d(Q: LoopTable) -> np.ndarray:
    if not Q.is_uniquely_2_divisible():
        raise NotUniquely2Divisible(f"{Q.label or 'loop'} is not uniquely 2-divisible")
    return np.array(Q._sqrt, dtype=np.int64)


def powers_coincide(Q1: LoopTable, Q2: LoopTable) -> bool:
    return all(Q1.power(x, k) == Q2.power(x, k) for x in range(Q1.n) for k in range(Q1.n + 1))


def _check_bruck(Q: LoopTable, B: LoopTable) -> None:
    if not has_property(B, PropertyId.left_bruck):
        raise InternalCheckFailed("associated operation is not left Bruck")
    if not powers_coincide(Q, B):
        raise InternalCheckFailed("powers do not coincide")


def bruck_from_bol(Q: LoopTable) -> LoopTable:
    """``x o y = (x(y^2 x))^(1/2)`` on a uniquely 2-divisible left Bol loop."""
    if not has_property(Q, PropertyId.left_bol):
        raise NotLeftBol(f"{Q.label or 'loop'} is not left Bol")
    sq = _require_u2d(Q)
    t = Q.table
    x, y = _grid(Q.n, 2)
    sqr = np.array(Q.squaring)
    B = LoopTable(sq[t[x, t[sqr[y], x]]], label=f"bruck({Q.label})")
    _check_bruck(Q, B)
    return B


def _bruck_twisted(Q: LoopTable) -> LoopTable:
    sq = _require_u2d(Q)
    t, ld = Q.table, Q.ldiv_table
    inv = _inverses(Q)
    sqr = np.array(Q.squaring)
    x, y = _grid(Q.n, 2)
    a = ld[inv[x], t[sqr[y], x]]
    b = t[ld[inv[x], sqr[y]], x]
    if not np.array_equal(a, b):
        raise InternalCheckFailed("(x^-1 \\ y^2) x differs from x^-1 \\ (y^2 x)")
    return LoopTable(sq[a], label=f"bruck({Q.label})")


def bruck_from_automorphic(Q: LoopTable, check_subloops: bool = True) -> LoopTable:
    """``x o y = (x^-1 \\ (y^2 x))^(1/2)`` on a uniquely 2-divisible automorphic loop."""
    if not automorphic_class(Q).full:
        raise NotAutomorphic(f"{Q.label or 'loop'} is not automorphic")
    B = _bruck_twisted(Q)
    _check_bruck(Q, B)
    if check_subloops:
        for S in _small_subloops(Q):
            if not B.is_subloop(S):
                raise InternalCheckFailed("a subloop of Q is not a subloop of (Q, o)")
    return B


def bruck_from_gamma(Q: LoopTable) -> LoopTable:
    """Left Bruck loop of a uniquely 2-divisible Gamma-loop, same formula as the automorphic case."""
    if not has_property(Q, PropertyId.gamma):
        raise LoopError(f"{Q.label or 'loop'} is not a Gamma-loop")
    B = _bruck_twisted(Q)
    _check_bruck(Q, B)
    return B


def _small_subloops(Q: LoopTable) -> set[frozenset]:
    """Subloops generated by at most two elements."""
    out = set()
    for x in range(Q.n):
        for y in range(x, Q.n):
            out.add(Q.subloop_generated((x, y)))
    return out


def gamma_from_bruck(Q: LoopTable, cap: int = DEFAULT_CAP) -> LoopTable:
    """``x * y = (L_x L_y [L_y, L_x]^(1/2))(1)`` computed inside LMlt(Q)."""
    if not has_property(Q, PropertyId.left_bruck):
        raise NotLeftBruck(f"{Q.label or 'loop'} is not left Bruck")
    if Q.n % 2 == 0:
        raise EvenOrder(f"order {Q.n} is even")
    G = lmlt(Q, cap)
    if G.order % 2 == 0:
        raise InternalCheckFailed("LMlt of an odd-order left Bruck loop has even order")
    Ls = [Q.L(x) for x in range(Q.n)]
    t = np.empty((Q.n, Q.n), dtype=np.int64)
    for x in range(Q.n):
        for y in range(Q.n):
            s = group_sqrt(G, commutator(Ls[y], Ls[x]))
            t[x, y] = (Ls[x] * Ls[y] * s)(0)
    Gam = LoopTable(t, label=f"gamma({Q.label})")
    if not has_property(Gam, PropertyId.gamma):
        raise InternalCheckFailed("associated operation is not a Gamma-loop")
    if not powers_coincide(Q, Gam):
        raise InternalCheckFailed("powers do not coincide")
    return Gam


# ---------------------------------------------------------------- algebras

@dataclass
class Algebra:
    """Abelian group ``add`` (identity 0) with a binary ``bracket`` table."""
    add: np.ndarray
    bracket: np.ndarray
    label: str | None = None

    def __post_init__(self):
        self.add = np.asarray(self.add, dtype=np.int64)
        self.bracket = np.asarray(self.bracket, dtype=np.int64)
        if self.add.shape != self.bracket.shape or self.add.ndim != 2:
            raise LoopError("add and bracket must be square tables of equal size")

    @property
    def n(self) -> int:
        return self.add.shape[0]

    @property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == 0, axis=1)

    def sub(self, x, y):
        return self.add[x, self.neg[y]]

    def ell(self, x: int) -> np.ndarray:
        """``l_x(y) = y - [x, y]``."""
        y = np.arange(self.n)
        return self.sub(y, self.bracket[x, y])

    def r(self, x: int) -> np.ndarray:
        """``r_x(y) = y - [y, x]``."""
        y = np.arange(self.n)
        return self.sub(y, self.bracket[y, x])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Algebra) and np.array_equal(self.add, other.add)
                and np.array_equal(self.bracket, other.bracket))

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines += [" ".join(str(v + 1) for v in row) for row in self.add]
        lines.append("#bracket")
        lines += [" ".join(str(v + 1) for v in row) for row in self.bracket]
        return "\n".join(lines) + "\n"


def parse_algebra(text: str, label: str | None = None) -> Algebra:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        sep = lines.index("#bracket")
    except ValueError:
        raise LoopError("missing #bracket separator") from None
    head = [ln for ln in lines[:sep] if not ln.startswith("#")]
    n = int(head[0])
    add = [[int(v) - 1 for v in ln.split()] for ln in head[1:]]
    br = [[int(v) - 1 for v in ln.split()] for ln in lines[sep + 1:] if not ln.startswith("#")]
    if len(add) != n or len(br) != n or any(len(r) != n for r in add + br):
        raise LoopError(f"expected two {n}x{n} tables")
    vals = np.asarray(add + br)
    if vals.min() < 0 or vals.max() >= n:
        raise LoopError("entry out of range")
    return Algebra(np.asarray(add), np.asarray(br), label=label)


def read_algebra(path) -> Algebra:
    p = Path(path)
    return parse_algebra(p.read_text(), label=p.stem)


def write_algebra(A: Algebra, path) -> None:
    Path(path).write_text(A.to_text())


def zero_algebra(G: LoopTable) -> Algebra:
    return Algebra(G.table, np.zeros_like(G.table), label=f"{G.label}+0")


def heisenberg_algebra(p: int) -> Algebra:
    """Heisenberg Lie ring over Z_p: ``[e1, e2] = e3 = -[e2, e1]``, other basis brackets 0.

    Elements are triples ``(a, b, c)`` at index ``9a + 3b + c`` style lexicographic order.
    """
    elems = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]
    idx = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    add = np.empty((n, n), dtype=np.int64)
    br = np.empty((n, n), dtype=np.int64)
    for i, (a1, b1, c1) in enumerate(elems):
        for j, (a2, b2, c2) in enumerate(elems):
            add[i, j] = idx[((a1 + a2) % p, (b1 + b2) % p, (c1 + c2) % p)]
            br[i, j] = idx[(0, 0, (a1 * b2 - b1 * a2) % p)]
    return Algebra(add, br, label=f"Heisenberg(Z{p})")


@dataclass(frozen=True)
class AlgebraFlags:
    abelian_add: bool
    biadditive: bool
    alternating: bool
    jacobi: bool
    wright1: bool
    wright2: bool
    solvable_length_2: bool

    @property
    def lie(self) -> bool:
        return self.abelian_add and self.biadditive and self.alternating and self.jacobi


def _wright1_witness(A: Algebra) -> int | None:
    for x in range(A.n):
        if len(set(A.ell(x).tolist())) != A.n or len(set(A.r(x).tolist())) != A.n:
            return x
    return None


def _additive_span(A: Algebra, seeds) -> set[int]:
    span = {0}
    frontier = set(int(s) for s in seeds) - span
    while frontier:
        span |= frontier
        new = {int(A.add[a, b]) for a in span for b in frontier} - span
        frontier = new
    return span


def _is_abelian_group_table(add: np.ndarray) -> bool:
    try:
        G = LoopTable(add)
    except LoopError:
        return False
    return G.is_abelian_group


def algebra_checks(A: Algebra) -> AlgebraFlags:
    add, br = A.add, A.bracket
    n = A.n
    abelian_add = _is_abelian_group_table(add)
    x, y, z = _grid(n, 3)
    if abelian_add:
        biadd = bool(np.all(br[add[x, y], z] == add[br[x, z], br[y, z]])
                     and np.all(br[x, add[y, z]] == add[br[x, y], br[x, z]]))
    else:
        biadd = False
    alternating = bool(np.all(np.diagonal(br) == 0))
    jac = add[add[br[x, br[y, z]], br[y, br[z, x]]], br[z, br[x, y]]]
    jacobi = bool(np.all(jac == 0))
    wright1 = abelian_add and _wright1_witness(A) is None
    # [[x,u],[x,v]] = 0 for all x, u, v
    wright2 = bool(np.all(br[br[x, y], br[x, z]] == 0))
    D = np.array(sorted(_additive_span(A, br.ravel()))) if abelian_add else np.arange(n)
    solv2 = bool(np.all(br[np.ix_(D, D)] == 0))
    return AlgebraFlags(abelian_add, biadd, alternating, jacobi, wright1, wright2, solv2)


def linear_loop(A: Algebra, check_automorphic: bool = True) -> LoopTable:
    """``x . y = x + y - [x, y]``."""
    w = _wright1_witness(A)
    if w is not None:
        raise Wright1Fails(w)
    x, y = _grid(A.n, 2)
    t = A.sub(A.add[x, y], A.bracket[x, y])
    Q = LoopTable(t, label=f"linear({A.label})")
    if check_automorphic:
        flags = algebra_checks(A)
        if flags.lie and flags.wright2 and not automorphic_class(Q).full:
            raise InternalCheckFailed("linear loop of a Lie ring with wright2 is not automorphic")
    return Q


def lie_from_automorphic(Q: LoopTable) -> Algebra:
    """Lie ring ``(Q, o, [x, y] = x o y o (xy)^-1)`` of an automorphic loop with abelian Bruck loop."""
    if not automorphic_class(Q).full:
        raise NotAutomorphic(f"{Q.label or 'loop'} is not automorphic")
    B = bruck_from_automorphic(Q, check_subloops=False)
    if not B.is_abelian_group:
        raise BruckNotAbelian(f"associated Bruck loop of {Q.label or 'loop'} is not an abelian group")
    bt = B.table
    inv = np.array(Q.inversion)
    x, y = _grid(Q.n, 2)
    br = bt[bt[x, y], inv[Q.table[x, y]]]
    A = Algebra(bt, br, label=f"lie({Q.label})")
    flags = algebra_checks(A)
    if not (flags.lie and flags.wright1 and flags.wright2):
        raise InternalCheckFailed(f"associated algebra fails Lie/Wright axioms: {flags}")
    return A


def associated_bruck(Q: LoopTable) -> LoopTable:
    """Bruck loop via the automorphic route when possible, else the left Bol route."""
    if automorphic_class(Q).full:
        return bruck_from_automorphic(Q)
    if has_property(Q, PropertyId.left_bol):
        return bruck_from_bol(Q)
    raise NotAutomorphic(f"{Q.label or 'loop'} is neither automorphic nor left Bol")


TRANSFORMS: dict[str, Callable] = {
    "bruck": associated_bruck,
    "gamma": gamma_from_bruck,
    "lie": lie_from_automorphic,
}
