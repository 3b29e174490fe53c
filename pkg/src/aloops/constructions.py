"""Explicit loop families.

Carriers are enumerated lexicographically on their coordinate tuples, so the
all-zero tuple is element 0, the identity.
"""
from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

from .analysis import automorphic_class, is_automorphism
from .errors import (InternalCheckFailed, LoopError, NotAbelian, NotAutomorphismOfG, NotLatin,
                     NoIdentity, NotPrime, OddM)
from .perm import Permutation
from .table import LoopTable, direct_product


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, int(p ** 0.5) + 1))


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def cyclic(n: int) -> LoopTable:
    if n < 1:
        raise LoopError("n must be positive")
    r = np.arange(n)
    return LoopTable((r[:, None] + r[None, :]) % n, label=f"Z{n}", check=False)


def abelian(factors: Sequence[int]) -> LoopTable:
    """Direct product of cyclic groups with the given invariant factors."""
    factors = list(factors) or [1]
    Q = cyclic(factors[0])
    for m in factors[1:]:
        Q = direct_product(Q, cyclic(m))
    Q.label = "x".join(f"Z{m}" for m in factors)
    return Q


def group_automorphism_from_map(G: LoopTable, images: Sequence[int]) -> Permutation:
    f = Permutation(images)
    if not is_automorphism(G, f):
        raise NotAutomorphismOfG("map is not an automorphism")
    return f


def cyclic_automorphism(n: int, k: int) -> Permutation:
    """The automorphism ``u -> k u`` of Z_n (k a unit mod n)."""
    return group_automorphism_from_map(cyclic(n), [(k * u) % n for u in range(n)])


def units(n: int) -> list[int]:
    from math import gcd
    return [k for k in range(1, n) if gcd(k, n) == 1] if n > 1 else [0]


# -------------------------------------------------------------- Dih

def dih(m: int, G: LoopTable, alpha: Permutation, verify: bool = True) -> LoopTable:
    """Dihedral-like loop on Z_m x G: ``(i,u)(j,v) = (i+j, alpha^(ij)((-1)^j u + v))``.

    ``ij`` is the integer product of the representatives in ``0..m-1``.
    With ``verify`` the automorphic flag is checked against ``m == 2 or alpha^2 == 1``.
    """
    if m <= 1 or m % 2:
        raise OddM(f"m must be an even integer > 1, got {m}")
    if not G.is_abelian_group:
        raise NotAbelian("G must be an abelian group")
    alpha = Permutation(alpha)
    if not is_automorphism(G, alpha):
        raise NotAutomorphismOfG("alpha is not an automorphism of G")
    g = G.n
    neg = np.array(G.inversion, dtype=np.int64)
    k = alpha.order()
    apow = np.array([alpha ** e for e in range(k)], dtype=np.int64)
    t = np.empty((m * g, m * g), dtype=np.int64)
    gt = G.table
    u = np.arange(g)
    for i in range(m):
        for j in range(m):
            first = neg[u] if j % 2 else u
            inner = gt[first[:, None], u[None, :]]
            second = apow[(i * j) % k][inner]
            t[i * g:(i + 1) * g, j * g:(j + 1) * g] = ((i + j) % m) * g + second
    Q = LoopTable(t, label=f"Dih({m},{G.label or g},{alpha!r})")
    if verify:
        expected = m == 2 or (alpha * alpha).is_identity()
        if automorphic_class(Q).full != expected:
            raise InternalCheckFailed("Dih automorphic criterion violated")
    return Q


# -------------------------------------------------------------- Q_{a,b}

def q_ab(n: int, a: int, b: int, verify: bool = True) -> LoopTable:
    """Commutative automorphic loop of order n^3 built with the overflow indicator."""
    if n < 2:
        raise LoopError("n must be at least 2")
    a %= n
    b %= n
    elems = list(product(range(n), repeat=3))
    index = {e: i for i, e in enumerate(elems)}
    N = n ** 3
    t = np.empty((N, N), dtype=np.int64)
    for i, (x1, x2, x3) in enumerate(elems):
        for j, (y1, y2, y3) in enumerate(elems):
            z1 = x1 + y1 + (x2 + y2) * x3 * y3 + a * (x2 + y2 >= n) + b * (x3 + y3 >= n)
            t[i, j] = index[(z1 % n, (x2 + y2) % n, (x3 + y3) % n)]
    Q = LoopTable(t, label=f"Q_{{{a},{b}}}(Z{n})")
    if verify and not (Q.is_commutative and automorphic_class(Q).full):
        raise InternalCheckFailed("Q_ab is not commutative automorphic")
    return Q


# -------------------------------------------------------------- Drapal

def _inv_mod(x: int, p: int) -> int:
    return pow(x, -1, p)


def _mobius(t: int, x: int | None, p: int) -> int | None:
    """``f_t(x) = (x+1)(tx+1)^-1``, or None where undefined."""
    if x is None:
        return None
    den = (t * x + 1) % p
    if den == 0:
        return None
    return (x + 1) * _inv_mod(den, p) % p


def drapal_orbit(p: int, t: int) -> list[int] | None:
    """``[f^0(0), f^1(0), ..., f^(d-1)(0)]`` with period d, or None if undefined."""
    seq = [0]
    x = 0
    for _ in range(p + 1):
        x = _mobius(t, x, p)
        if x is None:
            return None
        if x == 0:
            return seq
        seq.append(x)
    return None


def drapal_conditions(p: int, t: int) -> int | None:
    """Orbit size d when the construction conditions hold, else None."""
    orbit = drapal_orbit(p, t)
    if orbit is None:
        return None
    d = len(orbit)
    # f^i is periodic in i with period d on the orbit; preimages are checked
    # through one full period (the composite map itself has period dividing |PGL(2,p)|).
    period = d
    for i in range(1, max(period, 1) + 1):
        count = 0
        for x in range(p):
            y = x
            for _ in range(i):
                y = _mobius(t, y, p)
                if y is None:
                    break
            if y == 0:
                count += 1
        if count != 1:
            return None
    return d


def drapal(p: int, t: int, convention: str = "A") -> LoopTable | None:
    """Metacyclic commutative loop of order p*d, or None when the conditions fail.

    Convention ``"A"`` puts the f-exponent in the first coordinate (carrier
    Z_d x Z_p); convention ``"B"`` reads the carrier literally as Z_p x Z_d,
    reducing the second coordinate mod d. Only tables that are loops are returned.
    """
    _require_prime(p)
    if p == 2:
        raise NotPrime("p must be an odd prime")
    t %= p
    d = drapal_conditions(p, t)
    if d is None:
        return None
    orbit = drapal_orbit(p, t)
    if convention == "A":
        elems = list(product(range(d), range(p)))
        index = {e: k for k, e in enumerate(elems)}
        T = np.empty((p * d, p * d), dtype=np.int64)
        for k1, (i, a) in enumerate(elems):
            for k2, (j, b) in enumerate(elems):
                c = (1 + t * orbit[i] * orbit[j]) % p
                if c == 0:
                    return None
                T[k1, k2] = index[((i + j) % d, (a + b) * _inv_mod(c, p) % p)]
    elif convention == "B":
        elems = list(product(range(p), range(d)))
        index = {e: k for k, e in enumerate(elems)}
        T = np.empty((p * d, p * d), dtype=np.int64)
        for k1, (i, a) in enumerate(elems):
            for k2, (j, b) in enumerate(elems):
                c = (1 + t * orbit[i % d] * orbit[j % d]) % p
                if c == 0:
                    return None
                T[k1, k2] = index[((i + j) % p, (a + b) * _inv_mod(c, p) % d)]
    else:
        raise ValueError("convention must be 'A' or 'B'")
    try:
        return LoopTable(T, label=f"Drapal(p={p},t={t},{convention})")
    except (NotLatin, NoIdentity):
        return None


# --------------------------------------------------- field extension

def least_nonresidue(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return next(d for d in range(2, p) if d not in squares)


class QuadraticField:
    """F_{p^2} as pairs (x, y) meaning x + y w, with w^2 = d (p odd) or w^2 = w + 1 (p = 2)."""

    def __init__(self, p: int):
        _require_prime(p)
        self.p = p
        self.d = least_nonresidue(p) if p > 2 else None

    def add(self, u, v):
        p = self.p
        return ((u[0] + v[0]) % p, (u[1] + v[1]) % p)

    def sub(self, u, v):
        p = self.p
        return ((u[0] - v[0]) % p, (u[1] - v[1]) % p)

    def mul(self, u, v):
        p = self.p
        x1, y1 = u
        x2, y2 = v
        if p == 2:
            # (x1 + y1 w)(x2 + y2 w) with w^2 = w + 1
            yy = y1 * y2
            return ((x1 * x2 + yy) % 2, (x1 * y2 + y1 * x2 + yy) % 2)
        return ((x1 * x2 + self.d * y1 * y2) % p, (x1 * y2 + y1 * x2) % p)

    def scale(self, s, u):
        return (s * u[0] % self.p, s * u[1] % self.p)

    def elements(self):
        return list(product(range(self.p), repeat=2))

    def subspace_generator(self, a: int):
        """Spanning vector of W_a: sqrt(d) for a = 0, 1 + a sqrt(d) otherwise.

        For p = 2 the index is 1 (span of w) or 2 (span of 1 + w).
        """
        if self.p == 2:
            if a not in (1, 2):
                raise LoopError("for p = 2 the subspace index is 1 or 2")
            return (0, 1) if a == 1 else (1, 1)
        a %= self.p
        return (0, 1) if a == 0 else (1, a)


def field_ext_loop(p: int, a: int, verify: bool = True) -> LoopTable:
    """Automorphic loop on W_a x F_{p^2}: ``(a,u)(b,v) = (a+b, (1+b)u + (1-a)v)``."""
    _require_prime(p)
    K = QuadraticField(p)
    w0 = K.subspace_generator(a)
    W = [K.scale(s, w0) for s in range(p)]
    one = (1, 0)
    if verify:
        for x in W:
            for y in W:
                if K.mul(x, y) != K.mul(y, x):
                    raise InternalCheckFailed("W is not commutative")
            if K.add(one, x) == (0, 0):
                raise InternalCheckFailed("1 + a is not invertible")
    Ks = K.elements()
    kidx = {e: i for i, e in enumerate(Ks)}
    elems = [(s, u) for s in range(p) for u in Ks]
    N = len(elems)
    t = np.empty((N, N), dtype=np.int64)
    for i, (s1, u) in enumerate(elems):
        wa = W[s1]
        one_minus = K.sub(one, wa)
        for j, (s2, v) in enumerate(elems):
            wb = W[s2]
            val = K.add(K.mul(K.add(one, wb), u), K.mul(one_minus, v))
            t[i, j] = ((s1 + s2) % p) * p * p + kidx[val]
    Q = LoopTable(t, label=f"FieldExt(p={p},W_{a})")
    if verify and not automorphic_class(Q).full:
        raise InternalCheckFailed("field extension loop is not automorphic")
    return Q
