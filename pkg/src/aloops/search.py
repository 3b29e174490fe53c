"""Enumeration of loops and isomorphism-class bookkeeping.

Three searches live here: a row-wise Latin-square backtracker, the
group-based enumeration of left automorphic loops by weighted cliques of
conjugacy classes of candidate translations, and the simple-loop hunt that
feeds primitive groups to the latter.
"""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .analysis import (DEFAULT_AUT_BUDGET, are_isomorphic, automorphic_class, fingerprint,
                       is_automorphism, is_simple, mlt)
from .associated import PropertyId, has_property
from .errors import (BoundExceeded, CapExceeded, DegreeMismatch, HNotInStabilizer, LoopError,
                     NotTransitive)
from .perm import (Permutation, PermGroup, centralizer, conj_class, is_fixed_point_free,
                   is_primitive, is_solvable_group, is_transitive, orbits, stabilizer)
from .table import LoopTable

log = logging.getLogger(__name__)

NAIVE_MAX = 6


# ------------------------------------------------------------ naive search

def _named_filter(name: str) -> Callable[[LoopTable], bool]:
    name = name.strip().lower().replace("-", "_")
    if name in ("automorphic", "full"):
        return lambda Q: automorphic_class(Q).full
    if name in ("left_automorphic", "right_automorphic", "middle_automorphic"):
        side = name.split("_")[0]
        return lambda Q: getattr(automorphic_class(Q), side)
    if name == "nonassociative":
        return lambda Q: not Q.is_associative
    prop = PropertyId(name)
    return lambda Q: has_property(Q, prop)


def make_filter(spec) -> Callable[[LoopTable], bool]:
    """Turn a property name, an iterable of names, or a callable into a predicate (conjunction)."""
    if spec is None:
        return lambda Q: True
    if callable(spec):
        return spec
    if isinstance(spec, str):
        spec = [s for s in spec.split(",") if s.strip()]
    preds = [_named_filter(s) if isinstance(s, str) else s for s in spec]
    return lambda Q: all(p(Q) for p in preds)


def iter_reduced_tables(n: int) -> Iterator[np.ndarray]:
    """All Cayley tables on 0..n-1 with identity 0, by row-wise backtracking."""
    if n < 1:
        return
    t = np.zeros((n, n), dtype=np.int64)
    t[0] = np.arange(n)
    t[:, 0] = np.arange(n)
    full = (1 << n) - 1
    row_used = [1 << i for i in range(n)]
    col_used = [1 << j for j in range(n)]
    row_used[0] = full
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def rec(k):
        if k == len(cells):
            yield t.copy()
            return
        i, j = cells[k]
        free = full & ~(row_used[i] | col_used[j])
        while free:
            bit = free & -free
            free ^= bit
            v = bit.bit_length() - 1
            t[i, j] = v
            row_used[i] |= bit
            col_used[j] |= bit
            yield from rec(k + 1)
            row_used[i] ^= bit
            col_used[j] ^= bit

    yield from rec(0)


def naive_enumerate(n: int, filter=None, bound: int = NAIVE_MAX) -> list[LoopTable]:
    if n > bound:
        raise BoundExceeded(f"naive enumeration limited to order {bound}, got {n}")
    pred = make_filter(filter)
    out = []
    for k, t in enumerate(iter_reduced_tables(n)):
        Q = LoopTable(t, label=f"naive{n}#{k + 1}", check=False)
        if pred(Q):
            out.append(Q)
    return out


def count_reduced_tables(n: int, bound: int = NAIVE_MAX) -> int:
    if n > bound:
        raise BoundExceeded(f"naive enumeration limited to order {bound}, got {n}")
    return sum(1 for _ in iter_reduced_tables(n))


# ----------------------------------------------------- group-based search

@dataclass
class TranslationClass:
    base: Permutation
    members: frozenset
    anchor: int

    @property
    def weight(self) -> int:
        return len(self.members)


@dataclass
class CompatibilityGraph:
    vertices: list[TranslationClass]
    adjacency: np.ndarray

    def neighbors(self, i: int) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.adjacency[i])]


def _translation_candidates(G: PermGroup, x: int, Hx: PermGroup, fast: bool) -> list[Permutation]:
    if not fast:
        return sorted(g for g in G.elements
                      if g(0) == x and is_fixed_point_free(g) and all(g * h == h * g for h in Hx.generators))
    C = centralizer(G, Hx.generators)
    ell = next((g for g in C.elements if g(0) == x), None)
    if ell is None:
        return []
    C0 = stabilizer(C, 0)
    return sorted(c for c in (ell * c0 for c0 in C0.elements) if is_fixed_point_free(c))


def candidate_translations(G: PermGroup, H: PermGroup, fast: bool = False) -> dict[int, list[Permutation]]:
    """For each orbit representative x of H on the nonidentity points, the candidate set for l_x."""
    reps = [min(o) for o in orbits(H, range(1, G.degree))]
    out = {}
    for x in sorted(reps):
        Hx = stabilizer(H, x)
        out[x] = _translation_candidates(G, x, Hx, fast)
    return out


def translation_classes(G: PermGroup, H: PermGroup, cands: dict[int, list[Permutation]]) -> dict[int, list[TranslationClass]]:
    """Filter candidates down to admissible H-conjugacy classes."""
    out = {}
    for x, Lx in cands.items():
        orbit_size = len(next(o for o in orbits(H, range(1, G.degree)) if x in o))
        seen = set()
        classes = []
        for ell in Lx:
            if ell in seen:
                continue
            cls = conj_class(H, ell)
            seen |= cls
            if len(cls) != orbit_size:
                continue
            inv = ell.inverse()
            if all(is_fixed_point_free(inv * m) for m in cls if m != ell):
                classes.append(TranslationClass(ell, cls, x))
        out[x] = classes
    return out


def compatibility_graph(classes: dict[int, list[TranslationClass]]) -> CompatibilityGraph:
    verts = [c for x in sorted(classes) for c in classes[x]]
    k = len(verts)
    adj = np.zeros((k, k), dtype=bool)
    for i in range(k):
        inv = verts[i].base.inverse()
        for j in range(i + 1, k):
            if all(is_fixed_point_free(inv * m) for m in verts[j].members):
                adj[i, j] = adj[j, i] = True
    return CompatibilityGraph(verts, adj)


def clique_search(graph: CompatibilityGraph, target_weight: int) -> list[frozenset[int]]:
    """All cliques whose vertex weights sum to exactly ``target_weight``."""
    weights = [v.weight for v in graph.vertices]
    order = sorted(range(len(weights)), key=lambda i: (-weights[i], graph.vertices[i].anchor, i))
    adj = graph.adjacency
    found = []

    def rec(chosen, cands, w):
        if w == target_weight:
            found.append(frozenset(chosen))
            return
        if w + sum(weights[i] for i in cands) < target_weight:
            return
        for pos, v in enumerate(cands):
            if w + weights[v] > target_weight:
                continue
            rest = [u for u in cands[pos + 1:] if adj[v, u]]
            rec(chosen + [v], rest, w + weights[v])

    rec([], order, 0)
    return sorted(found, key=lambda c: sorted(c))


def loop_from_translations(perms: Iterable[Permutation], d: int, label: str | None = None) -> LoopTable:
    t = np.empty((d, d), dtype=np.int64)
    for p in perms:
        t[p(0)] = p
    return LoopTable(t, label=label)


def _check_inputs(G: PermGroup, H: PermGroup) -> None:
    if not is_transitive(G):
        raise NotTransitive("G must be transitive")
    if any(h(0) != 0 or h not in G.elements for h in H.generators):
        raise HNotInStabilizer("H must lie in the stabilizer of the identity point")


@dataclass
class BasicRun:
    loops: list[LoopTable]
    candidates: dict[int, list[Permutation]]
    classes: dict[int, list[TranslationClass]]
    graph: CompatibilityGraph | None
    cliques: list[frozenset[int]]


def algorithm_basic_run(G: PermGroup, H: PermGroup, fast: bool = False) -> BasicRun:
    _check_inputs(G, H)
    d = G.degree
    G.elements  # materialize now so caps surface early
    empty = BasicRun([], {}, {}, None, [])
    cands = candidate_translations(G, H, fast)
    if any(not v for v in cands.values()):
        return BasicRun([], cands, {}, None, [])
    classes = translation_classes(G, H, cands)
    if any(not v for v in classes.values()):
        empty.candidates, empty.classes = cands, classes
        return empty
    graph = compatibility_graph(classes)
    cliques = clique_search(graph, d - 1)
    ident = Permutation.identity(d)
    loops = []
    for k, C in enumerate(cliques):
        perms = [ident] + [m for i in sorted(C) for m in graph.vertices[i].members]
        loops.append(loop_from_translations(perms, d, label=f"alg(d={d})#{k + 1}"))
    return BasicRun(loops, cands, classes, graph, cliques)


def algorithm_basic(G: PermGroup, H: PermGroup, fast: bool = False) -> list[LoopTable]:
    """All loops on 0..d-1 with identity 0, LMlt inside G and H inside Aut."""
    return algorithm_basic_run(G, H, fast).loops


def sandwich_holds(Q: LoopTable, G: PermGroup, H: PermGroup) -> bool:
    """Left automorphic, LMlt(Q) <= G, and H acts by automorphisms."""
    if not automorphic_class(Q).left:
        return False
    if any(Q.L(x) not in G.elements for x in range(Q.n)):
        return False
    return all(is_automorphism(Q, h) for h in H.generators)


# ----------------------------------------------------------- census

@dataclass
class CensusRecord:
    representative: LoopTable
    fingerprint: tuple
    multiplicity: int = 1
    members: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.representative.n


def classify(loops: Iterable[LoopTable], budget: int = DEFAULT_AUT_BUDGET) -> list[CensusRecord]:
    """Group loops into isomorphism classes, keeping first-seen representatives."""
    records: list[CensusRecord] = []
    buckets: dict[tuple, list[CensusRecord]] = {}
    for Q in loops:
        fp = fingerprint(Q)
        for rec in buckets.get(fp, []):
            if are_isomorphic(rec.representative, Q, budget) is not None:
                rec.multiplicity += 1
                rec.members.append(Q.label or "")
                break
        else:
            rec = CensusRecord(Q, fp, 1, [Q.label or ""])
            buckets.setdefault(fp, []).append(rec)
            records.append(rec)
    return records


CSV_HEADER = ["order", "label", "multiplicity", "order_profile", "left_nucleus", "middle_nucleus",
              "right_nucleus", "center", "commutative", "associative", "automorphic", "members"]


def census_csv(records: Sequence[CensusRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        n, prof, nl, nm, nr, z, comm, assoc = r.fingerprint
        w.writerow([n, r.representative.label or "", r.multiplicity,
                    " ".join(f"{o}:{c}" for o, c in prof), nl, nm, nr, z,
                    str(comm).lower(), str(assoc).lower(),
                    str(automorphic_class(r.representative).full).lower(),
                    ";".join(r.members)])
    return buf.getvalue()


# ------------------------------------------------------- simple hunt

@dataclass
class HuntReport:
    records: list[CensusRecord] = field(default_factory=list)
    filtered: list[tuple[str, str]] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)
    searched: list[tuple[str, int]] = field(default_factory=list)


def hunt_filter_reason(G: PermGroup) -> str | None:
    """Why ``G`` cannot be the multiplication group of a simple nonassociative automorphic loop."""
    if not is_transitive(G):
        return "not transitive"
    if not is_primitive(G):
        return "not primitive"
    if is_solvable_group(G):
        return "solvable"
    if is_transitive(G, 4):
        return "4-transitive"
    return None


def _hunt_one(name: str, G: PermGroup):
    """Search one group; returns (status, payload) where status is filtered, skipped or searched."""
    try:
        reason = hunt_filter_reason(G)
        if reason is not None:
            return "filtered", reason
        loops = algorithm_basic(G, stabilizer(G, 0))
        kept = []
        for Q in loops:
            if mlt(Q, cap=G.cap).order != G.order:
                continue
            if Q.is_associative or not automorphic_class(Q).full or not is_simple(Q):
                continue
            Q.label = f"{name}:{Q.label}"
            kept.append(Q)
        return "searched", (len(loops), kept)
    except CapExceeded as exc:
        return "skipped", str(exc)


def simple_hunt(d: int, groups: Sequence[PermGroup], names: Sequence[str] | None = None,
                report: HuntReport | None = None, jobs: int = 1) -> list[CensusRecord]:
    """Catalog simple nonassociative automorphic loops found from the given degree-d groups."""
    if d % 2:
        raise LoopError("automorphic loops of odd order are solvable; odd degrees are rejected")
    report = report if report is not None else HuntReport()
    names = list(names) if names is not None else [f"G{i + 1}" for i in range(len(groups))]
    for G in groups:
        if G.degree != d:
            raise DegreeMismatch(f"group of degree {G.degree} supplied for d={d}")
    if jobs > 1 and len(groups) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_hunt_one, names, groups))
    else:
        results = [_hunt_one(n, G) for n, G in zip(names, groups)]
    stored: list[LoopTable] = []
    for name, (status, payload) in zip(names, results):
        if status == "filtered":
            report.filtered.append((name, payload))
        elif status == "skipped":
            log.warning("skipping group %s: %s", name, payload)
            report.skipped.append((name, payload))
        else:
            count, kept = payload
            report.searched.append((name, count))
            stored.extend(kept)
    report.records = classify(stored)
    return report.records


# ------------------------------------------------ classification censuses

def census_2p(p: int, budget: int = DEFAULT_AUT_BUDGET) -> list[CensusRecord]:
    """Z_2p together with every Dih(2, Z_p, alpha)."""
    from .constructions import cyclic, cyclic_automorphism, dih, units
    loops = [cyclic(2 * p)]
    G = cyclic(p)
    for k in units(p):
        loops.append(dih(2, G, cyclic_automorphism(p, k)))
    return classify(loops, budget)


def census_p3(p: int, budget: int = DEFAULT_AUT_BUDGET) -> list[CensusRecord]:
    """Every Q_{a,b}(Z_p) together with the three abelian groups of order p^3."""
    from .constructions import abelian, q_ab
    loops = [abelian([p ** 3]), abelian([p ** 2, p]), abelian([p, p, p])]
    loops += [q_ab(p, a, b) for a in range(p) for b in range(p)]
    return classify(loops, budget)


def drapal_scan(p: int, q: int | None = None, convention: str = "A") -> list[LoopTable]:
    """Nonassociative commutative automorphic outputs of the metacyclic construction over all t."""
    from .constructions import drapal
    out = []
    for t in range(p):
        Q = drapal(p, t, convention)
        if Q is None or (q is not None and Q.n != p * q):
            continue
        if Q.is_commutative and not Q.is_associative and automorphic_class(Q).full:
            out.append(Q)
    return out


def census_pq(p: int, q: int | None = None, convention: str = "A",
              budget: int = DEFAULT_AUT_BUDGET) -> list[CensusRecord]:
    return classify(drapal_scan(p, q, convention), budget)


def field_ext_census(p: int, budget: int = DEFAULT_AUT_BUDGET) -> list[CensusRecord]:
    from .constructions import field_ext_loop
    labels = (1, 2) if p == 2 else range(p)
    return classify([field_ext_loop(p, a) for a in labels], budget)
