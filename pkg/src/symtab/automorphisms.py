"""Automorphisms of (possibly unlabelled) character tables and small permutation groups.

Permutations are tuples of 0-based images; the wire form is 1-based.
A table automorphism is a pair ``(sigma, tau)`` with
``X[sigma[i]][tau[j]] == X[i][j]`` for all ``i, j``.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable, NamedTuple, Optional, Sequence

from .algebraic import value_key
from .isomorphism import matrix_isomorphisms

Perm = tuple[int, ...]


class DuplicateVectors(ValueError):
    """Rows or columns repeat, so a row permutation no longer determines its column partner."""


class TableAutomorphism(NamedTuple):
    sigma: Perm
    tau: Perm


def identity(k: int) -> Perm:
    return tuple(range(k))


def compose(a: Perm, b: Perm) -> Perm:
    """``a`` after ``b``: i -> a[b[i]]."""
    return tuple(a[i] for i in b)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def from_cycles(k: int, cycles: Iterable[Sequence[int]], base: int = 1) -> Perm:
    img = list(range(k))
    for cyc in cycles:
        cyc = [c - base for c in cyc]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def cycle_type(a: Perm) -> tuple[int, ...]:
    seen = set()
    lengths = []
    for i in range(len(a)):
        if i in seen:
            continue
        j, n = i, 0
        while j not in seen:
            seen.add(j)
            j = a[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def perm_order(a: Perm) -> int:
    from math import lcm

    return lcm(*cycle_type(a)) if a else 1


class PermGroup:
    """A permutation group of small order, stored with all of its elements."""

    def __init__(self, degree: int, generators: Iterable[Perm], elements: Optional[Iterable[Perm]] = None):
        self.degree = degree
        self.generators = [tuple(g) for g in generators if tuple(g) != identity(degree)]
        if elements is None:
            elements = _closure(degree, self.generators)
        self.elements = frozenset(tuple(e) for e in elements)

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Perm]) -> PermGroup:
        elements = frozenset(tuple(e) for e in elements)
        return cls(degree, _small_generating_set(degree, elements), elements)

    def __len__(self) -> int:
        return len(self.elements)

    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and self.degree == other.degree and self.elements == other.elements

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={len(self)})"

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            orb = sorted({g[i] for g in self.elements})
            seen.update(orb)
            out.append(orb)
        return out

    def element_order_counts(self) -> Counter:
        return Counter(perm_order(g) for g in self.elements)

    def cycle_type_counts(self) -> Counter:
        return Counter(cycle_type(g) for g in self.elements)

    def to_document(self) -> dict:
        return {
            "order": len(self),
            "generators": [[x + 1 for x in g] for g in self.generators],
            "orbitSizes": orbit_sizes(self),
        }


def _closure(degree: int, gens: list[Perm]) -> set[Perm]:
    elements = {identity(degree)}
    frontier = [identity(degree)]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = compose(g, e)
                if h not in elements:
                    elements.add(h)
                    nxt.append(h)
        frontier = nxt
    return elements


def _small_generating_set(degree: int, elements: frozenset) -> list[Perm]:
    gens: list[Perm] = []
    span = {identity(degree)}
    for g in sorted(elements):
        if g not in span:
            gens.append(g)
            span = _closure(degree, gens)
            if len(span) == len(elements):
                break
    return gens


def orbit_sizes(group: PermGroup) -> list[int]:
    """Orbit sizes, largest first."""
    return sorted((len(o) for o in group.orbits()), reverse=True)


def _check_distinct(X) -> None:
    rows = [tuple(value_key(v) for v in row) for row in X]
    if len(set(rows)) != len(rows):
        raise DuplicateVectors("table has repeated rows")
    cols = list(zip(*rows))
    if len(set(cols)) != len(cols):
        raise DuplicateVectors("table has repeated columns")


def automorphism_group(X: Sequence[Sequence]) -> list[TableAutomorphism]:
    """All automorphisms of X, identity first."""
    _check_distinct(X)
    k = len(X)
    auts = []
    for rho, kappa in matrix_isomorphisms(X, X):
        auts.append(TableAutomorphism(rho, kappa))
    auts.sort(key=lambda a: (a != TableAutomorphism(identity(k), identity(len(X[0]) if X else 0)), a))
    return auts


def is_automorphism(X, aut: TableAutomorphism) -> bool:
    s, t = aut
    return all(X[s[i]][t[j]] == X[i][j] for i in range(len(X)) for j in range(len(X[0])))


def caut(X, auts: Optional[list[TableAutomorphism]] = None) -> PermGroup:
    """Row permutations that extend to automorphisms."""
    auts = automorphism_group(X) if auts is None else auts
    return PermGroup.from_elements(len(X), (a.sigma for a in auts))


def claut(X, auts: Optional[list[TableAutomorphism]] = None) -> PermGroup:
    """Column permutations that extend to automorphisms."""
    auts = automorphism_group(X) if auts is None else auts
    return PermGroup.from_elements(len(X[0]) if X else 0, (a.tau for a in auts))


def _transition_counts(group: PermGroup) -> list[list[int]]:
    k = group.degree
    m = [[0] * k for _ in range(k)]
    for g in group.elements:
        for i in range(k):
            m[i][g[i]] += 1
    return m


def permutation_isomorphic(g: PermGroup, h: PermGroup) -> tuple[bool, Optional[Perm]]:
    """Whether some point relabelling ``phi`` conjugates ``g`` onto ``h``; returns the witness.

    ``phi`` must satisfy ``#{x in g : x(i) = j} == #{y in h : y(phi i) = phi j}`` for every
    pair of points, which prunes the backtracking over point bijections.
    """
    if g.degree != h.degree or len(g) != len(h):
        return False, None
    if g.cycle_type_counts() != h.cycle_type_counts():
        return False, None
    k = g.degree
    mg, mh = _transition_counts(g), _transition_counts(h)
    orb_g = {i: len(o) for o in g.orbits() for i in o}
    orb_h = {i: len(o) for o in h.orbits() for i in o}
    sig_g = [(orb_g[i], mg[i][i], tuple(sorted(mg[i]))) for i in range(k)]
    sig_h = [(orb_h[i], mh[i][i], tuple(sorted(mh[i]))) for i in range(k)]
    if sorted(sig_g) != sorted(sig_h):
        return False, None
    phi = [-1] * k
    used = [False] * k

    def consistent(i: int, j: int) -> bool:
        for a in range(i):
            b = phi[a]
            if mg[a][i] != mh[b][j] or mg[i][a] != mh[j][b]:
                return False
        return True

    def conjugates() -> bool:
        inv = inverse(tuple(phi))
        # phi x phi^{-1} must lie in h for each generator x of g
        return all(compose(tuple(phi), compose(x, inv)) in h.elements for x in g.generators)

    def rec(i: int) -> bool:
        if i == k:
            return conjugates()
        for j in range(k):
            if not used[j] and sig_g[i] == sig_h[j] and consistent(i, j):
                phi[i] = j
                used[j] = True
                if rec(i + 1):
                    return True
                used[j] = False
        phi[i] = -1
        return False

    if rec(0):
        return True, tuple(phi)
    return False, None


def apply_automorphism(X, aut: TableAutomorphism):
    s, t = aut
    return [[X[s[i]][t[j]] for j in range(len(X[0]))] for i in range(len(X))]


def table_automorphisms_document(X) -> dict:
    auts = automorphism_group(X)
    return {
        "order": len(auts),
        "cAut": caut(X, auts).to_document(),
        "clAut": claut(X, auts).to_document(),
    }
