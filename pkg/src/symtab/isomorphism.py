"""Isomorphisms between matrices under independent row and column permutations.

An isomorphism from X to Y is a pair ``(rho, kappa)`` with
``X[i][j] == Y[rho[i]][kappa[j]]`` for all ``i, j``.  The search individualizes one
row (or column) at a time and refines the row/column colourings of X and Y
jointly by counting (colour, value) pairs until the partition is stable.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterator, Optional, Sequence

from .algebraic import value_key


def _encode(X, Y) -> tuple[list[list[int]], list[list[int]]]:
    keys = {}
    for row in list(X) + list(Y):
        for v in row:
            keys.setdefault(value_key(v), None)
    ids = {k: i for i, k in enumerate(sorted(keys))}
    ex = [[ids[value_key(v)] for v in row] for row in X]
    ey = [[ids[value_key(v)] for v in row] for row in Y]
    return ex, ey


class _Colouring:
    __slots__ = ("xr", "yr", "xc", "yc")

    def __init__(self, xr, yr, xc, yc):
        self.xr, self.yr, self.xc, self.yc = xr, yr, xc, yc

    def copy(self) -> _Colouring:
        return _Colouring(list(self.xr), list(self.yr), list(self.xc), list(self.yc))


def _relabel(sx: list, sy: list) -> Optional[tuple[list[int], list[int]]]:
    if Counter(sx) != Counter(sy):
        return None
    ids = {s: i for i, s in enumerate(sorted(set(sx)))}
    return [ids[s] for s in sx], [ids[s] for s in sy]


def _refine(ex, ey, col: _Colouring) -> bool:
    """Refine in place to the coarsest stable colouring; False if X and Y become incompatible."""
    ncols = len(ex[0]) if ex else 0
    while True:
        before = len(set(col.xr)) + len(set(col.xc))
        sx = [(col.xr[i], tuple(sorted(Counter(zip(col.xc, row)).items()))) for i, row in enumerate(ex)]
        sy = [(col.yr[i], tuple(sorted(Counter(zip(col.yc, row)).items()))) for i, row in enumerate(ey)]
        res = _relabel(sx, sy)
        if res is None:
            return False
        col.xr, col.yr = res
        sx = [
            (col.xc[j], tuple(sorted(Counter((col.xr[i], ex[i][j]) for i in range(len(ex))).items())))
            for j in range(ncols)
        ]
        sy = [
            (col.yc[j], tuple(sorted(Counter((col.yr[i], ey[i][j]) for i in range(len(ey))).items())))
            for j in range(ncols)
        ]
        res = _relabel(sx, sy)
        if res is None:
            return False
        col.xc, col.yc = res
        if len(set(col.xr)) + len(set(col.xc)) == before:
            return True


def _target_cell(colours: list[int]) -> Optional[int]:
    counts = Counter(colours)
    best = None
    for c, k in counts.items():
        if k > 1 and (best is None or k < counts[best] or (k == counts[best] and c < best)):
            best = c
    return best


def matrix_isomorphisms(
    X: Sequence[Sequence],
    Y: Sequence[Sequence],
    row_colours: Optional[tuple[Sequence[int], Sequence[int]]] = None,
    col_colours: Optional[tuple[Sequence[int], Sequence[int]]] = None,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield every ``(rho, kappa)`` mapping X onto Y.

    Optional initial colourings (pairs of colour lists for X and Y) restrict
    rows/columns to map only onto equally coloured ones.
    """
    if len(X) != len(Y) or (X and len(X[0]) != len(Y[0])):
        return
    if not X:
        yield (), ()
        return
    ex, ey = _encode(X, Y)
    k, m = len(ex), len(ex[0])
    xr, yr = row_colours if row_colours else ([0] * k, [0] * k)
    xc, yc = col_colours if col_colours else ([0] * m, [0] * m)
    start = _Colouring(list(xr), list(yr), list(xc), list(yc))
    yield from _search(ex, ey, start)


def _search(ex, ey, col: _Colouring):
    if not _refine(ex, ey, col):
        return
    cell = _target_cell(col.xr)
    on_rows = cell is not None
    if not on_rows:
        cell = _target_cell(col.xc)
    if cell is None:
        rho = [0] * len(ex)
        where = {c: i for i, c in enumerate(col.yr)}
        for i, c in enumerate(col.xr):
            rho[i] = where[c]
        kappa = [0] * len(ex[0])
        where = {c: j for j, c in enumerate(col.yc)}
        for j, c in enumerate(col.xc):
            kappa[j] = where[c]
        if all(ex[i][j] == ey[rho[i]][kappa[j]] for i in range(len(ex)) for j in range(len(ex[0]))):
            yield tuple(rho), tuple(kappa)
        return
    xs, ys = (col.xr, col.yr) if on_rows else (col.xc, col.yc)
    fresh = max(xs) + 1
    x_pick = xs.index(cell)
    for y_pick in [j for j, c in enumerate(ys) if c == cell]:
        child = col.copy()
        cx, cy = (child.xr, child.yr) if on_rows else (child.xc, child.yc)
        cx[x_pick] = fresh
        cy[y_pick] = fresh
        yield from _search(ex, ey, child)
