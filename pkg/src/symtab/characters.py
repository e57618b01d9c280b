"""Ordinary character tables of Sₙ and Aₙ, and arithmetic with class functions."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .algebraic import ExactSum, Value, complex_conjugate, quad
from .partitions import (
    Partition,
    class_size,
    conjugate,
    diagonal_hooks,
    has_odd_distinct_parts,
    partitions_of,
    sign,
)
from .tables import CharTable, ClassFunction, Label

MAX_N = 16


def _beta_set(la: Partition, length: int) -> tuple[int, ...]:
    return tuple(la[i] + length - 1 - i if i < len(la) else length - 1 - i for i in range(length))


def _from_beta_set(beta: Sequence[int]) -> Partition:
    length = len(beta)
    parts = sorted(beta, reverse=True)
    return tuple(x for x in (parts[i] - (length - 1 - i) for i in range(length)) if x > 0)


def rim_hook_removals(la: Partition, r: int):
    """Yield ``(shape after removing an r-rim hook, leg length)`` for every r-rim hook of ``la``."""
    length = len(la)
    beta = _beta_set(la, length)
    occupied = set(beta)
    for b in beta:
        if b - r >= 0 and b - r not in occupied:
            leg = sum(1 for c in beta if b - r < c < b)
            new = [c for c in beta if c != b] + [b - r]
            yield _from_beta_set(new), leg


@lru_cache(maxsize=None)
def _mn(la: Partition, cycles: Partition) -> int:
    if not cycles:
        return 1
    r, rest = cycles[0], cycles[1:]
    total = 0
    for shape, leg in rim_hook_removals(la, r):
        total += (-1) ** leg * _mn(shape, rest)
    return total


def mn_value(la: Sequence[int], nu: Sequence[int]) -> int:
    """χ^la(nu) by the Murnaghan–Nakayama rule.

    Cycles are stripped largest first; results are memoized on
    ``(remaining shape, remaining cycles)``.
    """
    la, nu = tuple(la), tuple(sorted(nu, reverse=True))
    if sum(la) != sum(nu):
        raise ValueError(f"size mismatch: {list(la)} vs {list(nu)}")
    return _mn(la, nu)


def _check_bound(n: int, low: int) -> None:
    if not low <= n <= MAX_N:
        raise ValueError(f"n must be in {low}..{MAX_N}, got {n}")


@lru_cache(maxsize=None)
def build_sn_table(n: int) -> CharTable:
    """Fully labelled character table of Sₙ with rows and columns in canonical partition order."""
    _check_bound(n, 1)
    parts = partitions_of(n)
    values = tuple(tuple(mn_value(la, nu) for nu in parts) for la in parts)
    labels = tuple(Label(la) for la in parts)
    return CharTable(
        group="S",
        n=n,
        values=values,
        row_labels=labels,
        col_labels=labels,
        class_sizes=tuple(class_size(nu) for nu in parts),
    )


def an_classes(n: int) -> list[Label]:
    """Column labels of the Aₙ table: even cycle types, split types doubled (+ before -)."""
    cols = []
    for nu in partitions_of(n):
        if sign(nu) != 1:
            continue
        if n > 1 and has_odd_distinct_parts(nu):
            cols.extend([Label(nu, "+"), Label(nu, "-")])
        else:
            cols.append(Label(nu))
    return cols


def an_characters(n: int) -> list[Label]:
    """Row labels of the Aₙ table: one per pair {λ, λ'}, two signed rows per self-conjugate λ."""
    rows = []
    seen = set()
    for la in partitions_of(n):
        lc = conjugate(la)
        if la == lc and n > 1:
            rows.extend([Label(la, "+"), Label(la, "-")])
        elif lc not in seen:
            rows.append(Label(la))
        seen.add(la)
    return rows


def split_values(la: Partition) -> tuple[Value, Value]:
    """Values of the (+, -) constituents of χ^la↓Aₙ on the split class of type equal to the diagonal hooks of la.

    They are (eps ± sqrt(eps * prod h_i)) / 2 with eps = (-1)^((n - d)/2), d the number of diagonal hooks.
    """
    hooks = diagonal_hooks(la)
    n, d = sum(la), len(hooks)
    eps = -1 if ((n - d) // 2) % 2 else 1
    prod_h = 1
    for h in hooks:
        prod_h *= h
    return quad(eps, 1, eps * prod_h), quad(eps, -1, eps * prod_h)


@lru_cache(maxsize=None)
def build_an_table(n: int) -> CharTable:
    _check_bound(n, 2)
    rows = an_characters(n)
    cols = an_classes(n)
    values = []
    for rl in rows:
        row = []
        for cl in cols:
            chi = mn_value(rl.partition, cl.partition)
            if rl.sign is None:
                row.append(chi)
                continue
            hooks = tuple(diagonal_hooks(rl.partition))
            if cl.sign is not None and cl.partition == hooks:
                plus, minus = split_values(rl.partition)
                row.append(plus if rl.sign == cl.sign else minus)
            else:
                assert chi % 2 == 0
                row.append(chi // 2)
        values.append(tuple(row))
    sizes = tuple(class_size(c.partition) // (2 if c.sign else 1) for c in cols)
    return CharTable(
        group="A",
        n=n,
        values=tuple(values),
        row_labels=tuple(rows),
        col_labels=tuple(cols),
        class_sizes=sizes,
    )


# --- class function arithmetic ------------------------------------------------

def pointwise_product(u: ClassFunction, v: ClassFunction) -> ClassFunction:
    if len(u) != len(v):
        raise ValueError("class functions of different lengths")
    return tuple(x * y for x, y in zip(u, v))


def inner_product_with_sizes(class_sizes: Sequence[int], u: ClassFunction, v: ClassFunction) -> Fraction:
    """(1/|G|) Σ |C| u(C) conj(v(C)) with |G| = Σ |C|; raises if the result is irrational."""
    if not len(class_sizes) == len(u) == len(v):
        raise ValueError("dimension mismatch")
    acc = ExactSum()
    for c, x, y in zip(class_sizes, u, v):
        acc.add(x * complex_conjugate(y), c)
    return acc.value() / sum(class_sizes)


def inner_product(table: CharTable, u: ClassFunction, v: ClassFunction) -> Fraction:
    """⟨u, v⟩ = (1/|G|) Σ |C| u(C) conj(v(C))."""
    if table.class_sizes is None:
        raise ValueError("inner products need class sizes")
    return inner_product_with_sizes(table.class_sizes, u, v)


def perm_char_two_row(table: CharTable, r: int) -> ClassFunction:
    """Permutation character on r-subsets: Σ_{s ≤ r} χ^(n-s, s)."""
    n = table.n
    if not 0 <= 2 * r <= n:
        raise ValueError(f"r must lie in 0..{n // 2}")
    acc = [0] * table.size
    for s in range(r + 1):
        la = (n - s, s) if s else (n,)
        try:
            row = table.row(la)
        except ValueError:
            raise ValueError(f"table has no row labelled {list(la)}") from None
        acc = [a + x for a, x in zip(acc, row)]
    return tuple(acc)


def group_order(group: str, n: int) -> int:
    return factorial(n) // (2 if group.startswith("A") and n > 1 else 1)
