"""Partition combinatorics shared by every other module.

Partitions are plain tuples of positive integers in weakly decreasing order,
e.g. ``(3, 1)``.  The empty tuple is the unique partition of 0.  Cycle types of
permutations use the same representation; :func:`cycle_counts` gives the
multiplicity view ``{r: number of r-cycles}``.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import comb, factorial, lcm, prod
from typing import Iterable, Sequence

Partition = tuple[int, ...]


def is_partition(parts: Sequence[int]) -> bool:
    if any(not isinstance(x, int) or x < 1 for x in parts):
        return False
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def as_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return it as a tuple; raises ``ValueError``."""
    t = tuple(parts)
    if not is_partition(t):
        raise ValueError(f"not a partition: {list(t)}")
    return t


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in descending reverse-lexicographic order.

    >>> partitions_of(4)
    ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    """
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(m: int, largest: int):
        if m == 0:
            yield ()
            return
        for first in range(min(m, largest), 0, -1):
            for rest in gen(m - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def conjugate(la: Sequence[int]) -> Partition:
    if not la:
        return ()
    return tuple(sum(1 for x in la if x > j) for j in range(la[0]))


def dominates(mu: Sequence[int], la: Sequence[int]) -> bool:
    """True iff ``mu`` dominates ``la`` (every prefix sum of mu is at least that of la)."""
    if sum(mu) != sum(la):
        raise ValueError(f"size mismatch: {list(mu)} vs {list(la)}")
    s = t = 0
    for i in range(max(len(mu), len(la))):
        s += mu[i] if i < len(mu) else 0
        t += la[i] if i < len(la) else 0
        if s < t:
            return False
    return True


def is_p_regular(la: Sequence[int], p: int) -> bool:
    return all(c < p for c in Counter(la).values())


def has_odd_distinct_parts(nu: Sequence[int]) -> bool:
    return all(x % 2 == 1 for x in nu) and len(set(nu)) == len(nu)


def is_p_prime_class(nu: Sequence[int], p: int) -> bool:
    """No part of the cycle type is divisible by ``p``."""
    return all(x % p for x in nu)


def hook_lengths(la: Sequence[int]) -> list[list[int]]:
    lc = conjugate(la)
    return [[la[i] - j + lc[j] - i - 1 for j in range(la[i])] for i in range(len(la))]


@lru_cache(maxsize=None)
def hook_degree(la: Partition) -> int:
    """Degree of the irreducible character labelled by ``la`` (hook length formula)."""
    hooks = prod(h for row in hook_lengths(la) for h in row)
    return factorial(sum(la)) // hooks


def two_row_degree(n: int, r: int) -> int:
    """Degree of the character labelled ``(n - r, r)``: ``C(n, r) (n - 2r + 1) / (n - r + 1)``."""
    if not 0 <= 2 * r <= n:
        raise ValueError(f"need 0 <= r <= n/2, got n={n}, r={r}")
    num = comb(n, r) * (n - 2 * r + 1)
    q, rem = divmod(num, n - r + 1)
    assert rem == 0
    return q


def diagonal_hooks(la: Sequence[int]) -> list[int]:
    """Principal hook lengths of a self-conjugate partition, largest first."""
    la = tuple(la)
    if conjugate(la) != la:
        raise ValueError(f"{list(la)} is not self-conjugate")
    lc = conjugate(la)
    return [la[i] - i + lc[i] - i - 1 for i in range(len(la)) if la[i] > i]


def cycle_counts(nu: Sequence[int]) -> dict[int, int]:
    return dict(Counter(nu))


def from_cycle_counts(counts: dict[int, int]) -> Partition:
    parts: list[int] = []
    for r in sorted(counts, reverse=True):
        if counts[r] < 0:
            raise ValueError(f"negative count for {r}-cycles")
        parts.extend([r] * counts[r])
    return tuple(parts)


def fixed_subset_counts(nu: Sequence[int], rmax: int) -> list[int]:
    """Number of r-subsets fixed setwise by a permutation of cycle type ``nu``, r = 0..rmax.

    This is the coefficient of x**r in prod_i (1 + x**i)**a_i where a_i counts i-cycles.
    """
    poly = [1] + [0] * rmax
    for length in nu:
        for r in range(rmax, length - 1, -1):
            poly[r] += poly[r - length]
    return poly


def centralizer_order(nu: Sequence[int]) -> int:
    return prod(r**m * factorial(m) for r, m in Counter(nu).items())


def class_size(nu: Sequence[int]) -> int:
    return factorial(sum(nu)) // centralizer_order(nu)


def element_order(nu: Sequence[int]) -> int:
    return lcm(*nu) if nu else 1


def sign(nu: Sequence[int]) -> int:
    """Sign of a permutation with cycle type ``nu``."""
    return -1 if sum(x - 1 for x in nu) % 2 else 1


# --- Mullineux map -----------------------------------------------------------

def _p_rim(la: Partition, p: int) -> list[int]:
    """Boxes removed from each row when the p-rim of ``la`` is stripped."""
    rows = len(la)
    removed = [0] * rows

    def rim_run(i: int) -> int:
        # rim boxes of row i, taken from the right-hand end
        return la[i] - la[i + 1] + 1 if i + 1 < rows else la[i]

    i = 0
    while i < rows:
        need = p
        row = i
        while True:
            take = min(need, rim_run(row))
            removed[row] += take
            need -= take
            if need == 0 or row == rows - 1:
                break
            row += 1
        i = row + 1
    return removed


def mullineux_symbol(la: Sequence[int], p: int) -> tuple[tuple[int, int], ...]:
    """Pairs (rim size, row count) recorded while repeatedly stripping p-rims."""
    la = as_partition(la)
    if not is_p_regular(la, p):
        raise ValueError(f"{list(la)} is not {p}-regular")
    symbol = []
    while la:
        removed = _p_rim(la, p)
        symbol.append((sum(removed), len(la)))
        la = tuple(x - r for x, r in zip(la, removed) if x > r)
    return tuple(symbol)


@lru_cache(maxsize=None)
def _symbol_index(n: int, p: int) -> dict[tuple[tuple[int, int], ...], Partition]:
    index = {}
    for la in partitions_of(n):
        if is_p_regular(la, p):
            s = mullineux_symbol(la, p)
            assert s not in index, "Mullineux symbols must be injective"
            index[s] = la
    return index


def mullineux(la: Sequence[int], p: int) -> Partition:
    """The p-regular partition labelling ``D^la`` tensored with the sign module.

    Each (rim size a, rows r) column of the Mullineux symbol becomes
    (a, a - r + eps) with eps = 0 when p divides a and 1 otherwise; the image
    partition is recovered by looking the new symbol up among all p-regular
    partitions of n.
    """
    symbol = mullineux_symbol(la, p)
    image = tuple((a, a - r + (1 if a % p else 0)) for a, r in symbol)
    return _symbol_index(sum(la), p)[image]
