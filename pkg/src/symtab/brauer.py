"""Decomposition matrices and Brauer character tables of Sₙ (and the non-split part for Aₙ)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from .characters import build_sn_table
from .partitions import (
    Partition,
    as_partition,
    class_size,
    dominates,
    has_odd_distinct_parts,
    is_p_prime_class,
    is_p_regular,
    mullineux,
    partitions_of,
    sign,
)
from .tables import CharTable, Label, TableFormatError

PRIMES = (2, 3, 5, 7, 11, 13)


def _check_prime(p: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def p_regular_partitions(n: int, p: int) -> list[Partition]:
    _check_prime(p)
    return [la for la in partitions_of(n) if is_p_regular(la, p)]


def p_prime_classes(n: int, p: int) -> list[Partition]:
    """Cycle types with no part divisible by ``p``, canonical order."""
    _check_prime(p)
    return [nu for nu in partitions_of(n) if is_p_prime_class(nu, p)]


@dataclass(frozen=True)
class DecompositionMatrix:
    n: int
    p: int
    rows: tuple[Partition, ...]
    cols: tuple[Partition, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.rows) or any(len(r) != len(self.cols) for r in self.entries):
            raise TableFormatError("decomposition matrix entries do not match its labels")

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        la, mu = key
        return self.entries[self.rows.index(tuple(la))][self.cols.index(tuple(mu))]

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "rows": [list(x) for x in self.rows],
            "cols": [list(x) for x in self.cols],
            "entries": [list(r) for r in self.entries],
        }

    @classmethod
    def from_document(cls, doc: dict) -> DecompositionMatrix:
        try:
            return cls(
                n=int(doc["n"]),
                p=int(doc["p"]),
                rows=tuple(as_partition(r) for r in doc["rows"]),
                cols=tuple(as_partition(c) for c in doc["cols"]),
                entries=tuple(tuple(int(x) for x in row) for row in doc["entries"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, TableFormatError):
                raise
            raise TableFormatError(f"malformed decomposition matrix: {exc}") from exc

    @classmethod
    def identity(cls, n: int, p: int) -> DecompositionMatrix:
        """The semisimple case p > n."""
        parts = partitions_of(n)
        return cls(n, p, parts, parts, tuple(tuple(int(a == b) for b in parts) for a in parts))


def load_decomposition(path: str | Path) -> DecompositionMatrix:
    text = Path(path).read_text()
    try:
        return DecompositionMatrix.from_document(json.loads(text))
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"invalid JSON: {exc}") from exc


def bundled_pairs() -> list[tuple[int, int]]:
    pairs = []
    for f in resources.files("symtab.data.decomposition").iterdir():
        if f.name.startswith("d") and f.name.endswith(".json"):
            n, p = f.name[1:-5].split("p")
            pairs.append((int(n), int(p)))
    return sorted(pairs)


@lru_cache(maxsize=None)
def bundled_decomposition(n: int, p: int) -> DecompositionMatrix:
    """Shipped fixture for ``(n, p)``; falls back to the identity matrix when p > n."""
    name = f"d{n}p{p}.json"
    f = resources.files("symtab.data.decomposition") / name
    if f.is_file():
        return DecompositionMatrix.from_document(json.loads(f.read_text()))
    if p > n:
        return DecompositionMatrix.identity(n, p)
    raise FileNotFoundError(f"no bundled decomposition matrix for n={n}, p={p}")


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_document(self) -> dict:
        return {"valid": self.ok, "violations": list(self.violations)}


def phi_natural_value(cycle_type, n: int, p: int) -> int:
    """Value of φ^(n-1,1) on a p'-class: fixed points minus 1, or minus 2 when p divides n."""
    nu = tuple(cycle_type)
    if not is_p_prime_class(nu, p):
        raise ValueError(f"{list(nu)} is not a {p}'-class")
    fixed = sum(1 for x in nu if x == 1)
    return fixed - (2 if n % p == 0 else 1)


def _fmt(la) -> str:
    return "(" + ",".join(map(str, la)) + ")"


def validate_decomposition_matrix(dm: DecompositionMatrix) -> ValidationReport:
    report = ValidationReport()
    v = report.violations
    try:
        _check_prime(dm.p)
    except ValueError as exc:
        v.append(str(exc))
        return report
    if dm.rows != partitions_of(dm.n):
        v.append("rows must be all partitions of n in canonical order")
    if dm.cols != tuple(p_regular_partitions(dm.n, dm.p)):
        v.append("columns must be the p-regular partitions of n in canonical order")
    if v:
        return report
    for la, row in zip(dm.rows, dm.entries):
        for mu, x in zip(dm.cols, row):
            if x < 0:
                v.append(f"D[{_fmt(la)},{_fmt(mu)}]={x} is negative")
            elif x and not dominates(mu, la):
                v.append(f"D[{_fmt(la)},{_fmt(mu)}]={x} but {_fmt(mu)} does not dominate {_fmt(la)}")
        if la in dm.cols and row[dm.cols.index(la)] != 1:
            v.append(f"D[{_fmt(la)},{_fmt(la)}]={row[dm.cols.index(la)]}, expected 1")
    if v:
        return report
    table = _brauer_values(dm)
    classes = p_prime_classes(dm.n, dm.p)
    nat = (dm.n - 1, 1)
    if dm.n >= 2 and nat in dm.cols:
        row = table[dm.cols.index(nat)]
        for nu, x in zip(classes, row):
            want = phi_natural_value(nu, dm.n, dm.p)
            if x != want:
                v.append(f"φ^{_fmt(nat)}({_fmt(nu)})={x}, closed form gives {want}")
    for mu, row in zip(dm.cols, table):
        if row[-1] <= 0:
            v.append(f"φ^{_fmt(mu)} has non-positive degree {row[-1]}")
    return report


def _brauer_values(dm: DecompositionMatrix) -> list[list[int]]:
    """Invert the unitriangular p-regular square of D by forward substitution.

    Canonical order refines dominance, so the square is lower unitriangular.
    """
    ordinary = build_sn_table(dm.n)
    classes = p_prime_classes(dm.n, dm.p)
    cols = [ordinary.col_index(nu) for nu in classes]
    phis: list[list[int]] = []
    for i, mu in enumerate(dm.cols):
        r = dm.rows.index(mu)
        chi = ordinary.values[ordinary.row_index(mu)]
        vec = [chi[c] for c in cols]
        for j in range(i):
            d = dm.entries[r][j]
            if d:
                vec = [a - d * b for a, b in zip(vec, phis[j])]
        if dm.entries[r][i] != 1:
            raise ValueError(f"singular p-regular square at {_fmt(mu)}")
        phis.append(vec)
    return phis


def build_brauer_table(n: int, p: int, dm: Optional[DecompositionMatrix] = None) -> CharTable:
    """Labelled Brauer table: rows φ^μ for p-regular μ, columns the p'-classes."""
    if dm is None:
        dm = bundled_decomposition(n, p)
    if (dm.n, dm.p) != (n, p):
        raise ValueError("decomposition matrix is for a different (n, p)")
    report = validate_decomposition_matrix(dm)
    if not report.ok:
        raise ValueError("invalid decomposition matrix: " + "; ".join(report.violations))
    classes = p_prime_classes(n, p)
    return CharTable(
        group="S-mod-p",
        n=n,
        p=p,
        values=tuple(tuple(r) for r in _brauer_values(dm)),
        row_labels=tuple(Label(mu) for mu in dm.cols),
        col_labels=tuple(Label(nu) for nu in classes),
        class_sizes=tuple(class_size(nu) for nu in classes),
    )


def restrict_to_an_brauer(table: CharTable) -> CharTable:
    """Rows of the Aₙ Brauer table that come from non-split φ^λ (m(λ) ≠ λ), one per pair.

    Split rows are not synthesized.  Columns are the even p'-classes, with classes
    of odd distinct parts doubled as in the ordinary Aₙ table.
    """
    if table.group != "S-mod-p" or table.row_labels is None or table.col_labels is None:
        raise ValueError("expected a labelled Brauer table of Sₙ")
    p, n = table.p, table.n
    if p == 2:
        raise ValueError("alternating groups are only handled in odd characteristic")
    reps = []
    seen = set()
    for lab in table.row_labels:
        la = lab.partition
        m = mullineux(la, p)
        if m == la or la in seen:
            continue
        seen.update((la, m))
        reps.append(la)
    cols: list[Label] = []
    src: list[int] = []
    for j, lab in enumerate(table.col_labels):
        nu = lab.partition
        if sign(nu) != 1:
            continue
        if n > 1 and has_odd_distinct_parts(nu):
            cols.extend([Label(nu, "+"), Label(nu, "-")])
            src.extend([j, j])
        else:
            cols.append(Label(nu))
            src.append(j)
    values = tuple(tuple(table.row(la)[j] for j in src) for la in reps)
    return CharTable(
        group="A-mod-p",
        n=n,
        p=p,
        values=values,
        row_labels=tuple(Label(la) for la in reps),
        col_labels=tuple(cols),
        class_sizes=tuple(class_size(c.partition) // (2 if c.sign else 1) for c in cols),
        partial=True,
    )
