"""Character table container, row/column labels and the JSON table document."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence

from .algebraic import Value, from_wire, to_wire
from .partitions import Partition, as_partition

# "other" marks an ingested table of an arbitrary finite group; n is then its order
GROUPS = ("S", "A", "S-mod-p", "A-mod-p", "other")


class TableFormatError(ValueError):
    """A table or decomposition-matrix document is malformed."""


class Label(NamedTuple):
    """Row or column label: a partition plus an optional ``"+"``/``"-"`` for split Aₙ labels."""

    partition: Partition
    sign: Optional[str] = None

    def __str__(self) -> str:
        body = "(" + ",".join(map(str, self.partition)) + ")"
        return body + (self.sign or "")

    def unsigned(self) -> Label:
        return Label(self.partition)

    def to_wire(self):
        if self.sign is None:
            return list(self.partition)
        return {"partition": list(self.partition), "sign": self.sign}

    @classmethod
    def from_wire(cls, obj) -> Label:
        if isinstance(obj, dict):
            sign = obj.get("sign")
            if sign not in (None, "+", "-"):
                raise TableFormatError(f"bad sign {sign!r}")
            return cls(as_partition(obj["partition"]), sign)
        return cls(as_partition(obj))


ClassFunction = tuple  # tuple of Value, indexed by the columns of a table


@dataclass(frozen=True)
class CharTable:
    group: str
    n: int
    values: tuple[tuple[Value, ...], ...]
    p: Optional[int] = None
    row_labels: Optional[tuple[Label, ...]] = None
    col_labels: Optional[tuple[Label, ...]] = None
    class_sizes: Optional[tuple[int, ...]] = field(default=None)
    # a partial table (e.g. only the non-split Brauer rows of Aₙ) need not be square
    partial: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.group not in GROUPS:
            raise TableFormatError(f"unknown group {self.group!r}")
        k = len(self.values)
        width = len(self.values[0]) if self.values else 0
        if any(len(row) != width for row in self.values):
            raise TableFormatError("table rows have different lengths")
        if not self.partial and width != k:
            raise TableFormatError("table is not square")
        if self.row_labels is not None and len(self.row_labels) != k:
            raise TableFormatError("row label count does not match table size")
        if self.col_labels is not None and len(self.col_labels) != width:
            raise TableFormatError("column label count does not match table size")
        if self.class_sizes is not None and len(self.class_sizes) != width:
            raise TableFormatError("class size count does not match table size")

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def width(self) -> int:
        return len(self.values[0]) if self.values else 0

    @property
    def order(self) -> int:
        """Group order, from the attached class sizes."""
        if self.class_sizes is None:
            raise ValueError("table carries no class sizes")
        return sum(self.class_sizes)

    def row(self, label: Label | Sequence[int]) -> ClassFunction:
        return self.values[self.row_index(label)]

    def row_index(self, label: Label | Sequence[int]) -> int:
        if self.row_labels is None:
            raise ValueError("table has no row labels")
        if not isinstance(label, Label):
            label = Label(tuple(label))
        return self.row_labels.index(label)

    def col_index(self, label: Label | Sequence[int]) -> int:
        if self.col_labels is None:
            raise ValueError("table has no column labels")
        if not isinstance(label, Label):
            label = Label(tuple(label))
        return self.col_labels.index(label)

    def entry(self, row, col) -> Value:
        return self.values[self.row_index(row)][self.col_index(col)]

    def unlabelled(self) -> CharTable:
        return replace(self, row_labels=None, col_labels=None)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> CharTable:
        """Table whose row ``i`` is old row ``row_perm[i]`` (likewise columns)."""
        vals = tuple(tuple(self.values[r][c] for c in col_perm) for r in row_perm)
        rl = tuple(self.row_labels[r] for r in row_perm) if self.row_labels else None
        cl = tuple(self.col_labels[c] for c in col_perm) if self.col_labels else None
        cs = tuple(self.class_sizes[c] for c in col_perm) if self.class_sizes else None
        return replace(self, values=vals, row_labels=rl, col_labels=cl, class_sizes=cs)

    # --- document form ---------------------------------------------------------

    def to_document(self) -> dict:
        doc: dict = {"group": self.group, "n": self.n}
        if self.p is not None:
            doc["p"] = self.p
        doc["values"] = [[to_wire(x) for x in row] for row in self.values]
        if self.row_labels is not None:
            doc["rowLabels"] = [lab.to_wire() for lab in self.row_labels]
        if self.col_labels is not None:
            doc["colLabels"] = [lab.to_wire() for lab in self.col_labels]
        if self.class_sizes is not None:
            doc["classSizes"] = list(self.class_sizes)
        if self.partial:
            doc["partial"] = True
        return doc

    @classmethod
    def from_document(cls, doc: dict) -> CharTable:
        try:
            group = doc["group"]
            n = int(doc["n"])
            p = doc.get("p")
            values = tuple(tuple(from_wire(x) for x in row) for row in doc["values"])
            rl = doc.get("rowLabels")
            cl = doc.get("colLabels")
            cs = doc.get("classSizes")
            width = len(values[0]) if values else 0
            return cls(
                partial=bool(doc.get("partial", False)) or width != len(values),
                group=group,
                n=n,
                p=None if p is None else int(p),
                values=values,
                row_labels=None if rl is None else tuple(Label.from_wire(x) for x in rl),
                col_labels=None if cl is None else tuple(Label.from_wire(x) for x in cl),
                class_sizes=None if cs is None else tuple(int(x) for x in cs),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, TableFormatError):
                raise
            raise TableFormatError(f"malformed table document: {exc}") from exc


def dumps_document(doc: dict) -> str:
    """Canonical serialization: fixed key order, one matrix row per line."""
    lines = ["{"]
    items = list(doc.items())
    for i, (key, val) in enumerate(items):
        comma = "," if i < len(items) - 1 else ""
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)) and key in ("values", "entries", "labellings"):
            rows = [json.dumps(row, separators=(", ", ": ")) for row in val]
            body = ",\n    ".join(rows)
            lines.append(f'  "{key}": [\n    {body}\n  ]{comma}')
        else:
            lines.append(f'  "{key}": {json.dumps(val, separators=(", ", ": "))}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_table(table: CharTable) -> str:
    return dumps_document(table.to_document())


def load_table(text: str) -> CharTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise TableFormatError("table document must be a JSON object")
    return CharTable.from_document(doc)


def bundled_fixture(name: str) -> CharTable:
    """One of the tables shipped with the package: ``s4``, ``a5``, ``s4mod2`` or ``c2xd8``."""
    from importlib import resources

    text = resources.files("symtab.data.fixtures").joinpath(f"{name}.json").read_text()
    return load_table(text)


def scramble(table: CharTable, seed: int) -> tuple[CharTable, list[int], list[int]]:
    """Strip labels and class sizes and permute rows and columns pseudo-randomly.

    Returns ``(scrambled, row_perm, col_perm)``: scrambled row ``i`` is original row ``row_perm[i]``.
    """
    import random

    rng = random.Random(seed)
    row_perm = list(range(table.size))
    col_perm = list(range(table.width))
    rng.shuffle(row_perm)
    rng.shuffle(col_perm)
    out = table.permuted(row_perm, col_perm)
    return replace(out, row_labels=None, col_labels=None, class_sizes=None), row_perm, col_perm
