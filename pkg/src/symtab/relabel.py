"""Reconstruct the row and column labels of an unlabelled character table.

Ordinary tables of Sₙ and Aₙ (n ≥ 7) and Brauer tables of Sₙ (n ≥ 8) go through a
constructive pipeline: fix the trivial row, the identity column and the natural
character, label the two-row characters by decomposing products with the natural
character, read the cycle type of every column off the two-row permutation
characters, and finish the rows by matching against the reference table.
Smaller cases, where exceptional coincidences occur, are solved by exhaustive
matching against the reference table.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Mapping, Optional, Sequence

from .algebraic import ExactSum, RadicandMismatch, Value, complex_conjugate, is_positive
from .brauer import (
    DecompositionMatrix,
    build_brauer_table,
    bundled_decomposition,
    p_prime_classes,
    validate_decomposition_matrix,
)
from .characters import build_an_table, build_sn_table, pointwise_product
from .isomorphism import matrix_isomorphisms
from .partitions import (
    Partition,
    conjugate,
    dominates,
    element_order,
    from_cycle_counts,
    hook_degree,
    is_p_regular,
)
from .tables import CharTable, Label

Matrix = Sequence[Sequence[Value]]

SMALL_ORDINARY = 6
SMALL_BRAUER = 7


class NotACharacterTable(ValueError):
    """The input is not a character table of the claimed kind."""

    def __init__(self, message: str, trace: Optional[list[str]] = None):
        super().__init__(message)
        self.trace = list(trace or [])


class AmbiguousElementOrders(ValueError):
    """Different valid labellings give a column different element orders."""


@dataclass(frozen=True)
class Labelling:
    """Labels for the rows and columns of the input, in input index order."""

    row_assignment: tuple[Label, ...]
    col_assignment: tuple[Label, ...]

    def unsigned(self) -> Labelling:
        return Labelling(
            tuple(lab.unsigned() for lab in self.row_assignment),
            tuple(lab.unsigned() for lab in self.col_assignment),
        )

    def to_document(self) -> dict:
        return {
            "rows": [lab.to_wire() for lab in self.row_assignment],
            "cols": [lab.to_wire() for lab in self.col_assignment],
        }

    @classmethod
    def from_document(cls, doc: dict) -> Labelling:
        return cls(
            tuple(Label.from_wire(x) for x in doc["rows"]),
            tuple(Label.from_wire(x) for x in doc["cols"]),
        )


@dataclass
class ReconstructionReport:
    group: str
    n: int
    labellings: list[Labelling]
    p: Optional[int] = None
    method: str = "pipeline"
    sign_orbit_note: bool = False
    trace: list[str] = field(default_factory=list)

    def classes_up_to_sign(self) -> list[list[Labelling]]:
        """Labellings grouped by agreement once the ± marks are erased."""
        groups: dict[Labelling, list[Labelling]] = {}
        for lab in self.labellings:
            groups.setdefault(lab.unsigned(), []).append(lab)
        return list(groups.values())

    def to_document(self) -> dict:
        doc: dict = {"group": self.group, "n": self.n}
        if self.p is not None:
            doc["p"] = self.p
        doc["method"] = self.method
        doc["count"] = len(self.labellings)
        doc["classesUpToSign"] = len(self.classes_up_to_sign())
        doc["signOrbitNote"] = self.sign_orbit_note
        doc["labellings"] = [lab.to_document() for lab in self.labellings]
        doc["trace"] = list(self.trace)
        return doc


# --- helpers --------------------------------------------------------------------

def _values(X) -> tuple[tuple[Value, ...], ...]:
    if isinstance(X, CharTable):
        return X.values
    return tuple(tuple(row) for row in X)


def _degree_column(vals, identity_col: int) -> list[Value]:
    return [row[identity_col] for row in vals]


def _an_label(la: Partition) -> Label:
    """Unsigned Aₙ row label: the representative of {λ, λ'} that comes first in canonical order."""
    return Label(max(la, conjugate(la)))


def verify_labelling(X, labelling: Labelling, reference: CharTable) -> bool:
    vals = _values(X)
    try:
        ri = [reference.row_index(lab) for lab in labelling.row_assignment]
        ci = [reference.col_index(lab) for lab in labelling.col_assignment]
    except ValueError:
        return False
    if sorted(ri) != list(range(reference.size)) or sorted(ci) != list(range(reference.width)):
        return False
    ref = reference.values
    return all(vals[i][j] == ref[ri[i]][ci[j]] for i in range(len(vals)) for j in range(len(ci)))


def enumerate_labellings_oracle(X, reference: CharTable) -> list[Labelling]:
    """Every labelling mapping X exactly onto ``reference``, by exhaustive backtracking."""
    vals = _values(X)
    if len(vals) != reference.size or (vals and len(vals[0]) != reference.width):
        return []
    out = []
    for rho, kappa in matrix_isomorphisms(vals, reference.values):
        out.append(
            Labelling(
                tuple(reference.row_labels[r] for r in rho),
                tuple(reference.col_labels[c] for c in kappa),
            )
        )
    return sorted(set(out), key=_labelling_key)


def _labelling_key(lab: Labelling):
    return [(x.partition, x.sign or "") for x in lab.row_assignment + lab.col_assignment]


# --- validation -----------------------------------------------------------------

def _check_shape(vals, k: int, what: str) -> None:
    if len(vals) != k or any(len(row) != k for row in vals):
        raise NotACharacterTable(f"expected a {k}x{k} table for {what}, got {len(vals)} rows")


def class_sizes_from_table(vals, order: int) -> list[int]:
    """Class sizes |G|/|C(g)|, with |C(g)| = Σ_χ |χ(g)|² by column orthogonality."""
    sizes = []
    for j in range(len(vals[0]) if vals else 0):
        acc = ExactSum()
        for row in vals:
            acc.add(row[j] * complex_conjugate(row[j]))
        if not acc.is_rational() or acc.rational.denominator != 1:
            raise NotACharacterTable(f"column {j} has a non-integral centralizer order")
        c = int(acc.rational)
        if c <= 0 or order % c:
            raise NotACharacterTable(f"column {j}: centralizer order {c} does not divide {order}")
        sizes.append(order // c)
    if sum(sizes) != order:
        raise NotACharacterTable(f"class sizes sum to {sum(sizes)}, expected {order}")
    return sizes


def _weighted_product_sum(sizes, u, v) -> Fraction:
    if all(type(x) is int for x in u) and all(type(y) is int for y in v):
        return Fraction(sum(c * x * y for c, x, y in zip(sizes, u, v)))
    acc = ExactSum()
    for c, x, y in zip(sizes, u, v):
        acc.add(x * complex_conjugate(y), c)
    if not acc.is_rational():
        raise NotACharacterTable("inner product is irrational")
    return acc.rational


def validate_ordinary(vals, k: int, order: int, what: str) -> list[int]:
    """Check shape and both orthogonality relations; returns the class sizes."""
    _check_shape(vals, k, what)
    try:
        sizes = class_sizes_from_table(vals, order)
        for i in range(k):
            for j in range(i, k):
                s = _weighted_product_sum(sizes, vals[i], vals[j])
                if s != (order if i == j else 0):
                    raise NotACharacterTable(f"rows {i} and {j} violate row orthogonality")
    except RadicandMismatch as exc:
        raise NotACharacterTable(f"a column mixes quadratic fields: {exc}") from None
    # for a square matrix, row orthogonality with these class sizes implies column orthogonality
    return sizes


def _inverse(vals) -> Optional[list[list[Fraction]]]:
    """Exact inverse, or None when the rows are dependent."""
    k = len(vals)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(vals)]
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(k):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[k:] for row in a]


def validate_brauer(vals, k: int, what: str) -> list[list[Fraction]]:
    """Check shape, integrality and row independence; returns the inverse matrix."""
    _check_shape(vals, k, what)
    if not all(type(x) is int for row in vals for x in row):
        raise NotACharacterTable("Brauer characters of Sₙ are integer valued")
    inv = _inverse(vals)
    if inv is None:
        raise NotACharacterTable("rows are linearly dependent")
    return inv


# --- pipeline steps --------------------------------------------------------------

def find_trivial_row(X) -> int:
    vals = _values(X)
    hits = [i for i, row in enumerate(vals) if row and all(is_positive(x) for x in row)]
    if len(hits) != 1:
        raise NotACharacterTable("no all-positive row" if not hits else f"{len(hits)} all-positive rows")
    return hits[0]


def find_identity_column(X) -> int:
    vals = _values(X)
    width = len(vals[0]) if vals else 0
    hits = [j for j in range(width) if all(is_positive(row[j]) for row in vals)]
    if len(hits) != 1:
        raise NotACharacterTable("no all-positive column" if not hits else f"{len(hits)} all-positive columns")
    return hits[0]


def find_natural_row(X, n: int, mode: str = "ordinary", p: Optional[int] = None, identity_col: Optional[int] = None) -> int:
    """Row of the natural character (n-1,1).

    Ordinary: the row of degree n-1 that takes the value n-3 (the only row of that
    degree for Aₙ, n ≥ 7).  Brauer: among non-linear rows of degree at most n-1,
    the only one, or else the one taking the value (degree - 2), which it does on
    transpositions whether or not p divides n.
    """
    vals = _values(X)
    if identity_col is None:
        identity_col = find_identity_column(vals)
    deg = _degree_column(vals, identity_col)
    if mode == "ordinary":
        cands = [i for i, d in enumerate(deg) if d == n - 1]
        if len(cands) > 1:
            cands = [i for i in cands if (n - 3) in vals[i]]
    elif mode == "brauer":
        cands = [i for i, d in enumerate(deg) if isinstance(d, int) and 1 < d <= n - 1]
        if len(cands) > 1:
            cands = [i for i in cands if (deg[i] - 2) in vals[i]]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if len(cands) != 1:
        raise NotACharacterTable(f"natural character not identified ({len(cands)} candidates)")
    return cands[0]


def _coefficients_ordinary(P, vals, sizes, order) -> list[int]:
    out = []
    for i, row in enumerate(vals):
        c = _weighted_product_sum(sizes, P, row) / order
        if c.denominator != 1 or c < 0:
            raise NotACharacterTable(f"product has multiplicity {c} at row {i}")
        out.append(int(c))
    return out


def _expected_new(n: int, r: int) -> tuple[Partition, Partition]:
    return (n - r - 1, r + 1), (n - r - 1, r, 1)


def fix_two_row_labels_ordinary(
    X,
    n: int,
    trivial_row: int,
    natural_row: int,
    sizes: Sequence[int],
    order: int,
    identity_col: int,
    trace: Optional[list[str]] = None,
) -> dict[Partition, int]:
    """Label (n-s, s) and (n-s, s-1, 1) for 2 ≤ s ≤ n/2 by decomposing products with χ^(n-1,1)."""
    vals = _values(X)
    trace = trace if trace is not None else []
    known: dict[Partition, int] = {(n,): trivial_row, (n - 1, 1): natural_row}
    nat = vals[natural_row]
    r = 1
    while 2 * (r + 1) <= n:
        cur = (n - 1, 1) if r == 1 else (n - r, r)
        coeffs = _coefficients_ordinary(pointwise_product(nat, vals[known[cur]]), vals, sizes, order)
        if r == 1:
            old = {(n,), (n - 1, 1)}
        else:
            old = {(n - r, r), (n - r + 1, r - 1), (n - r, r - 1, 1)}
        hit = {i for i, c in enumerate(coeffs) if c}
        if any(c > 1 for c in coeffs) or {known[la] for la in old} - hit:
            raise NotACharacterTable(f"product decomposition at r={r} breaks the expected pattern", trace)
        new = sorted(hit - {known[la] for la in old})
        if len(new) != 2 or any(i in known.values() for i in new):
            raise NotACharacterTable(f"product decomposition at r={r} has {len(new)} new constituents", trace)
        two, three = _expected_new(n, r)
        d_two, d_three = hook_degree(two), hook_degree(three)
        degs = {i: vals[i][identity_col] for i in new}
        if sorted(degs.values()) != sorted([d_two, d_three]) or d_two == d_three:
            raise NotACharacterTable(f"degrees at r={r} do not separate the new constituents", trace)
        a, b = new
        if degs[a] == d_two:
            known[two], known[three] = a, b
        else:
            known[two], known[three] = b, a
        trace.append(f"r={r}: chi^(n-1,1)*chi^{list(cur)} -> rows {known[two]} = {list(two)} (degree {d_two}), {known[three]} = {list(three)} (degree {d_three})")
        r += 1
    return known


def _fixed_subset_coefficient(counts: Mapping[int, int], r: int) -> int:
    """[x^r] Π_i (1 + x^i)^{counts[i]}."""
    poly = [1] + [0] * r
    for i, a in counts.items():
        for _ in range(a):
            for d in range(r, i - 1, -1):
                poly[d] += poly[d - i]
    return poly[r]


def cycle_type_from_fixed_subsets(pi: Sequence[int], n: int, p: Optional[int] = None) -> Partition:
    """Cycle type from the numbers ``pi[r]`` of fixed r-subsets, 1 ≤ r ≤ n/2 (``pi[0]`` ignored).

    a_r = pi[r] - [x^r] Π_{i<r} (1 + x^i)^{a_i}; whatever is left over is a single cycle
    longer than n/2.  With ``p`` given, cycles of length divisible by p are excluded.
    """
    counts: dict[int, int] = {}
    for r in range(1, n // 2 + 1):
        a = pi[r] - _fixed_subset_coefficient(counts, r)
        if a < 0:
            raise NotACharacterTable(f"negative number of {r}-cycles")
        if a and p is not None and r % p == 0:
            raise NotACharacterTable(f"{r}-cycles cannot occur in a {p}'-class")
        if a:
            counts[r] = a
    rest = n - sum(i * a for i, a in counts.items())
    if rest < 0 or (rest and 2 * rest <= n):
        raise NotACharacterTable("fixed-subset counts are not those of a permutation")
    if rest:
        if p is not None and rest % p == 0:
            raise NotACharacterTable(f"{rest}-cycles cannot occur in a {p}'-class")
        counts[rest] = 1
    return from_cycle_counts(counts)


def cycle_types_from_two_row(chars: Mapping[int, Sequence[int]], n: int, p: Optional[int] = None) -> list[Partition]:
    """Cycle type per column from the ordinary two-row characters ``chars[s] = χ^(n-s,s)``."""
    width = len(chars[0])
    out = []
    for j in range(width):
        pi = [0] * (n // 2 + 1)
        total = 0
        for s in range(n // 2 + 1):
            total += chars[s][j]
            pi[s] = total
        out.append(cycle_type_from_fixed_subsets(pi, n, p))
    return out


def reconstruct_column_labels(X, two_row_rows: Mapping[Partition, int], n: int) -> list[Partition]:
    """Cycle types of the columns of an ordinary table whose two-row rows are known."""
    vals = _values(X)
    chars = {}
    for s in range(n // 2 + 1):
        la = (n - s, s) if s else (n,)
        if la not in two_row_rows:
            raise ValueError(f"row {list(la)} is not labelled")
        chars[s] = vals[two_row_rows[la]]
    return cycle_types_from_two_row(chars, n)


def _is_hook(la: Partition) -> bool:
    return len(la) <= 1 or all(x == 1 for x in la[1:])


def complete_row_labels(
    X,
    columns: Sequence[Label],
    reference: CharTable,
    known: Optional[Mapping[int, Label]] = None,
) -> list[Label]:
    """Label every row by matching it against ``reference`` on the labelled columns.

    Rows are first compared on the hook classes (n-r, 1^r) present in the table,
    then any tie is broken on all columns; the full row must agree in the end.
    """
    vals = _values(X)
    known = dict(known or {})
    try:
        ref_cols = [reference.col_index(lab) for lab in columns]
    except ValueError as exc:
        raise NotACharacterTable(f"column label not in the reference table: {exc}") from None
    hooks = [j for j, lab in enumerate(columns) if _is_hook(lab.partition)]
    ref_rows = {
        lab: tuple(reference.values[i][c] for c in ref_cols) for i, lab in enumerate(reference.row_labels)
    }
    out: list[Optional[Label]] = [None] * len(vals)
    for i, lab in known.items():
        out[i] = lab
    taken = set(known.values())
    for i, row in enumerate(vals):
        if out[i] is not None:
            continue
        cands = [lab for lab, rv in ref_rows.items() if lab not in taken and all(rv[j] == row[j] for j in hooks)]
        if len(cands) > 1:
            cands = [lab for lab in cands if ref_rows[lab] == tuple(row)]
        if len(cands) != 1:
            raise NotACharacterTable(f"row {i} matches {len(cands)} reference characters")
        out[i] = cands[0]
        taken.add(cands[0])
    for i, lab in enumerate(out):
        if ref_rows[lab] != tuple(vals[i]):
            raise NotACharacterTable(f"row {i} disagrees with the reference character {lab}")
    return out


# --- ordinary Sₙ ---------------------------------------------------------------------

def relabel_sn(X, n: int) -> ReconstructionReport:
    vals = _values(X)
    reference = build_sn_table(n)
    trace: list[str] = []
    sizes = validate_ordinary(vals, reference.size, factorial(n), f"S{n}")
    trace.append("orthogonality relations verified")
    if n <= SMALL_ORDINARY:
        labs = enumerate_labellings_oracle(vals, reference)
        trace.append(f"exhaustive matching against the reference table: {len(labs)} labelling(s)")
        if not labs:
            raise NotACharacterTable("no labelling matches the reference table", trace)
        return ReconstructionReport("S", n, labs, method="exhaustive", trace=trace)
    rows, cols = _ordinary_pipeline(vals, n, sizes, factorial(n), trace)
    col_labels = [Label(c) for c in cols]
    row_labels = complete_row_labels(vals, col_labels, reference, {i: Label(la) for la, i in rows.items()})
    trace.append("rows completed on hook classes and verified on every column")
    lab = Labelling(tuple(row_labels), tuple(col_labels))
    if not verify_labelling(vals, lab, reference):
        raise NotACharacterTable("reconstructed labelling does not reproduce the reference table", trace)
    return ReconstructionReport("S", n, [lab], trace=trace)


def _ordinary_pipeline(vals, n, sizes, order, trace) -> tuple[dict[Partition, int], list[Partition]]:
    triv = find_trivial_row(vals)
    idc = find_identity_column(vals)
    trace.append(f"trivial character: row {triv}; identity class: column {idc}")
    nat = find_natural_row(vals, n, "ordinary", identity_col=idc)
    trace.append(f"natural character (n-1,1): row {nat}")
    rows = fix_two_row_labels_ordinary(vals, n, triv, nat, sizes, order, idc, trace)
    cols = reconstruct_column_labels(vals, rows, n)
    if cols[idc] != (1,) * n:
        raise NotACharacterTable("identity column did not reconstruct to (1^n)", trace)
    trace.append("column cycle types read off the two-row permutation characters")
    return rows, cols


# --- ordinary Aₙ ---------------------------------------------------------------------

def relabel_an(X, n: int) -> ReconstructionReport:
    vals = _values(X)
    reference = build_an_table(n)
    order = factorial(n) // 2
    trace: list[str] = []
    sizes = validate_ordinary(vals, reference.size, order, f"A{n}")
    trace.append("orthogonality relations verified")
    if n <= SMALL_ORDINARY:
        labs = enumerate_labellings_oracle(vals, reference)
        trace.append(f"exhaustive matching against the reference table: {len(labs)} labelling(s)")
        if not labs:
            raise NotACharacterTable("no labelling matches the reference table", trace)
        note = any(lab.sign for lab in reference.col_labels)
        return ReconstructionReport("A", n, labs, method="exhaustive", sign_orbit_note=note, trace=trace)
    rows, cols = _ordinary_pipeline(vals, n, sizes, order, trace)
    split_types = sorted({c for c in cols if cols.count(c) == 2}, reverse=True)
    expected = Counter(lab.partition for lab in reference.col_labels)
    if Counter(cols) != expected:
        raise NotACharacterTable("reconstructed classes are not those of Aₙ", trace)
    col_labels: list[Label] = []
    seen: set[Partition] = set()
    for c in cols:
        if c in split_types:
            col_labels.append(Label(c, "-" if c in seen else "+"))
            seen.add(c)
        else:
            col_labels.append(Label(c))
    trace.append(f"split classes {[list(c) for c in split_types]}: first column in input order gets +")
    known = {i: _an_label(la) for la, i in rows.items()}
    row_labels = complete_row_labels(vals, col_labels, reference, known)
    base = Labelling(tuple(row_labels), tuple(col_labels))
    if not verify_labelling(vals, base, reference):
        raise NotACharacterTable("reconstructed labelling does not reproduce the reference table", trace)
    labs = _sign_variants(base, split_types)
    for lab in labs:
        if not verify_labelling(vals, lab, reference):
            raise NotACharacterTable("a sign variant fails to reproduce the reference table", trace)
    trace.append(f"{len(labs)} sign-coupled variant(s), one labelling up to signs")
    return ReconstructionReport("A", n, labs, sign_orbit_note=bool(split_types), trace=trace)


def _flip(lab: Label) -> Label:
    return Label(lab.partition, "-" if lab.sign == "+" else "+")


def _sign_variants(base: Labelling, split_types: Sequence[Partition]) -> list[Labelling]:
    """All 2^s relabellings obtained by swapping ± on a split class and on the matching split character.

    The split class of type ν pairs with the self-conjugate λ whose diagonal hook
    lengths are the parts of ν.
    """
    from .partitions import diagonal_hooks

    out = []
    s = len(split_types)
    for mask in range(1 << s):
        flip = {split_types[t] for t in range(s) if mask >> t & 1}
        rows = tuple(
            _flip(lab) if lab.sign and tuple(diagonal_hooks(lab.partition)) in flip else lab
            for lab in base.row_assignment
        )
        cols = tuple(_flip(lab) if lab.sign and lab.partition in flip else lab for lab in base.col_assignment)
        out.append(Labelling(rows, cols))
    return sorted(set(out), key=_labelling_key)


# --- Brauer tables of Sₙ ------------------------------------------------------------

def _profile(vals, rows: Sequence[int], width: int) -> Counter:
    return Counter(tuple(vals[i][j] for i in rows) for j in range(width))


def relabel_brauer_sn(X, n: int, p: int, D: Optional[DecompositionMatrix] = None) -> ReconstructionReport:
    vals = _values(X)
    dm = D if D is not None else bundled_decomposition(n, p)
    if (dm.n, dm.p) != (n, p):
        raise ValueError(f"decomposition matrix is for ({dm.n}, {dm.p}), not ({n}, {p})")
    report = validate_decomposition_matrix(dm)
    if not report.ok:
        raise ValueError("invalid decomposition matrix: " + "; ".join(report.violations))
    reference = build_brauer_table(n, p, dm)
    trace: list[str] = []
    inv = validate_brauer(vals, reference.size, f"S{n} mod {p}")
    trace.append("rows are linearly independent")
    if n <= SMALL_BRAUER:
        labs = enumerate_labellings_oracle(vals, reference)
        trace.append(f"exhaustive matching against the reference table: {len(labs)} labelling(s)")
        if not labs:
            raise NotACharacterTable("no labelling matches the reference table", trace)
        return ReconstructionReport("S-mod-p", n, labs, p=p, method="exhaustive", trace=trace)
    labs = _brauer_pipeline(vals, n, p, dm, reference, inv, trace)
    if not labs:
        raise NotACharacterTable("no consistent labelling found", trace)
    return ReconstructionReport("S-mod-p", n, labs, p=p, trace=trace)


def _brauer_pipeline(vals, n, p, dm, reference, inv, trace) -> list[Labelling]:
    k = len(vals)
    triv = find_trivial_row(vals)
    idc = find_identity_column(vals)
    nat = find_natural_row(vals, n, "brauer", p, idc)
    trace.append(f"trivial character: row {triv}; identity class: column {idc}; natural character: row {nat}")
    ref_deg = {lab.partition: reference.values[i][reference.col_index(Label((1,) * n))] for i, lab in enumerate(reference.row_labels)}
    ref_idx = {lab.partition: i for i, lab in enumerate(reference.row_labels)}
    if vals[nat][idc] != ref_deg[(n - 1, 1)]:
        raise NotACharacterTable("natural character has the wrong degree", trace)

    def profile_ok(state: dict[Partition, int]) -> bool:
        labels = list(state)
        mine = _profile(vals, [state[la] for la in labels], k)
        ref = _profile(reference.values, [ref_idx[la] for la in labels], k)
        return mine == ref

    states: list[dict[Partition, int]] = [{(n,): triv, (n - 1, 1): nat}]
    r = 1
    while 2 * (r + 1) <= n:
        cur = (n - 1, 1) if r == 1 else (n - r, r)
        two, three = _expected_new(n, r)
        expected = [la for la in (two, three) if is_p_regular(la, p)]
        nxt = []
        for state in states:
            P = pointwise_product(vals[state[(n - 1, 1)]], vals[state[cur]])
            coeffs = [sum(P[j] * inv[j][i] for j in range(k)) for i in range(k)]
            if any(c.denominator != 1 or c < 0 for c in coeffs):
                trace.append(f"r={r}: product is not a non-negative integer combination of rows")
                continue
            labelled = {i: la for la, i in state.items()}
            stray = [labelled[i] for i, c in enumerate(coeffs) if c and i in labelled and not dominates(labelled[i], three)]
            new = [i for i, c in enumerate(coeffs) if c and i not in labelled]
            if stray or len(new) != len(expected):
                trace.append(f"r={r}: constituents break the expected pattern")
                continue
            options = []
            for perm in permutations(new):
                assign = dict(zip(expected, perm))
                if any(vals[i][idc] != ref_deg[la] for la, i in assign.items()):
                    continue
                if three in assign and coeffs[assign[three]] != 1:
                    continue
                child = {**state, **assign}
                if profile_ok(child):
                    options.append(child)
            how = "unique" if len(options) == 1 else f"{len(options)} branches"
            trace.append(f"r={r}: new constituents {[list(la) for la in expected]} -> {how}")
            nxt.extend(options)
        states = nxt
        r += 1

    found = []
    for state in states:
        lab = _finish_brauer(vals, n, p, dm, reference, state, trace)
        if lab is not None:
            found.append(lab)
    return sorted(set(found), key=_labelling_key)


def _finish_brauer(vals, n, p, dm, reference, state, trace) -> Optional[Labelling]:
    k = len(vals)
    chars = {}
    for s in range(n // 2 + 1):
        la = (n - s, s) if s else (n,)
        acc = [0] * k
        for mu in dm.cols:
            d = dm[(la, mu)]
            if not d:
                continue
            if mu not in state:
                trace.append(f"two-row character {list(la)} needs unlabelled row {list(mu)}")
                return None
            acc = [a + d * x for a, x in zip(acc, vals[state[mu]])]
        chars[s] = acc
    try:
        cols = cycle_types_from_two_row(chars, n, p)
    except NotACharacterTable as exc:
        trace.append(f"column reconstruction failed: {exc}")
        return None
    if sorted(cols) != sorted(p_prime_classes(n, p)):
        trace.append("reconstructed classes are not the p'-classes")
        return None
    trace.append("column cycle types read off the two-row permutation characters")
    col_labels = [Label(c) for c in cols]
    try:
        rows = complete_row_labels(vals, col_labels, reference, {i: Label(la) for la, i in state.items()})
    except NotACharacterTable as exc:
        trace.append(f"row completion failed: {exc}")
        return None
    lab = Labelling(tuple(rows), tuple(col_labels))
    return lab if verify_labelling(vals, lab, reference) else None


# --- element orders --------------------------------------------------------------

def element_order_sets(X, n: int, group: str = "S") -> list[set[int]]:
    """For each column, the element orders it receives across all valid labellings."""
    report = relabel_an(X, n) if group == "A" else relabel_sn(X, n)
    width = len(_values(X)[0])
    out: list[set[int]] = [set() for _ in range(width)]
    for lab in report.labellings:
        for j, c in enumerate(lab.col_assignment):
            out[j].add(element_order(c.partition))
    return out


def element_orders(X, n: int, group: str = "S") -> list[int]:
    """Order of the elements in each column; raises if labellings disagree on some column."""
    sets = element_order_sets(X, n, group)
    bad = [j for j, s in enumerate(sets) if len(s) != 1]
    if bad:
        raise AmbiguousElementOrders(f"columns {bad} get different orders under different labellings")
    return [next(iter(s)) for s in sets]


def reference_table(group: str, n: int, p: Optional[int] = None, D: Optional[DecompositionMatrix] = None) -> CharTable:
    if group == "S":
        return build_sn_table(n) if p is None else build_brauer_table(n, p, D)
    if group == "A":
        if p is not None:
            raise ValueError("Aₙ Brauer tables are checked only through the oracle")
        return build_an_table(n)
    raise ValueError(f"unknown group {group!r}")


def relabel(X, group: str, n: int, p: Optional[int] = None, D: Optional[DecompositionMatrix] = None) -> ReconstructionReport:
    if group == "S":
        return relabel_sn(X, n) if p is None else relabel_brauer_sn(X, n, p, D)
    if group == "A" and p is None:
        return relabel_an(X, n)
    raise ValueError(f"no relabelling procedure for group {group!r} with p={p}")
