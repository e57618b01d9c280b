"""Command-line interface: ``symtab gen|scramble|relabel|aut|orders|validate|brauer-gen``.

Exit codes: 0 success, 2 usage or malformed input, 3 generation or validation
failure, 4 input is not a character table of the claimed kind.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from math import factorial
from pathlib import Path
from typing import Optional, Sequence

from .automorphisms import DuplicateVectors, table_automorphisms_document
from .brauer import (
    DecompositionMatrix,
    build_brauer_table,
    bundled_decomposition,
    load_decomposition,
    validate_decomposition_matrix,
)
from .characters import MAX_N, build_an_table, build_sn_table
from .relabel import (
    AmbiguousElementOrders,
    NotACharacterTable,
    element_order_sets,
    relabel,
    validate_brauer,
    validate_ordinary,
    verify_labelling,
    Labelling,
)
from .tables import CharTable, TableFormatError, dump_table, dumps_document, load_table, scramble

log = logging.getLogger("symtab")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NOT_TABLE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    pass


def _write(text: str, out: Optional[str]) -> None:
    """Write to ``out`` atomically, or to standard output."""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _read_table(path: str) -> CharTable:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        return load_table(text)
    except TableFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _decomposition(n: int, p: int, where: Optional[str]) -> DecompositionMatrix:
    """Decomposition matrix from a file, a directory of ``d{n}p{p}.json`` files, or the bundled set."""
    try:
        if where is None:
            return bundled_decomposition(n, p)
        path = Path(where)
        if path.is_dir():
            path = path / f"d{n}p{p}.json"
        dm = load_decomposition(path)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from None
    except (OSError, TableFormatError) as exc:
        raise UsageError(f"cannot load decomposition matrix: {exc}") from None
    if (dm.n, dm.p) != (n, p):
        raise UsageError(f"decomposition matrix is for n={dm.n}, p={dm.p}")
    return dm


def _check_n(n: int, low: int = 1) -> None:
    if not low <= n <= MAX_N:
        raise UsageError(f"--n must lie in {low}..{MAX_N}")


def _check_p(p: Optional[int]) -> None:
    if p is not None and (p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1))):
        raise UsageError(f"--p must be a prime, got {p}")


# --- commands -------------------------------------------------------------------

def cmd_gen(args) -> int:
    _check_p(args.p)
    if args.group == "S":
        _check_n(args.n)
        if args.p is None:
            table = build_sn_table(args.n)
        else:
            dm = _decomposition(args.n, args.p, args.decomp)
            report = validate_decomposition_matrix(dm)
            if not report.ok:
                raise ValidationFailure("; ".join(report.violations))
            table = build_brauer_table(args.n, args.p, dm)
    else:
        _check_n(args.n, 2)
        if args.p is not None:
            raise UsageError("Brauer tables of Aₙ are not generated")
        table = build_an_table(args.n)
    _write(dump_table(table), args.out)
    log.info("wrote %s table for n=%d", table.group, table.n)
    return EXIT_OK


def cmd_scramble(args) -> int:
    table = _read_table(args.input)
    out, rows, cols = scramble(table, args.seed)
    _write(dump_table(out), args.out)
    sidecar = args.sidecar or (f"{args.out}.perm.json" if args.out not in (None, "-") else None)
    if sidecar:
        doc = {"seed": args.seed, "rowPerm": rows, "colPerm": cols}
        if table.row_labels is not None and table.col_labels is not None:
            hidden = Labelling(
                tuple(table.row_labels[i] for i in rows), tuple(table.col_labels[j] for j in cols)
            )
            doc["labelling"] = hidden.to_document()
        _write(json.dumps(doc) + "\n", sidecar)
    return EXIT_OK


def cmd_relabel(args) -> int:
    _check_p(args.p)
    _check_n(args.n)
    table = _read_table(args.input)
    dm = _decomposition(args.n, args.p, args.decomp) if args.p is not None else None
    try:
        report = relabel(table.values, args.group, args.n, args.p, dm)
    except NotACharacterTable as exc:
        for line in exc.trace:
            log.error("trace: %s", line)
        log.error("not a character table of the claimed kind: %s", exc)
        return EXIT_NOT_TABLE
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for line in report.trace:
        log.info("trace: %s", line)
    _write(dumps_document(report.to_document()), args.out)
    return EXIT_OK if report.labellings else EXIT_NOT_TABLE


def cmd_aut(args) -> int:
    table = _read_table(args.input)
    try:
        doc = table_automorphisms_document(table.values)
    except DuplicateVectors as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    _write(json.dumps(doc) + "\n", args.out)
    return EXIT_OK


def cmd_orders(args) -> int:
    _check_n(args.n)
    table = _read_table(args.input)
    try:
        sets = element_order_sets(table.values, args.n, args.group)
    except NotACharacterTable as exc:
        log.error("not a character table of the claimed kind: %s", exc)
        return EXIT_NOT_TABLE
    doc = {
        "orders": [sorted(s)[0] if len(s) == 1 else sorted(s) for s in sets],
        "wellDefined": all(len(s) == 1 for s in sets),
    }
    _write(json.dumps(doc) + "\n", args.out)
    return EXIT_OK if doc["wellDefined"] else EXIT_INVALID


def _validate_table(table: CharTable) -> list[str]:
    problems = []
    try:
        if table.group == "S-mod-p":
            validate_brauer(table.values, table.size, "Brauer table")
        elif table.group in ("S", "A") and not table.partial:
            order = factorial(table.n) // (2 if table.group == "A" and table.n > 1 else 1)
            validate_ordinary(table.values, table.size, order, f"{table.group}{table.n}")
    except NotACharacterTable as exc:
        problems.append(str(exc))
    if table.row_labels is not None and table.col_labels is not None and table.group in ("S", "A"):
        if table.p is None:
            ref = build_sn_table(table.n) if table.group == "S" else build_an_table(table.n)
            lab = Labelling(table.row_labels, table.col_labels)
            if not verify_labelling(table.values, lab, ref):
                problems.append("labelled values differ from the reference table")
    return problems


def cmd_validate(args) -> int:
    if args.input is None and args.decomp is None:
        raise UsageError("give --in and/or --decomp")
    doc: dict = {}
    if args.decomp is not None:
        try:
            dm = load_decomposition(args.decomp)
        except (OSError, TableFormatError) as exc:
            raise UsageError(f"cannot load decomposition matrix: {exc}") from None
        doc["decomposition"] = validate_decomposition_matrix(dm).to_document()
    if args.input is not None:
        problems = _validate_table(_read_table(args.input))
        doc["table"] = {"valid": not problems, "violations": problems}
    _write(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if all(part["valid"] for part in doc.values()) else EXIT_INVALID


def cmd_brauer_gen(args) -> int:
    _check_n(args.n)
    _check_p(args.p)
    dm = _decomposition(args.n, args.p, args.decomp)
    report = validate_decomposition_matrix(dm)
    if not report.ok:
        raise ValidationFailure("; ".join(report.violations))
    text = dump_table(build_brauer_table(args.n, args.p, dm)) if args.table else dumps_document(dm.to_document())
    _write(text, args.out)
    return EXIT_OK


# --- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symtab", description="Character tables of symmetric and alternating groups.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log decision traces to standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a labelled table")
    p.add_argument("--group", choices=["S", "A"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--decomp", help="decomposition matrix file (default: bundled)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("scramble", help="strip labels and permute rows and columns")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--sidecar", help="where to record the hidden permutation (default: OUT.perm.json)")
    p.set_defaults(func=cmd_scramble)

    p = sub.add_parser("relabel", help="reconstruct every valid labelling")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--group", choices=["S", "A"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--decomp", help="decomposition matrix file or directory (default: bundled)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_relabel)

    p = sub.add_parser("aut", help="automorphism group of a table")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("orders", help="element orders of the columns of an unlabelled table")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--group", choices=["S", "A"], default="S")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser("validate", help="check a table or a decomposition matrix")
    p.add_argument("--in", dest="input")
    p.add_argument("--decomp")
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("brauer-gen", help="emit a decomposition matrix (or, with --table, its Brauer table)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--decomp")
    p.add_argument("--table", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_brauer_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"symtab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationFailure, AmbiguousElementOrders) as exc:
        print(f"symtab: validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
