from __future__ import annotations

import importlib.util
from dataclasses import replace
from pathlib import Path

import pytest

from symtab.brauer import (
    DecompositionMatrix,
    build_brauer_table,
    bundled_decomposition,
    bundled_pairs,
    p_prime_classes,
    p_regular_partitions,
    restrict_to_an_brauer,
    validate_decomposition_matrix,
)
from symtab.characters import build_sn_table
from symtab.partitions import mullineux, sign
from symtab.relabel import validate_brauer

ROOT = Path(__file__).resolve().parents[1]


def _load_tool():
    spec = importlib.util.spec_from_file_location("decomposition_fixtures", ROOT / "tools" / "decomposition_fixtures.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_regular_and_prime_counts_agree():
    for n in range(1, 13):
        for p in (2, 3, 5, 7, 11):
            assert len(p_regular_partitions(n, p)) == len(p_prime_classes(n, p))


def test_s4_mod_2_decomposition_matrix():
    dm = bundled_decomposition(4, 2)
    assert dm.cols == ((4,), (3, 1))
    assert dm.entries == ((1, 0), (1, 1), (0, 1), (1, 1), (1, 0))


def test_s4_mod_2_table():
    T = build_brauer_table(4, 2)
    assert T.entry((4,), (1, 1, 1, 1)) == 1
    assert T.entry((3, 1), (1, 1, 1, 1)) == 2
    assert T.entry((3, 1), (3, 1)) == -1


def test_s5_mod_5_is_a_brauer_tree():
    # principal block of weight 1: hooks in a chain, each linked to the next
    dm = bundled_decomposition(5, 5)
    hooks = [(5,), (4, 1), (3, 1, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]
    for a, b in zip(hooks, hooks[1:]):
        if b in dm.cols:
            assert dm[(b, b)] == 1 and dm[(b, a)] == 1
    assert dm[((1, 1, 1, 1, 1), (2, 1, 1, 1))] == 1


@pytest.mark.parametrize("n,p", bundled_pairs())
def test_bundled_matrices_validate(n, p):
    dm = bundled_decomposition(n, p)
    assert validate_decomposition_matrix(dm).ok


@pytest.mark.parametrize("n,p", bundled_pairs())
def test_decomposition_identity_and_independence(n, p):
    dm = bundled_decomposition(n, p)
    T = build_brauer_table(n, p, dm)
    S = build_sn_table(n)
    cols = [S.col_index(c) for c in T.col_labels]
    for la, row in zip(dm.rows, dm.entries):
        recon = [sum(d * T.values[i][j] for i, d in enumerate(row)) for j in range(T.width)]
        assert recon == [S.row(la)[c] for c in cols]
    validate_brauer(T.values, T.size, "bundled")


@pytest.mark.parametrize("n,p", [(n, p) for n, p in bundled_pairs() if p > 2])
def test_sign_twist_is_mullineux(n, p):
    T = build_brauer_table(n, p)
    signs = [sign(c.partition) for c in T.col_labels]
    for lab in T.row_labels:
        twisted = tuple(s * x for s, x in zip(signs, T.row(lab)))
        assert T.row(mullineux(lab.partition, p)) == twisted


def test_corrupted_matrix_reports_triangularity():
    dm = bundled_decomposition(4, 2)
    bad = [list(r) for r in dm.entries]
    bad[0][1] = 1
    report = validate_decomposition_matrix(replace(dm, entries=tuple(map(tuple, bad))))
    assert not report.ok
    assert any("does not dominate" in v for v in report.violations)


def test_negative_and_diagonal_violations():
    dm = bundled_decomposition(5, 3)
    bad = [list(r) for r in dm.entries]
    bad[1][1] = 2
    bad[2][0] = -1
    report = validate_decomposition_matrix(replace(dm, entries=tuple(map(tuple, bad))))
    assert any("expected 1" in v for v in report.violations)
    assert any("negative" in v for v in report.violations)


def test_identity_when_p_exceeds_n():
    dm = bundled_decomposition(6, 11)
    assert dm == DecompositionMatrix.identity(6, 11)
    assert build_brauer_table(6, 11).values == build_sn_table(6).values


def test_an_brauer_rows_are_non_split():
    A = restrict_to_an_brauer(build_brauer_table(6, 3))
    assert A.partial and A.group == "A-mod-p"
    for lab in A.row_labels:
        assert mullineux(lab.partition, 3) != lab.partition


@pytest.mark.parametrize("n,p", [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 5), (6, 5)])
def test_tool_reproduces_fixtures(n, p):
    pytest.importorskip("numpy")
    pytest.importorskip("scipy")
    pytest.importorskip("sympy")
    tool = _load_tool()
    doc = tool.decomposition_matrix(n, p)
    assert DecompositionMatrix.from_document(doc) == bundled_decomposition(n, p)
