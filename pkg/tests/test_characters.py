from __future__ import annotations


import pytest
from hypothesis import given, strategies as st

from symtab.algebraic import ExactSum, complex_conjugate, quad
from symtab.characters import (
    build_an_table,
    build_sn_table,
    inner_product,
    mn_value,
    perm_char_two_row,
    pointwise_product,
)
from symtab.partitions import fixed_subset_counts, hook_degree, partitions_of
from symtab.tables import Label, bundled_fixture, dump_table, load_table


def test_mn_examples():
    assert mn_value((6, 1), (2, 1, 1, 1, 1, 1)) == 4
    assert mn_value((4, 1), (2, 1, 1, 1)) == 2
    assert mn_value((2, 1, 1, 1), (2, 1, 1, 1)) == -2
    with pytest.raises(ValueError):
        mn_value((3,), (2, 1, 1))


@given(st.integers(1, 10).flatmap(lambda n: st.sampled_from(partitions_of(n))))
def test_mn_degree_is_hook_formula(la):
    assert mn_value(la, (1,) * sum(la)) == hook_degree(la)


def test_s4_table_values():
    T = build_sn_table(4)
    want = {
        (4,): {(1, 1, 1, 1): 1, (2, 1, 1): 1, (4,): 1, (2, 2): 1, (3, 1): 1},
        (3, 1): {(1, 1, 1, 1): 3, (2, 1, 1): 1, (4,): -1, (2, 2): -1, (3, 1): 0},
        (2, 2): {(1, 1, 1, 1): 2, (2, 1, 1): 0, (4,): 0, (2, 2): 2, (3, 1): -1},
        (1, 1, 1, 1): {(1, 1, 1, 1): 1, (2, 1, 1): -1, (4,): -1, (2, 2): 1, (3, 1): 1},
    }
    for la, row in want.items():
        for nu, v in row.items():
            assert T.entry(la, nu) == v


def _orthogonality(T):
    k = T.size
    for i in range(k):
        for j in range(k):
            assert inner_product(T, T.values[i], T.values[j]) == (i == j)
    for a in range(k):
        for b in range(k):
            acc = ExactSum()
            for row in T.values:
                acc.add(row[a] * complex_conjugate(row[b]))
            want = T.order // T.class_sizes[a] if a == b else 0
            assert acc.value() == want


@pytest.mark.parametrize("n", range(1, 9))
def test_sn_orthogonality(n):
    _orthogonality(build_sn_table(n))


@pytest.mark.parametrize("n", range(2, 9))
def test_an_orthogonality(n):
    _orthogonality(build_an_table(n))


def test_a5_matches_fixture():
    fix = bundled_fixture("a5")
    T = build_an_table(5)
    for rl, row in zip(fix.row_labels, fix.values):
        for cl, v in zip(fix.col_labels, row):
            assert T.entry(rl, cl) == v
    assert T.entry(Label((3, 1, 1), "+"), Label((5,), "+")) == quad(1, 1, 5)
    assert T.entry(Label((3, 1, 1), "+"), Label((5,), "-")) == quad(1, -1, 5)


def test_an_class_counts():
    assert [build_an_table(n).size for n in range(2, 11)] == [1, 3, 4, 5, 7, 9, 14, 18, 24]


@pytest.mark.parametrize("n", range(2, 11))
def test_perm_char_counts_fixed_subsets(n):
    T = build_sn_table(n)
    for r in range(n // 2 + 1):
        pi = perm_char_two_row(T, r)
        for j, c in enumerate(T.col_labels):
            assert pi[j] == fixed_subset_counts(c.partition, r)[r]


def _lemma_terms(n, r):
    return [(n - r - 1, r + 1), (n - r, r), (n - r + 1, r - 1), (n - r - 1, r, 1), (n - r, r - 1, 1)]


@pytest.mark.parametrize("n", range(4, 11))
def test_natural_times_two_row_decomposition(n):
    T = build_sn_table(n)
    nat = T.row((n - 1, 1))
    sq = pointwise_product(nat, nat)
    want = [T.row(x) for x in [(n,), (n - 1, 1), (n - 2, 2), (n - 2, 1, 1)]]
    assert sq == tuple(map(sum, zip(*want)))
    for r in range(2, n // 2):  # n > 2r + 1
        prod = pointwise_product(nat, T.row((n - r, r)))
        terms = _lemma_terms(n, r)
        assert prod == tuple(map(sum, zip(*[T.row(x) for x in terms])))


def test_table_document_roundtrip():
    for T in (build_sn_table(5), build_an_table(6)):
        text = dump_table(T)
        assert dump_table(load_table(text)) == text
        assert load_table(text) == T


def test_printed_s4_fixture_is_not_orthogonal():
    # the shipped transcription keeps the printed sign row, which breaks column orthogonality
    from symtab.relabel import NotACharacterTable, validate_ordinary

    with pytest.raises(NotACharacterTable):
        validate_ordinary(bundled_fixture("s4").values, 5, 24, "S4")
    cols = list(zip(*bundled_fixture("s4").values))
    assert sum(a * b for a, b in zip(cols[0], cols[4])) == -2
