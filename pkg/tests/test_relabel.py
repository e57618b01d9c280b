from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from symtab.algebraic import quad
from symtab.brauer import build_brauer_table
from symtab.characters import build_an_table, build_sn_table
from symtab.relabel import (
    AmbiguousElementOrders,
    Labelling,
    NotACharacterTable,
    complete_row_labels,
    cycle_type_from_fixed_subsets,
    element_order_sets,
    element_orders,
    enumerate_labellings_oracle,
    find_identity_column,
    find_natural_row,
    find_trivial_row,
    fix_two_row_labels_ordinary,
    reconstruct_column_labels,
    relabel_an,
    relabel_brauer_sn,
    relabel_sn,
    validate_ordinary,
    verify_labelling,
)
from symtab.partitions import element_order
from symtab.tables import Label, scramble


def hidden(T, rows, cols):
    return Labelling(tuple(T.row_labels[i] for i in rows), tuple(T.col_labels[j] for j in cols))


def test_trivial_row_and_identity_column():
    S, rows, cols = scramble(build_sn_table(4), 7)
    assert rows[find_trivial_row(S)] == 0
    assert cols[find_identity_column(S)] == 4
    with pytest.raises(NotACharacterTable, match="no all-positive row"):
        find_trivial_row([[0, 0], [0, 0]])


def test_natural_row_s7_and_s5():
    for n in (5, 7):
        T = build_sn_table(n)
        S, rows, _ = scramble(T, 1)
        assert T.row_labels[rows[find_natural_row(S, n)]] == Label((n - 1, 1))


def test_two_row_labels_s8():
    T = build_sn_table(8)
    S, rows, cols = scramble(T, 3)
    sizes = validate_ordinary(S.values, 22, 40320, "S8")
    known = fix_two_row_labels_ordinary(
        S.values, 8, find_trivial_row(S), find_natural_row(S, 8), sizes, 40320, find_identity_column(S)
    )
    for la in [(6, 2), (5, 3), (4, 4), (6, 1, 1), (5, 2, 1), (4, 3, 1)]:
        assert T.row_labels[rows[known[la]]] == Label(la)


def test_column_reconstruction_examples():
    # S4 column with two-row values 1, -1, 2 for (4), (3,1), (2,2)
    assert cycle_type_from_fixed_subsets([1, 0, 2], 4) == (2, 2)
    assert cycle_type_from_fixed_subsets([1, 3, 4], 5) == (2, 1, 1, 1)
    assert cycle_type_from_fixed_subsets([1, 5, 10], 5) == (1, 1, 1, 1, 1)
    with pytest.raises(NotACharacterTable):
        cycle_type_from_fixed_subsets([1, 0, 7], 4)


@given(st.integers(7, 10), st.integers(0, 10**6))
def test_column_types_independent_of_scramble(n, seed):
    T = build_sn_table(n)
    S, rows, cols = scramble(T, seed)
    sizes = validate_ordinary(S.values, T.size, T.order, "S")
    known = fix_two_row_labels_ordinary(
        S.values, n, find_trivial_row(S), find_natural_row(S, n), sizes, T.order, find_identity_column(S)
    )
    types = reconstruct_column_labels(S.values, known, n)
    assert types == [T.col_labels[j].partition for j in cols]


def test_complete_rows_s4():
    T = build_sn_table(4)
    labels = complete_row_labels(T.values, T.col_labels, T)
    assert labels == list(T.row_labels)


@pytest.mark.parametrize("n", range(1, 13))
def test_sn_round_trip(n):
    T = build_sn_table(n)
    for seed in range(3):
        S, rows, cols = scramble(T, seed)
        rep = relabel_sn(S, n)
        assert hidden(T, rows, cols) in rep.labellings
        assert len(rep.labellings) == (2 if n in (4, 6) else 1)
        assert all(verify_labelling(S, lab, T) for lab in rep.labellings)


def test_s4_alternate_swaps():
    T = build_sn_table(4)
    base, alt = None, None
    for lab in relabel_sn(T, 4).labellings:
        if lab.row_assignment == T.row_labels:
            base = lab
        else:
            alt = lab
    assert base and alt
    swapped_rows = {T.row_labels[i].partition for i in range(5) if alt.row_assignment[i] != base.row_assignment[i]}
    swapped_cols = {T.col_labels[j].partition for j in range(5) if alt.col_assignment[j] != base.col_assignment[j]}
    assert swapped_rows == {(3, 1), (2, 1, 1)}
    assert swapped_cols == {(2, 1, 1), (4,)}


@pytest.mark.parametrize("n", range(3, 11))
def test_an_round_trip(n):
    T = build_an_table(n)
    S, rows, cols = scramble(T, n)
    rep = relabel_an(S, n)
    assert hidden(T, rows, cols) in rep.labellings
    assert len(rep.classes_up_to_sign()) == (2 if n == 6 else 1)
    assert len(rep.labellings) == len(enumerate_labellings_oracle(S, T))


@pytest.mark.parametrize("n,p", [(8, 2), (8, 3), (8, 5), (8, 7), (9, 2), (9, 3), (10, 2), (10, 3), (8, 11)])
def test_brauer_round_trip(n, p):
    T = build_brauer_table(n, p)
    S, rows, cols = scramble(T, n * p)
    rep = relabel_brauer_sn(S, n, p)
    assert rep.labellings == [hidden(T, rows, cols)]
    assert rep.method == "pipeline"


def test_brauer_small_cases():
    assert len(relabel_brauer_sn(scramble(build_brauer_table(4, 2), 0)[0], 4, 2).labellings) == 1
    assert len(relabel_brauer_sn(scramble(build_brauer_table(4, 3), 0)[0], 4, 3).labellings) == 2


def test_oracle_on_reference_contains_identity():
    T = build_sn_table(5)
    labs = enumerate_labellings_oracle(T, T)
    assert labs == [Labelling(T.row_labels, T.col_labels)]


def test_random_matrix_is_rejected():
    rng = random.Random(0)
    X = [[rng.randint(-3, 3) for _ in range(7)] for _ in range(7)]
    with pytest.raises(NotACharacterTable):
        relabel_sn(X, 5)


def test_perturbed_table_is_rejected():
    T = build_sn_table(8)
    X = [list(r) for r in T.values]
    X[3][4] += 2
    with pytest.raises(NotACharacterTable):
        relabel_sn(X, 8)


def test_wrong_size_is_rejected():
    with pytest.raises(NotACharacterTable):
        relabel_sn(build_sn_table(5).values, 6)
    with pytest.raises(NotACharacterTable):
        relabel_brauer_sn(build_brauer_table(8, 3).values, 8, 2)


def test_dependent_brauer_rows_rejected():
    T = build_brauer_table(8, 2)
    X = [list(r) for r in T.values]
    X[1] = list(X[0])
    with pytest.raises(NotACharacterTable, match="dependent"):
        relabel_brauer_sn(X, 8, 2)


def test_element_orders():
    T = build_sn_table(6)
    S, _, cols = scramble(T, 2)
    assert element_orders(S, 6) == [element_order(T.col_labels[j].partition) for j in cols]
    S4, _, cols4 = scramble(build_sn_table(4), 2)
    sets = element_order_sets(S4, 4)
    assert sorted(map(sorted, sets)) == [[1], [2], [2, 4], [2, 4], [3]]
    with pytest.raises(AmbiguousElementOrders):
        element_orders(S4, 4)


def test_report_document():
    rep = relabel_an(build_an_table(5), 5)
    doc = rep.to_document()
    assert doc["count"] == 2 and doc["classesUpToSign"] == 1 and doc["signOrbitNote"]
    assert Labelling.from_document(doc["labellings"][0]) in rep.labellings


def test_mixed_radicands_rejected():
    X = [list(r) for r in build_an_table(5).values]
    X[3][3] = quad(1, 1, 13)
    with pytest.raises(NotACharacterTable):
        relabel_an(X, 5)
