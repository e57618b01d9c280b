#!/usr/bin/env python3
"""Compute decomposition matrices of Sₙ from Specht modules and write the shipped fixtures.

For each p-regular λ the simple module D^λ is realised as the image of the
Specht module S^λ in its dual under the Gram form restricted from the
permutation module on tabloids.  For a p'-element g of order m acting on D^λ
the multiplicity k_d of primitive d-th roots of unity among its eigenvalues is
dim ker Φ_d(g) / φ(d); the Brauer character value is Σ_d k_d μ(d).  The
decomposition matrix then follows from χ = D φ on p'-classes.

Usage::

    python tools/decomposition_fixtures.py            # regenerate everything
    python tools/decomposition_fixtures.py 8 3        # one (n, p), printed
"""
from __future__ import annotations

import itertools
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import scipy.sparse as sp
import sympy

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from symtab.characters import mn_value  # noqa: E402
from symtab.partitions import (  # noqa: E402
    element_order,
    is_p_prime_class,
    is_p_regular,
    partitions_of,
)

FIXTURE_DIR = ROOT / "src" / "symtab" / "data" / "decomposition"
SHIPPED = [(n, p) for n in range(1, 9) for p in (2, 3, 5, 7)] + [
    (n, p) for n in (9, 10) for p in (2, 3)
]


# --- linear algebra mod p --------------------------------------------------

def row_echelon_mod_p(mat: np.ndarray, p: int) -> tuple[list[int], list[int]]:
    """Pivot rows and pivot columns of ``mat`` over GF(p) (rows in original indexing)."""
    a = mat.copy() % p
    rows, cols = a.shape
    order = list(range(rows))
    piv_rows, piv_cols = [], []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
            order[r], order[k] = order[k], order[r]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        piv_rows.append(order[r])
        piv_cols.append(c)
        r += 1
    return piv_rows, piv_cols


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    return len(row_echelon_mod_p(mat, p)[1])


def inverse_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    k = mat.shape[0]
    a = np.concatenate([mat % p, np.eye(k, dtype=np.int64)], axis=1)
    for c in range(k):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            raise ZeroDivisionError("singular matrix mod p")
        kk = c + nz[0]
        if kk != c:
            a[[c, kk]] = a[[kk, c]]
        a[c] = (a[c] * pow(int(a[c, c]), -1, p)) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != c]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[c])) % p
    return a[:, k:]


def matmul_mod_p(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    # float64 BLAS is exact here: entries < p and inner dimension < 2**20
    return np.rint(x.astype(np.float64) @ y.astype(np.float64)).astype(np.int64) % p


# --- Specht modules ----------------------------------------------------------

def standard_tableaux(shape):
    n = sum(shape)
    out = []

    def rec(filled, rows, k):
        if k == n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(shape)):
            if len(rows[i]) < shape[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                rec(filled, rows, k + 1)
                rows[i].pop()

    rec(None, [[] for _ in shape], 0)
    return out


class SpechtModule:
    def __init__(self, shape):
        self.shape = tuple(shape)
        self.n = n = sum(shape)
        self.rows_of_pos = np.array([i for i, r in enumerate(shape) for _ in range(r)])
        positions = [(i, j) for i, r in enumerate(shape) for j in range(r)]
        columns = [[k for k, (i, j) in enumerate(positions) if j == c] for c in range(shape[0])]
        perms, signs = [], []
        for choice in itertools.product(*(itertools.permutations(col) for col in columns)):
            image = list(range(n))
            sgn = 1
            for col, img in zip(columns, choice):
                for q, q2 in zip(col, img):
                    image[q] = q2
                sgn *= _perm_sign([col.index(x) for x in img])
            perms.append(image)
            signs.append(sgn)
        # R[pi, q] = row of the position that the entry at q is moved to
        self.R = self.rows_of_pos[np.array(perms)]
        self.signs = np.array(signs, dtype=np.int64)
        self.tableaux = standard_tableaux(shape)
        self.weights = np.array([len(shape) ** e for e in range(n)], dtype=np.int64)
        words = []
        for t in self.tableaux:
            flat = [e for row in t for e in row]
            inv = np.empty(n, dtype=np.int64)
            inv[flat] = np.arange(n)
            words.append(self.R[:, inv])  # words[t][pi, e] = row of entry e in {pi t}
        self.words = words
        codes = np.concatenate([w @ self.weights for w in words])
        self.tabloids, _ = np.unique(codes, return_inverse=True)
        self.E = self._matrix(words)

    def _matrix(self, words) -> sp.csr_matrix:
        codes = [w @ self.weights for w in words]
        data, rows, cols = [], [], []
        for i, c in enumerate(codes):
            idx = np.searchsorted(self.tabloids, c)
            ok = (idx < len(self.tabloids)) & (self.tabloids[np.minimum(idx, len(self.tabloids) - 1)] == c)
            rows.append(np.full(ok.sum(), i))
            cols.append(idx[ok])
            data.append(self.signs[ok])
        return sp.csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(len(words), len(self.tabloids)),
            dtype=np.int64,
        )

    def acted(self, g, which) -> sp.csr_matrix:
        """Rows of the polytabloids g·e_t for the standard tableaux indexed by ``which``."""
        ginv = np.empty(self.n, dtype=np.int64)
        ginv[np.array(g)] = np.arange(self.n)
        return self._matrix([self.words[i][:, ginv] for i in which])


def _perm_sign(img) -> int:
    sgn, seen = 1, set()
    for i in range(len(img)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = img[j]
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


def class_representative(nu):
    g, start = [], 0
    for length in nu:
        g.extend(start + (i + 1) % length for i in range(length))
        start += length
    return g


def cyclotomic_coeffs(d: int) -> list[int]:
    x = sympy.Symbol("x")
    return [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(d, x), x).all_coeffs()]


def brauer_character(la, p, classes):
    """Brauer character of D^la on the given p'-cycle types."""
    mod = SpechtModule(la)
    gram = (mod.E @ mod.E.T).toarray() % p
    piv_rows, piv_cols = row_echelon_mod_p(gram, p)
    dim = len(piv_rows)
    basis = gram[piv_rows]
    binv = inverse_mod_p(basis[:, piv_cols], p)
    values = []
    for nu in classes:
        g = class_representative(nu)
        func = (mod.acted(g, piv_rows) @ mod.E.T).toarray() % p
        a = matmul_mod_p(func[:, piv_cols], binv, p)
        assert np.array_equal(matmul_mod_p(a, basis, p), func), "functional outside D^la"
        m = element_order(nu)
        value = 0
        total = 0
        for d in sympy.divisors(m):
            coeffs = cyclotomic_coeffs(d)
            poly = np.zeros_like(a)
            for c in coeffs:
                poly = (matmul_mod_p(poly, a, p) + c * np.eye(dim, dtype=np.int64)) % p
            kernel = dim - rank_mod_p(poly, p)
            phi_d = sympy.totient(d)
            assert kernel % phi_d == 0
            k_d = kernel // phi_d
            total += kernel
            value += k_d * sympy.mobius(d)
        assert total == dim, "p'-element must act semisimply"
        values.append(int(value))
    return values


def decomposition_matrix(n: int, p: int) -> dict:
    parts = partitions_of(n)
    regular = [la for la in parts if is_p_regular(la, p)]
    classes = [nu for nu in parts if is_p_prime_class(nu, p)]
    assert len(regular) == len(classes)
    if p > n:
        entries = [[int(la == mu) for mu in regular] for la in parts]
    else:
        phi = sympy.Matrix([brauer_character(la, p, classes) for la in regular])
        chi = sympy.Matrix([[mn_value(la, nu) for nu in classes] for la in parts])
        dmat = chi * phi.inv()
        entries = []
        for i in range(len(parts)):
            row = []
            for j in range(len(regular)):
                x = Fraction(str(dmat[i, j]))
                assert x.denominator == 1 and x >= 0, (parts[i], regular[j], x)
                row.append(int(x))
            entries.append(row)
    return {
        "n": n,
        "p": p,
        "rows": [list(la) for la in parts],
        "cols": [list(mu) for mu in regular],
        "entries": entries,
    }


def fixture_path(n: int, p: int) -> Path:
    return FIXTURE_DIR / f"d{n}p{p}.json"


def main(argv):
    sys.path.insert(0, str(ROOT / "src"))
    from symtab.tables import dumps_document

    if len(argv) == 2:
        print(dumps_document(decomposition_matrix(int(argv[0]), int(argv[1]))), end="")
        return
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    for n, p in SHIPPED:
        doc = decomposition_matrix(n, p)
        fixture_path(n, p).write_text(dumps_document(doc))
        print(f"wrote n={n} p={p}", flush=True)


if __name__ == "__main__":
    main(sys.argv[1:])
