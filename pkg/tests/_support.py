"""Shared generators and independent oracles for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce

import numpy as np

from superiwasawa.algebra import GaussianRational, GeneratorTable, random_element
from superiwasawa.supermatrix import SuperDims, SuperMatrix, SuperVector

SIZES = [(1, 1), (2, 1), (2, 2), (3, 1)]


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def random_vector(dims: SuperDims, table: GeneratorTable, rng: random.Random, parity: int, n_terms: int = 2) -> SuperVector:
    """Homogeneous vector: entry ``i`` has parity ``parity + |i|``."""
    ents = [
        random_element(table, rng, (parity + dims.parity(i)) & 1, n_terms=rng.randint(0, n_terms))
        for i in range(dims.size)
    ]
    return SuperVector(dims, ents, parity, table)


def _invertible_body(k: int, rng: random.Random):
    while True:
        B = [[Fraction(rng.randint(-2, 2)) for _ in range(k)] for _ in range(k)]
        if k == 0 or np.linalg.det(np.array(B, dtype=float)) != 0:
            return B


def random_even_matrix(dims: SuperDims, table: GeneratorTable, rng: random.Random, n_terms: int = 2) -> SuperMatrix:
    """Even supermatrix with invertible even-block bodies and random souls."""
    n, N = dims.n, dims.size
    A = _invertible_body(n, rng)
    Dm = _invertible_body(dims.m, rng)
    rows = []
    for i in range(N):
        row = []
        for j in range(N):
            p = (dims.parity(i) + dims.parity(j)) & 1
            e = random_element(table, rng, p, n_terms=rng.randint(0, n_terms), min_degree=1)
            if i < n and j < n:
                e = e + A[i][j]
            elif i >= n and j >= n:
                e = e + Dm[i - n][j - n]
            row.append(e)
        rows.append(row)
    return SuperMatrix(dims, rows, table)


def is_upper_triangular(M: SuperMatrix) -> bool:
    return all(M[i, j].is_zero() for i in range(M.size) for j in range(i))


# -- Jordan-Wigner representation of the odd generators --------------------------------


def jordan_wigner(G: int) -> list[np.ndarray]:
    """``G`` pairwise anticommuting nilpotent 2^G x 2^G matrices (fermionic creation operators)."""
    Z = np.diag([1.0, -1.0])
    I2 = np.eye(2)
    c = np.array([[0.0, 0.0], [1.0, 0.0]])
    ops = []
    for k in range(G):
        factors = [Z] * k + [c] + [I2] * (G - k - 1)
        ops.append(reduce(np.kron, factors).astype(complex))
    return ops


def represent(a, ops) -> np.ndarray:
    """Image of an element of an all-odd generator table under the representation ``ops``."""
    dim = ops[0].shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    for mono, c in a.terms.items():
        mat = np.eye(dim, dtype=complex)
        for g in mono:
            mat = mat @ ops[g]
        out += complex(c) * mat
    return out


def classical_det(rows) -> complex:
    return complex(np.linalg.det(np.array([[complex(e.body) for e in r] for r in rows])))

