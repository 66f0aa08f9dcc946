"""Square supermatrices and column supervectors over a graded algebra.

Indices are 0-based.  Slot ``i`` is even for ``i < n`` and odd for ``i >= n``;
an even supermatrix has entry ``(i, j)`` of parity ``|i| + |j|``.  Zero
entries are accepted in any slot.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import (
    AlgebraElement,
    GeneratorTable,
    element_from_json,
    element_to_json,
    invert_even,
    mul,
    sqrt_even,
    star,
)
from .exceptions import (
    IncompatibleContextError,
    MalformedInputError,
    NotInvertibleError,
    ParityError,
)

__all__ = [
    "SuperDims",
    "SuperMatrix",
    "SuperVector",
    "matmul",
    "matvec",
    "vec_scale_right",
    "supertranspose",
    "vec_supertranspose",
    "dagger",
    "dagger_vec",
    "block_inverse",
    "even_inverse",
    "det",
    "sdet",
    "sdet_alt",
    "scalar_product",
    "norm",
    "matrix_to_json",
    "matrix_from_json",
]


@dataclass(frozen=True)
class SuperDims:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0 or self.n + self.m < 1:
            raise MalformedInputError(f"invalid super dimensions ({self.n}, {self.m})")

    @property
    def size(self) -> int:
        return self.n + self.m

    def parity(self, i: int) -> int:
        return 0 if i < self.n else 1


class SuperMatrix:
    """Immutable ``(n+m) x (n+m)`` grid of algebra elements."""

    __slots__ = ("dims", "rows", "table")

    def __init__(self, dims: SuperDims, rows: Sequence[Sequence[AlgebraElement]], table: GeneratorTable | None = None):
        N = dims.size
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != N or any(len(r) != N for r in rows):
            raise MalformedInputError(f"expected a {N}x{N} grid of entries")
        if table is None:
            table = rows[0][0].table
        for r in rows:
            for e in r:
                if e.table is not table:
                    raise IncompatibleContextError("matrix entries live over different tables")
        self.dims = dims
        self.rows = rows
        self.table = table

    @classmethod
    def identity(cls, dims: SuperDims, table: GeneratorTable) -> "SuperMatrix":
        one, zero = table.one(), table.zero()
        N = dims.size
        return cls(dims, [[one if i == j else zero for j in range(N)] for i in range(N)], table)

    @classmethod
    def from_columns(cls, cols: Sequence["SuperVector"]) -> "SuperMatrix":
        dims = cols[0].dims
        N = dims.size
        return cls(dims, [[cols[j].entries[i] for j in range(N)] for i in range(N)], cols[0].table)

    @property
    def size(self) -> int:
        return self.dims.size

    def __getitem__(self, ij) -> AlgebraElement:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> "SuperVector":
        return SuperVector(self.dims, [r[j] for r in self.rows], self.dims.parity(j), self.table)

    def columns(self) -> list["SuperVector"]:
        return [self.column(j) for j in range(self.size)]

    def blocks(self):
        """``(A, B, C, D)`` as nested lists (possibly empty)."""
        n = self.dims.n
        R = self.rows
        A = [list(r[:n]) for r in R[:n]]
        B = [list(r[n:]) for r in R[:n]]
        C = [list(r[:n]) for r in R[n:]]
        Dm = [list(r[n:]) for r in R[n:]]
        return A, B, C, Dm

    @classmethod
    def from_blocks(cls, dims: SuperDims, A, B, C, Dm, table: GeneratorTable) -> "SuperMatrix":
        rows = [list(A[i]) + list(B[i]) for i in range(dims.n)]
        rows += [list(C[i]) + list(Dm[i]) for i in range(dims.m)]
        return cls(dims, rows, table)

    def parity_violations(self) -> list[tuple[int, int]]:
        p = self.dims.parity
        return [
            (i, j)
            for i, r in enumerate(self.rows)
            for j, e in enumerate(r)
            if not e.has_parity((p(i) + p(j)) & 1)
        ]

    def is_even(self) -> bool:
        return not self.parity_violations()

    def map(self, f) -> "SuperMatrix":
        return SuperMatrix(self.dims, [[f(e) for e in r] for r in self.rows], self.table)

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        _same_shape(self, other)
        return SuperMatrix(
            self.dims, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.table
        )

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        _same_shape(self, other)
        return SuperMatrix(
            self.dims, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.table
        )

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return matmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.dims == other.dims and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    __hash__ = None

    def is_identity(self) -> bool:
        return self == SuperMatrix.identity(self.dims, self.table)

    def body_matrix(self) -> list[list]:
        return [[e.body for e in r] for r in self.rows]

    def __repr__(self):
        body = "\n".join("  [" + ", ".join(repr(e) for e in r) + "]" for r in self.rows)
        return f"SuperMatrix(n={self.dims.n}, m={self.dims.m},\n{body})"


class SuperVector:
    """Column supervector with a declared parity (0 even, 1 odd)."""

    __slots__ = ("dims", "entries", "parity", "table")

    def __init__(self, dims: SuperDims, entries: Sequence[AlgebraElement], parity: int, table: GeneratorTable | None = None):
        entries = tuple(entries)
        if len(entries) != dims.size:
            raise MalformedInputError(f"expected {dims.size} vector entries, got {len(entries)}")
        self.dims = dims
        self.entries = entries
        self.parity = parity
        self.table = table if table is not None else entries[0].table

    @classmethod
    def basis(cls, dims: SuperDims, table: GeneratorTable, k: int, parity: int | None = None) -> "SuperVector":
        """Unit vector ``e_k``; its natural parity is the slot parity of ``k``."""
        ents = [table.one() if i == k else table.zero() for i in range(dims.size)]
        return cls(dims, ents, dims.parity(k) if parity is None else parity, table)

    def is_homogeneous(self) -> bool:
        p = self.dims.parity
        return all(e.has_parity((p(i) + self.parity) & 1) for i, e in enumerate(self.entries))

    def __add__(self, other: "SuperVector") -> "SuperVector":
        return SuperVector(self.dims, [a + b for a, b in zip(self.entries, other.entries)], self.parity, self.table)

    def __sub__(self, other: "SuperVector") -> "SuperVector":
        return SuperVector(self.dims, [a - b for a, b in zip(self.entries, other.entries)], self.parity, self.table)

    def __eq__(self, other):
        if not isinstance(other, SuperVector):
            return NotImplemented
        return self.parity == other.parity and all(a == b for a, b in zip(self.entries, other.entries))

    __hash__ = None

    def __repr__(self):
        kind = "odd" if self.parity else "even"
        return f"SuperVector({kind}, [{', '.join(repr(e) for e in self.entries)}])"


def _same_shape(a, b):
    if a.dims != b.dims:
        raise MalformedInputError(f"dimension mismatch {a.dims} vs {b.dims}")
    if a.table is not b.table:
        raise IncompatibleContextError("operands live over different tables")


def _dot(row: Sequence[AlgebraElement], col: Sequence[AlgebraElement], table: GeneratorTable) -> AlgebraElement:
    acc = table.zero()
    for a, b in zip(row, col):
        if a.terms and b.terms:
            acc = acc + mul(a, b)
    return acc


def _plain_matmul(X, Y, table):
    if not X or not Y:
        return [[] for _ in X]
    cols = list(zip(*Y))
    return [[_dot(r, c, table) for c in cols] for r in X]


def matmul(M: SuperMatrix, N: SuperMatrix) -> SuperMatrix:
    _same_shape(M, N)
    return SuperMatrix(M.dims, _plain_matmul(M.rows, N.rows, M.table), M.table)


def matvec(M: SuperMatrix, X: SuperVector) -> SuperVector:
    if M.dims != X.dims:
        raise MalformedInputError("dimension mismatch in matvec")
    return SuperVector(X.dims, [_dot(r, X.entries, M.table) for r in M.rows], X.parity, M.table)


def vec_scale_right(X: SuperVector, lam: AlgebraElement) -> SuperVector:
    """``X * lam`` with the scalar acting from the right; parity flips when ``lam`` is odd."""
    p = lam.parity
    if p is None:
        raise ParityError("right scaling needs a homogeneous scalar")
    return SuperVector(X.dims, [mul(e, lam) for e in X.entries], (X.parity + p) & 1, X.table)


def _require_even_matrix(M: SuperMatrix, what: str):
    bad = M.parity_violations()
    if bad:
        raise ParityError(f"{what} needs an even supermatrix; entries {bad[:4]} violate the parity pattern")


def supertranspose(M: SuperMatrix) -> SuperMatrix:
    """``(A, B, C, D) -> (A^t, C^t, -B^t, D^t)``."""
    _require_even_matrix(M, "supertranspose")
    n, N = M.dims.n, M.size
    R = M.rows
    rows = []
    for i in range(N):
        row = []
        for j in range(N):
            e = R[j][i]
            row.append(-e if (i >= n and j < n) else e)
        rows.append(row)
    return SuperMatrix(M.dims, rows, M.table)


def vec_supertranspose(X: SuperVector) -> list[AlgebraElement]:
    """Row ``((-1)^|X| X_1, ..., (-1)^|X| X_n, chi_1, ..., chi_m)``."""
    if not X.is_homogeneous():
        raise ParityError("supertranspose of a vector needs matching declared parity")
    n = X.dims.n
    if X.parity:
        return [-e if i < n else e for i, e in enumerate(X.entries)]
    return list(X.entries)


def dagger(M: SuperMatrix) -> SuperMatrix:
    return M.map(star)


def dagger_vec(X: SuperVector) -> SuperVector:
    return SuperVector(X.dims, [star(e) for e in X.entries], X.parity, X.table)


# -- even (commutative) square matrices --------------------------------------


def det(rows: Sequence[Sequence[AlgebraElement]], table: GeneratorTable) -> AlgebraElement:
    """Determinant over the commutative even subring, by memoized Laplace expansion."""
    k = len(rows)
    if k == 0:
        return table.one()

    @lru_cache(maxsize=None)
    def minor(r: int, cols: frozenset) -> AlgebraElement:
        if r == k:
            return table.one()
        acc = table.zero()
        for pos, c in enumerate(sorted(cols)):
            e = rows[r][c]
            if not e.terms:
                continue
            sub = minor(r + 1, cols - {c})
            if not sub.terms:
                continue
            term = mul(e, sub)
            acc = acc - term if pos & 1 else acc + term
        return acc

    return minor(0, frozenset(range(k)))


def _pivot_score(e: AlgebraElement):
    b = e.body
    return abs(complex(b))


def even_inverse(rows: Sequence[Sequence[AlgebraElement]], table: GeneratorTable) -> list[list[AlgebraElement]]:
    """Inverse of a square matrix of even elements by Gauss-Jordan elimination.

    Pivots are chosen by largest body modulus (any invertible body works in
    exact mode) and inverted with :func:`invert_even`.
    """
    k = len(rows)
    one, zero = table.one(), table.zero()
    aug = [list(rows[i]) + [one if i == j else zero for j in range(k)] for i in range(k)]
    field = table.field
    for c in range(k):
        best = max(range(c, k), key=lambda r: _pivot_score(aug[r][c]))
        if field.is_zero(aug[best][c].body):
            raise NotInvertibleError(f"even block is singular at column {c}")
        aug[c], aug[best] = aug[best], aug[c]
        inv = invert_even(aug[c][c])
        aug[c] = [mul(inv, e) for e in aug[c]]
        for r in range(k):
            if r == c or not aug[r][c].terms:
                continue
            f = aug[r][c]
            aug[r] = [a - mul(f, b) for a, b in zip(aug[r], aug[c])]
    return [row[k:] for row in aug]


def _neg(X):
    return [[-e for e in r] for r in X]


def _sub(X, Y):
    return [[a - b for a, b in zip(r, s)] for r, s in zip(X, Y)]


def block_inverse(M: SuperMatrix) -> SuperMatrix:
    """Inverse through the block formula with Schur complements of ``A`` and ``D``."""
    _require_even_matrix(M, "block_inverse")
    table = M.table
    A, B, C, Dm = M.blocks()
    dims = M.dims
    if dims.m == 0:
        return SuperMatrix(dims, even_inverse(A, table), table)
    if dims.n == 0:
        return SuperMatrix(dims, even_inverse(Dm, table), table)
    Ai = even_inverse(A, table)
    Di = even_inverse(Dm, table)
    mm = lambda X, Y: _plain_matmul(X, Y, table)  # noqa: E731
    SA = even_inverse(_sub(A, mm(mm(B, Di), C)), table)  # (A - B D^-1 C)^-1
    SD = even_inverse(_sub(Dm, mm(mm(C, Ai), B)), table)  # (D - C A^-1 B)^-1
    top_right = _neg(mm(mm(Ai, B), SD))
    bottom_left = _neg(mm(mm(Di, C), SA))
    return SuperMatrix.from_blocks(dims, SA, top_right, bottom_left, SD, table)


def sdet(M: SuperMatrix) -> AlgebraElement:
    """Berezinian ``det(A - B D^-1 C) / det(D)``."""
    _require_even_matrix(M, "sdet")
    table = M.table
    A, B, C, Dm = M.blocks()
    if M.dims.m == 0:
        return det(A, table)
    dD = det(Dm, table)
    if table.field.is_zero(dD.body):
        raise NotInvertibleError("D block has singular body; superdeterminant undefined")
    Di = even_inverse(Dm, table)
    schur = _sub(A, _plain_matmul(_plain_matmul(B, Di, table), C, table))
    return mul(det(schur, table), invert_even(dD))


def sdet_alt(M: SuperMatrix) -> AlgebraElement:
    """Berezinian via ``det(A) / det(D - C A^-1 B)``; needs an invertible ``A`` body."""
    _require_even_matrix(M, "sdet_alt")
    table = M.table
    A, B, C, Dm = M.blocks()
    if M.dims.n == 0:
        return invert_even(det(Dm, table))
    Ai = even_inverse(A, table)
    schur = _sub(Dm, _plain_matmul(_plain_matmul(C, Ai, table), B, table))
    return mul(det(A, table), invert_even(det(schur, table)))


# -- scalar product ------------------------------------------------------------


def scalar_product(X: SuperVector, Y: SuperVector) -> AlgebraElement:
    """``(X, Y)``: supertransposed conjugate of ``X`` times ``Y``."""
    if X.dims != Y.dims:
        raise MalformedInputError("dimension mismatch in scalar product")
    return _dot(vec_supertranspose(dagger_vec(X)), Y.entries, X.table)


def norm(X: SuperVector) -> AlgebraElement:
    return sqrt_even(scalar_product(X, X))


# -- JSON ------------------------------------------------------------------------


def matrix_to_json(M: SuperMatrix) -> dict:
    return {
        "n": M.dims.n,
        "m": M.dims.m,
        "entries": [[element_to_json(e) for e in r] for r in M.rows],
    }


def matrix_from_json(data, table: GeneratorTable, *, require_even: bool = True) -> SuperMatrix:
    try:
        dims = SuperDims(int(data["n"]), int(data["m"]))
        raw = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"bad matrix payload: {exc}") from exc
    if not isinstance(raw, list):
        raise MalformedInputError("matrix entries must be a list of rows")
    M = SuperMatrix(dims, [[element_from_json(table, e) for e in r] for r in raw], table)
    if require_even:
        bad = M.parity_violations()
        if bad:
            raise MalformedInputError(f"entries {bad[:4]} violate the even parity pattern")
    return M
