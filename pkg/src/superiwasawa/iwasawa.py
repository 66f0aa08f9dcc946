"""Super Gram-Schmidt factorization ``M = Phi @ Psi`` of even supermatrices.

``Phi`` is unitary for the graded star (``supertranspose(dagger(Phi)) @ Phi``
is the identity, normalized diagonal, unit Berezinian).  ``Psi`` is upper
triangular with star-real normalized diagonal and unit Berezinian.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    FLOAT_TOL,
    AlgebraElement,
    GeneratorTable,
    element_to_json,
    invert_even,
    mul,
    random_element,
    sqrt_even,
    star,
)
from .exceptions import MalformedInputError, NotInvertibleError, ParityError, PreconditionError
from .supermatrix import (
    SuperDims,
    SuperMatrix,
    SuperVector,
    block_inverse,
    dagger,
    matmul,
    matrix_from_json,
    matrix_to_json,
    scalar_product,
    sdet,
    supertranspose,
    vec_scale_right,
)

__all__ = [
    "CheckReport",
    "DecompositionResult",
    "InstanceSpec",
    "gram_schmidt",
    "decompose",
    "triangular_factor",
    "is_su_supermatrix",
    "is_san_supermatrix",
    "intersection_is_identity_check",
    "generate_instance",
    "random_san_matrix",
    "classical_oracle",
    "random_special_linear",
    "numeric_to_supermatrix",
    "supermatrix_to_numeric",
]


@dataclass
class CheckReport:
    """Predicate outcome; truthy iff every check passed."""

    name: str
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def fail(self, msg: str):
        self.failures.append(msg)

    def to_json(self) -> dict:
        return {"check": self.name, "status": "pass" if self.ok else "fail", "failures": self.failures}


@dataclass
class DecompositionResult:
    phi: SuperMatrix
    psi: SuperMatrix
    orthogonal_family: list[SuperVector]
    norms: list[AlgebraElement]

    def to_json(self) -> dict:
        return {
            "phi": matrix_to_json(self.phi),
            "psi": matrix_to_json(self.psi),
            "norms": [element_to_json(e) for e in self.norms],
        }


@dataclass
class InstanceSpec:
    dims: SuperDims
    degree: int
    table: GeneratorTable
    matrix: SuperMatrix
    mode: str = "exact"
    seed: int | None = None

    def to_json(self) -> dict:
        return {
            "n": self.dims.n,
            "m": self.dims.m,
            "degree": self.degree,
            "mode": self.mode,
            "seed": self.seed,
            "generators": self.table.to_json(),
            "entries": matrix_to_json(self.matrix)["entries"],
        }

    @classmethod
    def from_json(cls, data) -> "InstanceSpec":
        if not isinstance(data, dict):
            raise MalformedInputError("instance must be a JSON object")
        try:
            dims = SuperDims(int(data["n"]), int(data["m"]))
            degree = int(data["degree"])
            mode = data.get("mode", "exact")
            gens = data.get("generators", [])
            seed = data.get("seed")
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad instance payload: {exc}") from exc
        table = GeneratorTable.from_json(gens, degree, mode)
        M = matrix_from_json({"n": dims.n, "m": dims.m, "entries": data.get("entries")}, table)
        return cls(dims, degree, table, M, mode, seed)


# -- factorization ---------------------------------------------------------------


def _check_preconditions(M: SuperMatrix, require_unit_sdet: bool, sdet_tol: float):
    bad = M.parity_violations()
    if bad:
        raise ParityError(f"input is not an even supermatrix; entries {bad[:4]} break the pattern")
    table = M.table
    if table.mode == "exact":
        for i, r in enumerate(M.rows):
            for j, e in enumerate(r):
                if e.body != (1 if i == j else 0):
                    raise PreconditionError(
                        f"exact-mode input must have identity body (M = delta + soul); entry ({i},{j}) has body {e.body!r}"
                    )
    if require_unit_sdet:
        s = sdet(M)
        if not _eq(s, 1, sdet_tol):
            raise PreconditionError(f"SL constraint violated: sdet(M) = {s!r}, expected 1")


def gram_schmidt(
    M: SuperMatrix, *, require_unit_sdet: bool = True, sdet_tol: float = 1e-9
) -> tuple[list[SuperVector], list[AlgebraElement]]:
    """Orthogonalize the columns of ``M``; return ``(V, norms)``.

    ``V_l = M_l - sum_k V_k * ((V_k, V_k)^-1 (V_k, M_l))`` with right scaling,
    ``norms[l] = sqrt((V_l, V_l))``.
    """
    _check_preconditions(M, require_unit_sdet, sdet_tol)
    table = M.table
    cols = M.columns()
    V: list[SuperVector] = []
    inv_gram: list[AlgebraElement] = []
    norms: list[AlgebraElement] = []
    for l, Ml in enumerate(cols):
        v = Ml
        for k in range(l):
            c = mul(inv_gram[k], scalar_product(V[k], Ml))
            if c.terms:
                v = v - vec_scale_right(V[k], c)
        g = scalar_product(v, v)
        b = g.body
        if table.mode == "float":
            if abs(complex(b)) <= FLOAT_TOL:
                raise NotInvertibleError(f"column {l}: (V_l, V_l) has near-zero body {b!r}; input is numerically singular")
        elif not b:
            raise NotInvertibleError(f"column {l}: (V_l, V_l) has zero body")
        V.append(v)
        inv_gram.append(invert_even(g))
        norms.append(sqrt_even(g))
    return V, norms


def decompose(
    M: SuperMatrix, *, require_unit_sdet: bool = True, sdet_tol: float = 1e-9
) -> DecompositionResult:
    """Factor ``M = Phi @ Psi``; ``Phi`` from normalized Gram-Schmidt, ``Psi = Phi^-1 @ M``.

    ``require_unit_sdet=False`` skips the SL check (the factorization itself
    does not use it; only the unit-Berezinian predicates do).
    """
    V, norms = gram_schmidt(M, require_unit_sdet=require_unit_sdet, sdet_tol=sdet_tol)
    phi_cols = [vec_scale_right(v, invert_even(r)) for v, r in zip(V, norms)]
    phi = SuperMatrix.from_columns(phi_cols)
    psi = matmul(block_inverse(phi), M)
    return DecompositionResult(phi, psi, V, norms)


def triangular_factor(phi: SuperMatrix, M: SuperMatrix) -> SuperMatrix:
    """Upper-triangular ``Psi`` with entries ``(Phi_i, M_j)`` for ``i <= j``.

    Cross-check for the block-inverse route: valid because the adjoint of a
    unitary ``Phi`` is its inverse and ``M_j`` lies in the span of ``Phi_0..Phi_j``.
    """
    N = M.size
    table = M.table
    cols = phi.columns()
    out = [[table.zero() for _ in range(N)] for _ in range(N)]
    for j in range(N):
        Mj = M.column(j)
        for i in range(j + 1):
            out[i][j] = scalar_product(cols[i], Mj)
    return SuperMatrix(M.dims, out, table)


# -- predicates ------------------------------------------------------------------


def _eq(a: AlgebraElement, b, tol: float | None) -> bool:
    if tol is None or a.table.mode == "exact":
        return a == b
    b = a.table.coerce(b) if not isinstance(b, AlgebraElement) else b
    d = a - b
    return all(abs(complex(c)) <= tol for c in d.terms.values())


def is_su_supermatrix(P: SuperMatrix, tol: float | None = None, *, normalized: bool = True) -> CheckReport:
    """Unit Berezinian, normalized diagonal, and ``supertranspose(dagger(P)) @ P = 1``.

    ``normalized=False`` drops the body-1 diagonal condition (classical float case).
    """
    rep = CheckReport("su")
    bad = P.parity_violations()
    if bad:
        rep.fail(f"not an even supermatrix: entries {bad[:4]}")
        return rep
    try:
        s = sdet(P)
        if not _eq(s, 1, tol):
            rep.fail(f"sdet = {s!r}")
    except NotInvertibleError as exc:
        rep.fail(f"sdet undefined: {exc}")
    for i in range(P.size if normalized else 0):
        if not _body_is_one(P[i, i], tol):
            rep.fail(f"diagonal ({i},{i}) not normalized: body {P[i, i].body!r}")
    G = matmul(supertranspose(dagger(P)), P)
    for i in range(P.size):
        for j in range(P.size):
            if not _eq(G[i, j], 1 if i == j else 0, tol):
                rep.fail(f"unitarity fails at ({i},{j}): {G[i, j]!r}")
    return rep


def _body_is_one(e: AlgebraElement, tol) -> bool:
    if e.table.mode == "exact":
        return e.body == 1
    return abs(complex(e.body) - 1) <= (tol if tol is not None else FLOAT_TOL)


def is_san_supermatrix(Q: SuperMatrix, tol: float | None = None, *, normalized: bool = True) -> CheckReport:
    """Unit Berezinian, upper triangular, star-real diagonal with body 1.

    ``normalized=False`` accepts any real positive diagonal body (classical float case).
    """
    rep = CheckReport("san")
    bad = Q.parity_violations()
    if bad:
        rep.fail(f"not an even supermatrix: entries {bad[:4]}")
        return rep
    try:
        s = sdet(Q)
        if not _eq(s, 1, tol):
            rep.fail(f"sdet = {s!r}")
    except NotInvertibleError as exc:
        rep.fail(f"sdet undefined: {exc}")
    for i in range(Q.size):
        for j in range(i):
            if not _eq(Q[i, j], 0, tol):
                rep.fail(f"below-diagonal entry ({i},{j}) nonzero: {Q[i, j]!r}")
    for i in range(Q.size):
        d = Q[i, i]
        if not _eq(star(d), d, tol):
            rep.fail(f"diagonal ({i},{i}) not star-real: {d!r}")
        if normalized:
            if not _body_is_one(d, tol):
                rep.fail(f"diagonal ({i},{i}) not normalized: body {d.body!r}")
        elif complex(d.body).real <= 0:
            rep.fail(f"diagonal ({i},{i}) body not positive: {d.body!r}")
    return rep


def intersection_is_identity_check(P: SuperMatrix, tol: float | None = None) -> bool:
    """True unless ``P`` satisfies both predicates without being the identity."""
    if is_su_supermatrix(P, tol) and is_san_supermatrix(P, tol):
        I = SuperMatrix.identity(P.dims, P.table)
        return all(_eq(P[i, j], I[i, j], tol) for i in range(P.size) for j in range(P.size))
    return True


# -- instance generation ------------------------------------------------------------


def _random_soul(table: GeneratorTable, rng: random.Random, parity: int, max_terms: int) -> AlgebraElement:
    return random_element(table, rng, parity, n_terms=rng.randint(1, max_terms), min_degree=1)


def generate_instance(
    dims: SuperDims,
    degree: int,
    seed: int,
    density: float = 0.5,
    *,
    odd_pairs: int = 2,
    even_pairs: int = 0,
    max_terms: int = 2,
    table: GeneratorTable | None = None,
) -> InstanceSpec:
    """Seeded ``M = delta + soul`` rescaled on column 0 so that ``sdet(M) = 1`` exactly."""
    rng = random.Random(seed)
    table = table or GeneratorTable.grassmann(odd_pairs, even_pairs, degree)
    N = dims.size
    rows = []
    for i in range(N):
        row = []
        for j in range(N):
            e = table.one() if i == j else table.zero()
            if density > 0 and rng.random() < density:
                e = e + _random_soul(table, rng, (dims.parity(i) + dims.parity(j)) & 1, max_terms)
            row.append(e)
        rows.append(row)
    M = SuperMatrix(dims, rows, table)
    s = sdet(M)
    # scaling an even column by lam multiplies sdet by lam, an odd column divides it
    lam = invert_even(s) if dims.parity(0) == 0 else s
    rows = [[mul(r[0], lam)] + list(r[1:]) for r in M.rows]
    M = SuperMatrix(dims, rows, table)
    return InstanceSpec(dims, degree, table, M, table.mode, seed)


def random_san_matrix(
    dims: SuperDims, table: GeneratorTable, rng: random.Random, density: float = 0.6, max_terms: int = 2
) -> SuperMatrix:
    """Random s(AN)-supermatrix: upper triangular, diagonal ``1 + r + star(r)``, sdet 1."""
    N = dims.size
    rows = [[table.zero() for _ in range(N)] for _ in range(N)]
    for i in range(N):
        r = _random_soul(table, rng, 0, max_terms) if rng.random() < density else table.zero()
        rows[i][i] = table.one() + r + star(r)
        for j in range(i + 1, N):
            if rng.random() < density:
                rows[i][j] = _random_soul(table, rng, (dims.parity(i) + dims.parity(j)) & 1, max_terms)
    Q = SuperMatrix(dims, rows, table)
    s = sdet(Q)
    lam = invert_even(s) if dims.parity(0) == 0 else s
    rows[0] = [mul(lam, e) for e in rows[0]]
    return SuperMatrix(dims, rows, table)


# -- classical (m = 0) oracle -----------------------------------------------------


def classical_oracle(M) -> tuple[np.ndarray, np.ndarray]:
    """QR of a complex matrix with ``R`` forced to a real positive diagonal (Householder based)."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise MalformedInputError("classical oracle needs a square matrix")
    Q, R = np.linalg.qr(M)
    d = np.diag(R)
    if np.min(np.abs(d)) <= 1e-12 * max(1.0, np.max(np.abs(R))):
        raise NotInvertibleError("matrix is numerically singular")
    phase = d / np.abs(d)
    Q = Q * phase[np.newaxis, :]
    R = np.conj(phase)[:, np.newaxis] * R
    return Q, R


def random_special_linear(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random complex ``n x n`` matrix normalized to determinant 1."""
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    d = np.linalg.det(A)
    return A / d ** (1.0 / n)


_SCALAR_TABLES: dict[str, GeneratorTable] = {}


def scalar_table(mode: str = "float") -> GeneratorTable:
    """Generator-free table (plain complex numbers) used for the classical case."""
    if mode not in _SCALAR_TABLES:
        _SCALAR_TABLES[mode] = GeneratorTable([], 1, mode)
    return _SCALAR_TABLES[mode]


def numeric_to_supermatrix(A, table: GeneratorTable | None = None) -> SuperMatrix:
    A = np.asarray(A, dtype=complex)
    table = table or scalar_table("float")
    n = A.shape[0]
    return SuperMatrix(SuperDims(n, 0), [[table.scalar(complex(x)) for x in row] for row in A], table)


def supermatrix_to_numeric(M: SuperMatrix) -> np.ndarray:
    return np.array([[complex(e.body) for e in r] for r in M.rows], dtype=complex)
