"""Hopf-superalgebra structure on the matrix-coefficient algebra C[x_ij, x‡_ij].

The generator algebra holds two families, ``x_ij`` and their conjugates
``x‡_ij``, with ``|x_ij| = |i| + |j|``.  On both families

    Δ(y_ij) = Σ_k y_ik ⊗ y_kj,   ε(x_ij) = 0,   S(y) = y^{-1}   (y = δ + x),

and the graded real form is the antilinear morphism
``σ(x_ij) = (-1)^{(|i|+|j|)|j|} S(x_ji)``, ``σ(x‡_ij) = (-1)^{|x_ij|} x_ij``.

Tensor products are graded, ``(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd``, and are
truncated at total degree ``deg(left) + deg(right) <= D``; the coproduct never
lowers total degree, so this is the truncation it is compatible with.
"""
from __future__ import annotations

import random
from typing import Callable

from .algebra import (
    AlgebraElement,
    AlgebraMorphism,
    GaussianRational,
    Generator,
    GeneratorTable,
    element_to_json,
    mul,
)
from .iwasawa import DecompositionResult, decompose
from .supermatrix import SuperDims, SuperMatrix, block_inverse, dagger

__all__ = [
    "HopfContext",
    "TensorElement",
    "coproduct",
    "counit",
    "antipode",
    "sigma",
    "project_su",
    "project_an",
    "verify_real_form_axioms",
    "verify_factorization",
    "verify_bialgebra",
    "verify_hopf_ideals",
]


class HopfContext:
    """Generator table for ``(n, m)`` with the ``x`` and ``x‡`` families and cached structure maps."""

    def __init__(self, n: int, m: int, degree: int, mode: str = "exact"):
        self.dims = SuperDims(n, m)
        N = self.dims.size
        self.N = N
        gens = []
        for i in range(N):
            for j in range(N):
                k = i * N + j
                p = (self.dims.parity(i) + self.dims.parity(j)) & 1
                gens.append(Generator(k, p, N * N + k, 1, f"x{i + 1}{j + 1}"))
        for i in range(N):
            for j in range(N):
                k = i * N + j
                p = (self.dims.parity(i) + self.dims.parity(j)) & 1
                gens.append(Generator(N * N + k, p, k, (-1) ** p, f"x‡{i + 1}{j + 1}"))
        self.table = GeneratorTable(gens, degree, mode)
        self.degree = degree
        self._antipode: AlgebraMorphism | None = None
        self._sigma: AlgebraMorphism | None = None
        self._proj_su: AlgebraMorphism | None = None
        self._proj_an: AlgebraMorphism | None = None
        self._delta_cache: dict = {}

    def __repr__(self):
        return f"HopfContext(n={self.dims.n}, m={self.dims.m}, degree={self.degree})"

    # -- generators -------------------------------------------------------------

    def xid(self, i: int, j: int, conj: bool = False) -> int:
        return (self.N * self.N if conj else 0) + i * self.N + j

    def x(self, i: int, j: int) -> AlgebraElement:
        return self.table.gen(self.xid(i, j))

    def xd(self, i: int, j: int) -> AlgebraElement:
        return self.table.gen(self.xid(i, j, conj=True))

    def y(self, i: int, j: int, conj: bool = False) -> AlgebraElement:
        g = self.xd(i, j) if conj else self.x(i, j)
        return g + 1 if i == j else g

    def slot_parity(self, i: int, j: int) -> int:
        return (self.dims.parity(i) + self.dims.parity(j)) & 1

    def locate(self, gid: int) -> tuple[int, int, bool]:
        """``(i, j, is_conjugate)`` for a generator id."""
        conj, k = divmod(gid, self.N * self.N)
        return k // self.N, k % self.N, bool(conj)

    def generic_matrix(self, conj: bool = False) -> SuperMatrix:
        """``δ + x`` (or ``δ + x‡``) as a supermatrix over the context table."""
        N = self.N
        return SuperMatrix(self.dims, [[self.y(i, j, conj) for j in range(N)] for i in range(N)], self.table)

    def holomorphic_generators(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.N) for j in range(self.N)]

    # -- structure maps ------------------------------------------------------------

    @property
    def antipode_map(self) -> AlgebraMorphism:
        if self._antipode is None:
            images = {}
            for conj in (False, True):
                inv = block_inverse(self.generic_matrix(conj))
                for i in range(self.N):
                    for j in range(self.N):
                        images[self.xid(i, j, conj)] = inv[i, j] - 1 if i == j else inv[i, j]
            self._antipode = AlgebraMorphism(self.table, images, reverse=True)
        return self._antipode

    @property
    def sigma_map(self) -> AlgebraMorphism:
        if self._sigma is None:
            S = self.antipode_map
            p = self.dims.parity
            images = {}
            for i in range(self.N):
                for j in range(self.N):
                    s = -1 if ((p(i) + p(j)) * p(j)) & 1 else 1
                    images[self.xid(i, j)] = S.images[self.xid(j, i)].scale(s)
                    images[self.xid(i, j, True)] = self.x(i, j).scale((-1) ** self.slot_parity(i, j))
            self._sigma = AlgebraMorphism(self.table, images, antilinear=True)
        return self._sigma

    @property
    def project_su_map(self) -> AlgebraMorphism:
        if self._proj_su is None:
            sig = self.sigma_map
            images = {self.xid(i, j, True): sig.images[self.xid(i, j)] for i, j in self.holomorphic_generators()}
            self._proj_su = AlgebraMorphism(self.table, images)
        return self._proj_su

    @property
    def project_an_map(self) -> AlgebraMorphism:
        if self._proj_an is None:
            zero = self.table.zero()
            images = {}
            for i, j in self.holomorphic_generators():
                if i > j:
                    images[self.xid(i, j)] = zero
                    images[self.xid(i, j, True)] = zero
                elif i == j:
                    images[self.xid(i, j, True)] = self.x(i, i)
            self._proj_an = AlgebraMorphism(self.table, images)
        return self._proj_an

    def delta_monomial(self, mono: tuple) -> "TensorElement":
        hit = self._delta_cache.get(mono)
        if hit is not None:
            return hit
        if not mono:
            img = TensorElement.pure(self.table.one(), self.table.one())
        elif len(mono) == 1:
            i, j, conj = self.locate(mono[0])
            one = self.table.one()
            gen = self.table.gen(mono[0])
            img = TensorElement.pure(one, gen) + TensorElement.pure(gen, one)
            for k in range(self.N):
                img = img + TensorElement.pure(
                    self.table.gen(self.xid(i, k, conj)), self.table.gen(self.xid(k, j, conj))
                )
        else:
            img = self.delta_monomial(mono[:-1]) * self.delta_monomial(mono[-1:])
        self._delta_cache[mono] = img
        return img


class TensorElement:
    """Element of the graded tensor square, ``{(left_monomial, right_monomial): coeff}``."""

    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms: dict):
        self.table = table
        self.terms = terms

    @classmethod
    def pure(cls, a: AlgebraElement, b: AlgebraElement) -> "TensorElement":
        table = a.table
        D = table.degree
        terms = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                if len(ma) + len(mb) <= D:
                    terms[(ma, mb)] = ca * cb
        return cls(table, _prune(table, terms))

    @classmethod
    def zero(cls, table: GeneratorTable) -> "TensorElement":
        return cls(table, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorElement") -> "TensorElement":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc[k] + c if k in acc else c
        return TensorElement(self.table, _prune(self.table, acc))

    def __neg__(self):
        return TensorElement(self.table, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = self.table.field.coerce(c)
        return TensorElement(self.table, _prune(self.table, {k: c * v for k, v in self.terms.items()}))

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        table = self.table
        D = table.degree
        mm = table._mono_mul
        par = table.monomial_parity
        acc: dict = {}
        for (a, b), c1 in self.terms.items():
            pb = par(b)
            for (c, d), c2 in other.terms.items():
                if len(a) + len(b) + len(c) + len(d) > D:
                    continue
                s1, ac = mm(a, c)
                if not s1:
                    continue
                s2, bd = mm(b, d)
                if not s2:
                    continue
                s = s1 * s2
                if pb and par(c):
                    s = -s
                v = c1 * c2
                if s < 0:
                    v = -v
                key = (ac, bd)
                acc[key] = acc[key] + v if key in acc else v
        return TensorElement(table, _prune(table, acc))

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map(
        self,
        f: Callable[[AlgebraElement], AlgebraElement],
        g: Callable[[AlgebraElement], AlgebraElement],
        *,
        antilinear: bool = False,
    ) -> "TensorElement":
        """``(f ⊗ g)`` for parity-preserving maps ``f, g`` (no Koszul sign arises).

        With ``antilinear=True`` the coefficients are conjugated, as for ``σ ⊗ σ``.
        """
        table = self.table
        out = TensorElement.zero(table)
        one = table.field.one
        conj = table.field.conj
        for (a, b), c in self.terms.items():
            if antilinear:
                c = conj(c)
            fa = f(AlgebraElement(table, {a: one}))
            gb = g(AlgebraElement(table, {b: one}))
            out = out + TensorElement.pure(fa.scale(c), gb)
        return out

    def contract(
        self, f: Callable[[AlgebraElement], AlgebraElement], g: Callable[[AlgebraElement], AlgebraElement]
    ) -> AlgebraElement:
        """Multiplication after legwise maps: ``Σ c · f(a) g(b)``."""
        table = self.table
        one = table.field.one
        acc = None
        for (a, b), c in self.terms.items():
            fa = f(AlgebraElement(table, {a: one}))
            gb = g(AlgebraElement(table, {b: one}))
            t = mul(fa, gb).scale(c)
            acc = t if acc is None else acc + t
        return acc if acc is not None else table.zero()

    def to_json(self) -> list[dict]:
        dump = self.table.field.dump
        return [
            {"coeff": dump(c), "left": list(a), "right": list(b)}
            for (a, b), c in sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0]))
        ]

    def __repr__(self):
        t = self.table
        parts = []
        for (a, b), c in self.terms.items():
            left = "·".join(t.name(k) for k in a) or "1"
            right = "·".join(t.name(k) for k in b) or "1"
            parts.append(f"{c!r}*{left}⊗{right}")
        return " + ".join(parts) or "0"


def _prune(table, terms):
    is_zero = table.field.is_zero
    return {k: c for k, c in terms.items() if not is_zero(c)}


# -- structure maps ----------------------------------------------------------------


def coproduct(ctx: HopfContext, a: AlgebraElement) -> TensorElement:
    """Δ extended multiplicatively from ``Δ(x_ij) = 1⊗x_ij + x_ij⊗1 + Σ_k x_ik⊗x_kj``."""
    out = TensorElement.zero(ctx.table)
    for m, c in a.terms.items():
        out = out + ctx.delta_monomial(m).scale(c)
    return out


def counit(ctx: HopfContext, a: AlgebraElement):
    return a.body


def antipode(ctx: HopfContext, a: AlgebraElement) -> AlgebraElement:
    """Graded antimorphism with ``S(x_ij) = -δ_ij + ((δ + x)^{-1})_ij``."""
    return ctx.antipode_map(a)


def sigma(ctx: HopfContext, a: AlgebraElement) -> AlgebraElement:
    return ctx.sigma_map(a)


def project_su(ctx: HopfContext, a: AlgebraElement) -> AlgebraElement:
    """Coset representative modulo the ideal generated by ``σ(x_ij) - x‡_ij``."""
    return ctx.project_su_map(a)


def project_an(ctx: HopfContext, a: AlgebraElement) -> AlgebraElement:
    """Coset representative modulo ``x_ij = x‡_ij = 0 (i > j)`` and ``x_ii = x‡_ii``."""
    return ctx.project_an_map(a)


def sigma_sign(ctx: HopfContext, i: int, j: int) -> int:
    p = ctx.dims.parity
    return -1 if ((p(i) + p(j)) * p(j)) & 1 else 1


# -- verification reports -------------------------------------------------------------


def _record(axiom: str, failures: list) -> dict:
    if not failures:
        return {"axiom": axiom, "status": "pass", "counterexample": None}
    name, diff = failures[0]
    ce = {"generator": name, "difference": element_to_json(diff) if isinstance(diff, AlgebraElement) else diff}
    return {"axiom": axiom, "status": "fail", "counterexample": ce}


def _diff_json(diff) -> list:
    return diff.to_json() if isinstance(diff, TensorElement) else diff


def verify_real_form_axioms(ctx: HopfContext, kind: str = "graded", seed: int = 0) -> list[dict]:
    """Check the real-form axioms for σ on every holomorphic generator.

    ``kind="graded"`` uses ``SσSσ = (-1)^|x|`` and ``σ² = (-1)^|x|`` (labels 5b, 6b);
    ``kind="normal"`` uses the ungraded versions (5a, 6a).  Two further
    records check ``S∘S = id`` and ``σ(S(x_pj)) = (-1)^{(|p|+|j|)|j|} x_jp``.
    """
    if kind not in ("graded", "normal"):
        raise ValueError(f"unknown real form kind {kind!r}")
    rng = random.Random(seed)
    table = ctx.table
    S, sig = ctx.antipode_map, ctx.sigma_map
    gens = ctx.holomorphic_generators()
    fails: dict[str, list] = {k: [] for k in ("1", "2", "3", "4", "5", "6", "SS", "sigmaS")}
    for i, j in gens:
        x = ctx.x(i, j)
        name = table.name(ctx.xid(i, j))
        par = ctx.slot_parity(i, j)
        sx = sig(x)
        # (1) (σ⊗σ)Δ = Δσ
        lhs = coproduct(ctx, x).map(sig, sig, antilinear=True)
        rhs = coproduct(ctx, sx)
        if lhs != rhs:
            fails["1"].append((name, _diff_json(lhs - rhs)))
        # (2) ε∘σ = conj∘ε
        e1, e2 = counit(ctx, sx), table.field.conj(counit(ctx, x))
        if not table.field.equal(e1, e2):
            fails["2"].append((name, [table.field.dump(e1), table.field.dump(e2)]))
        # (3) antilinearity and (4) multiplicativity against a random partner generator
        k, l = gens[rng.randrange(len(gens))]
        z = ctx.x(k, l)
        lam = GaussianRational(rng.randint(-3, 3), rng.randint(1, 3))
        mu = GaussianRational(rng.randint(1, 3), rng.randint(-3, 3))
        d3 = sig(x.scale(lam) + z.scale(mu)) - (sx.scale(lam.conjugate()) + sig(z).scale(mu.conjugate()))
        if not d3.is_zero():
            fails["3"].append((name, d3))
        d4 = sig(mul(x, z)) - mul(sx, sig(z))
        if not d4.is_zero():
            fails["4"].append((name, d4))
        # (5) SσSσ and (6) σσ
        target = x.scale((-1) ** par) if kind == "graded" else x
        d5 = S(sig(S(sx))) - target
        if not d5.is_zero():
            fails["5"].append((name, d5))
        d6 = sig(sx) - target
        if not d6.is_zero():
            fails["6"].append((name, d6))
        dss = S(S(x)) - x
        if not dss.is_zero():
            fails["SS"].append((name, dss))
        dsig = sig(S(x)) - ctx.x(j, i).scale(sigma_sign(ctx, i, j))
        if not dsig.is_zero():
            fails["sigmaS"].append((name, dsig))
    suffix = "b" if kind == "graded" else "a"
    return [
        _record("(1)", fails["1"]),
        _record("(2)", fails["2"]),
        _record("(3)", fails["3"]),
        _record("(4)", fails["4"]),
        _record(f"(5{suffix})", fails["5"]),
        _record(f"(6{suffix})", fails["6"]),
        _record("S∘S=id", fails["SS"]),
        _record("σ∘S", fails["sigmaS"]),
    ]


def verify_bialgebra(ctx: HopfContext) -> list[dict]:
    """Coassociativity, counit and antipode axioms on the generators."""
    table = ctx.table
    fails: dict[str, list] = {"coassoc": [], "counit": [], "antipode": []}
    D = table.degree
    for conj in (False, True):
        for i, j in ctx.holomorphic_generators():
            x = ctx.xd(i, j) if conj else ctx.x(i, j)
            name = table.name(ctx.xid(i, j, conj))
            dx = coproduct(ctx, x)
            left: dict = {}
            right: dict = {}
            for (a, b), c in dx.terms.items():
                for (a1, a2), c1 in ctx.delta_monomial(a).terms.items():
                    if len(a1) + len(a2) + len(b) <= D:
                        key = (a1, a2, b)
                        left[key] = left.get(key, table.field.zero) + c * c1
                for (b1, b2), c2 in ctx.delta_monomial(b).terms.items():
                    if len(a) + len(b1) + len(b2) <= D:
                        key = (a, b1, b2)
                        right[key] = right.get(key, table.field.zero) + c * c2
            diff = {k: left.get(k, table.field.zero) - right.get(k, table.field.zero) for k in set(left) | set(right)}
            diff = _prune(table, diff)
            if diff:
                fails["coassoc"].append((name, [[list(k[0]), list(k[1]), list(k[2])] for k in diff]))
            l_counit = dx.contract(lambda u: table.scalar(u.body), lambda v: v)
            r_counit = dx.contract(lambda u: u, lambda v: table.scalar(v.body))
            if l_counit != x or r_counit != x:
                fails["counit"].append((name, (l_counit - x) if l_counit != x else (r_counit - x)))
    S = ctx.antipode_map
    for conj in (False, True):
        for i in range(ctx.N):
            for j in range(ctx.N):
                lhs = table.zero()
                rhs = table.zero()
                for k in range(ctx.N):
                    lhs = lhs + mul(S(ctx.y(i, k, conj)), ctx.y(k, j, conj))
                    rhs = rhs + mul(ctx.y(i, k, conj), S(ctx.y(k, j, conj)))
                target = table.one() if i == j else table.zero()
                if lhs != target or rhs != target:
                    fails["antipode"].append((f"y{i + 1}{j + 1}", (lhs - target) if lhs != target else (rhs - target)))
    return [_record("coassociativity", fails["coassoc"]), _record("counit", fails["counit"]), _record("antipode", fails["antipode"])]


def _ideal_generators(ctx: HopfContext):
    sig = ctx.sigma_map
    I_gens = [
        (f"σ(x{i + 1}{j + 1})-x‡{i + 1}{j + 1}", sig(ctx.x(i, j)) - ctx.xd(i, j))
        for i, j in ctx.holomorphic_generators()
    ]
    J_gens = []
    for i, j in ctx.holomorphic_generators():
        if i > j:
            J_gens.append((f"x{i + 1}{j + 1}", ctx.x(i, j)))
            J_gens.append((f"x‡{i + 1}{j + 1}", ctx.xd(i, j)))
        elif i == j:
            J_gens.append((f"x{i + 1}{i + 1}-x‡{i + 1}{i + 1}", ctx.x(i, i) - ctx.xd(i, i)))
    return I_gens, J_gens


def verify_hopf_ideals(ctx: HopfContext) -> list[dict]:
    """Projections kill the ideal generators, and (p⊗p)∘Δ kills them too."""
    I_gens, J_gens = _ideal_generators(ctx)
    records = []
    for label, proj, gens in (("I", ctx.project_su_map, I_gens), ("J", ctx.project_an_map, J_gens)):
        kill, coideal = [], []
        for name, g in gens:
            pg = proj(g)
            if not pg.is_zero():
                kill.append((name, pg))
            t = coproduct(ctx, g).map(proj, proj)
            if not t.is_zero():
                coideal.append((name, t.to_json()))
        records.append(_record(f"{label} projects to zero", kill))
        records.append(_record(f"Δ({label}) ⊂ {label}⊗A + A⊗{label}", coideal))
    return records


def verify_factorization(ctx: HopfContext, result: DecompositionResult | None = None) -> list[dict]:
    """Check ``φ(i(f₍₁₎)) ψ(j(f₍₂₎)) = f`` on generators via Sweedler expansion.

    ``φ`` and ``ψ`` send ``x_ab`` to ``Φ_ab - δ_ab`` / ``Ψ_ab - δ_ab`` and
    ``x‡_ab`` to the conjugate entries, where ``(Φ, Ψ)`` factor the generic
    matrix ``δ + x``.  That matrix is not unimodular in the free algebra, so the
    decomposition runs without the SL check.
    """
    table = ctx.table
    if result is None:
        result = decompose(ctx.generic_matrix(), require_unit_sdet=False)
    Phi, Psi = result.phi, result.psi
    Phid, Psid = dagger(Phi), dagger(Psi)
    phi_images, psi_images = {}, {}
    for i, j in ctx.holomorphic_generators():
        delta = 1 if i == j else 0
        phi_images[ctx.xid(i, j)] = Phi[i, j] - delta
        phi_images[ctx.xid(i, j, True)] = Phid[i, j] - delta
        psi_images[ctx.xid(i, j)] = Psi[i, j] - delta
        psi_images[ctx.xid(i, j, True)] = Psid[i, j] - delta
    phi_map = AlgebraMorphism(table, phi_images)
    psi_map = AlgebraMorphism(table, psi_images)
    proj_su, proj_an = ctx.project_su_map, ctx.project_an_map

    def phi_i(a):
        return phi_map(proj_su(a))

    def psi_j(b):
        return psi_map(proj_an(b))

    records = []
    fails = []
    N = ctx.N
    for conj in (False, True):
        for i in range(N):
            for j in range(N):
                f = ctx.y(i, j, conj)
                got = coproduct(ctx, f).contract(phi_i, psi_j)
                if got != f:
                    fails.append((table.name(ctx.xid(i, j, conj)), got - f))
    records.append(_record("factorization on generators", fails))

    f = mul(ctx.y(0, N - 1), ctx.y(N - 1, 0))
    got = coproduct(ctx, f).contract(phi_i, psi_j)
    records.append(_record("factorization on a degree-2 product", [] if got == f else [(f"y1{N}·y{N}1", got - f)]))
    one = table.one()
    got = coproduct(ctx, one).contract(phi_i, psi_j)
    records.append(_record("factorization on the unit", [] if got == one else [("1", got - one)]))

    I_gens, J_gens = _ideal_generators(ctx)
    kill_I = [(name, phi_map(g)) for name, g in I_gens if not phi_map(g).is_zero()]
    kill_J = [(name, psi_map(g)) for name, g in J_gens if not psi_map(g).is_zero()]
    records.append(_record("φ vanishes on I", kill_I))
    records.append(_record("ψ vanishes on J", kill_J))
    return records
