"""Truncated graded-commutative polynomial superalgebras over the complex numbers.

An element is a sparse map from normal-form monomials to complex coefficients.
Monomials are tuples of generator ids in ascending order; odd ids occur at most
once, even ids may repeat.  Every product is truncated at the table's total
degree bound, so the soul of any element is nilpotent.

Two coefficient modes exist.  ``"exact"`` uses :class:`GaussianRational`
(rational real and imaginary parts, compared bit-exactly).  ``"float"`` uses
Python ``complex`` with an absolute zero tolerance of ``1e-12``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import gmpy2

from .exceptions import (
    DomainError,
    IncompatibleContextError,
    MalformedInputError,
    NotInvertibleError,
    ParityError,
)

__all__ = [
    "GaussianRational",
    "Generator",
    "GeneratorTable",
    "AlgebraElement",
    "AlgebraMorphism",
    "FLOAT_TOL",
    "normalize_monomial",
    "mul",
    "star",
    "invert_even",
    "sqrt_even",
    "body",
    "soul",
    "is_star_real",
    "element_to_json",
    "element_from_json",
]

FLOAT_TOL = 1e-12

_mpq = gmpy2.mpq
_MPQ_TYPE = type(_mpq(0))


def _to_mpq(x):
    if type(x) is _MPQ_TYPE:
        return x
    if isinstance(x, Fraction):
        return _mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return _mpq(x.strip())
        except ValueError as exc:
            raise MalformedInputError(f"not a rational number: {x!r}") from exc
    if isinstance(x, bool):
        return _mpq(int(x))
    return _mpq(x)


class GaussianRational:
    """Complex number ``re + i*im`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + _to_mpq(im)
        elif isinstance(re, complex):
            re, im = re.real, re.imag + float(im)
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if type(x) is cls:
            return x
        return cls(x)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ValueError, MalformedInputError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


class _ExactField:
    name = "exact"

    def __init__(self):
        self.zero = GaussianRational(0)
        self.one = GaussianRational(1)

    def coerce(self, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction, _MPQ_TYPE, str)):
            return GaussianRational(x)
        if isinstance(x, complex):
            return GaussianRational(x.real, x.imag)
        if isinstance(x, float):
            return GaussianRational(x)
        raise MalformedInputError(f"cannot use {x!r} as an exact coefficient")

    @staticmethod
    def is_zero(c) -> bool:
        return not (c.re or c.im)

    @staticmethod
    def conj(c):
        return GaussianRational(c.re, -c.im)

    @staticmethod
    def dump(c) -> list[str]:
        return [str(c.re), str(c.im)]

    def load(self, pair) -> GaussianRational:
        re, im = _coeff_pair(pair)
        if not isinstance(re, str) or not isinstance(im, str):
            raise MalformedInputError("exact coefficients must be rational strings 'p/q'")
        return GaussianRational(re, im)

    def equal(self, a, b) -> bool:
        return a.re == b.re and a.im == b.im


class _FloatField:
    name = "float"
    tol = FLOAT_TOL

    def __init__(self):
        self.zero = 0j
        self.one = 1 + 0j

    def coerce(self, x) -> complex:
        if isinstance(x, GaussianRational):
            return complex(x)
        if isinstance(x, str):
            return complex(float(x))
        try:
            return complex(x)
        except TypeError as exc:
            raise MalformedInputError(f"cannot use {x!r} as a float coefficient") from exc

    @staticmethod
    def is_zero(c) -> bool:
        return abs(c.real) <= FLOAT_TOL and abs(c.imag) <= FLOAT_TOL

    @staticmethod
    def conj(c):
        return c.conjugate()

    @staticmethod
    def dump(c) -> list[str]:
        return [repr(float(c.real)), repr(float(c.imag))]

    def load(self, pair) -> complex:
        re, im = _coeff_pair(pair)
        try:
            return complex(float(re), float(im))
        except (TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad float coefficient {pair!r}") from exc

    @staticmethod
    def equal(a, b) -> bool:
        return abs(a.real - b.real) <= FLOAT_TOL and abs(a.imag - b.imag) <= FLOAT_TOL


def _coeff_pair(pair):
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise MalformedInputError(f"coefficient must be a [re, im] pair, got {pair!r}")
    return pair


_FIELDS = {"exact": _ExactField(), "float": _FloatField()}


@dataclass(frozen=True)
class Generator:
    """One generator declaration: id, parity (0 even / 1 odd) and star pairing."""

    id: int
    parity: int
    star_partner: int
    star_sign: int = 1
    name: str | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "parity": "odd" if self.parity else "even",
            "star_partner": self.star_partner,
            "star_sign": self.star_sign,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Generator":
        try:
            parity = {"even": 0, "odd": 1}[data["parity"]]
            return cls(int(data["id"]), parity, int(data["star_partner"]), int(data["star_sign"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad generator declaration {data!r}") from exc


class GeneratorTable:
    """Ring context: parity-labelled generators, star pairing, degree bound, coefficient mode.

    Elements compare and combine only with elements of the *same* table object.
    """

    def __init__(self, generators: Sequence[Generator], degree: int, mode: str = "exact"):
        if mode not in _FIELDS:
            raise MalformedInputError(f"unknown coefficient mode {mode!r}")
        if not isinstance(degree, int) or degree < 1:
            raise MalformedInputError("truncation degree must be a positive integer")
        gens = tuple(generators)
        ids = [g.id for g in gens]
        if ids != list(range(len(gens))):
            raise MalformedInputError("generator ids must be dense and ordered 0..G-1")
        for g in gens:
            if g.parity not in (0, 1):
                raise MalformedInputError(f"generator {g.id}: parity must be 0 or 1")
            if g.star_sign not in (1, -1):
                raise MalformedInputError(f"generator {g.id}: star sign must be +1 or -1")
            if not 0 <= g.star_partner < len(gens):
                raise MalformedInputError(f"generator {g.id}: unknown star partner")
            p = gens[g.star_partner]
            if p.star_partner != g.id:
                raise MalformedInputError(f"generator {g.id}: star pairing is not an involution")
            if p.parity != g.parity:
                raise MalformedInputError(f"generator {g.id}: star partner has different parity")
            if g.star_sign * p.star_sign != (-1) ** g.parity:
                raise MalformedInputError(
                    f"generator {g.id}: star signs do not compose to (-1)^parity"
                )
        self.generators = gens
        self.degree = degree
        self.mode = mode
        self.field = _FIELDS[mode]
        self._odd = tuple(g.parity for g in gens)
        self._mul_cache: dict = {}
        self._star_cache: dict = {}
        self._lowered: dict[int, GeneratorTable] = {}

    # -- construction helpers -------------------------------------------------

    @classmethod
    def grassmann(
        cls, odd_pairs: int = 2, even_pairs: int = 0, degree: int = 3, mode: str = "exact"
    ) -> "GeneratorTable":
        """Pool of star-paired generators ``theta_a, bar(theta_a)`` and ``e_a, bar(e_a)``.

        ``star(theta) = bar(theta)``, ``star(bar(theta)) = -theta``; even pairs use ``+1`` both ways.
        """
        gens = []
        for a in range(odd_pairs):
            k = len(gens)
            gens.append(Generator(k, 1, k + 1, 1, f"θ{a + 1}"))
            gens.append(Generator(k + 1, 1, k, -1, f"θ̄{a + 1}"))
        for a in range(even_pairs):
            k = len(gens)
            gens.append(Generator(k, 0, k + 1, 1, f"e{a + 1}"))
            gens.append(Generator(k + 1, 0, k, 1, f"ē{a + 1}"))
        return cls(gens, degree, mode)

    def with_degree(self, degree: int) -> "GeneratorTable":
        """The same generators truncated at another degree (cached per table)."""
        if degree == self.degree:
            return self
        if degree not in self._lowered:
            self._lowered[degree] = GeneratorTable(self.generators, degree, self.mode)
        return self._lowered[degree]

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"GeneratorTable({len(self.generators)} generators, degree={self.degree}, mode={self.mode!r})"

    def name(self, k: int) -> str:
        g = self.generators[k]
        return g.name or f"g{k}"

    # -- monomials -------------------------------------------------------------

    def normalize_monomial(self, factors: Iterable[int]) -> tuple[int, tuple[int, ...] | None]:
        """Sort a word of generator ids; return ``(sign, monomial)``, sign 0 if it vanishes."""
        f = list(factors)
        n = len(self.generators)
        for k in f:
            if not isinstance(k, int) or not 0 <= k < n:
                raise MalformedInputError(f"unknown generator id {k!r}")
        odd = self._odd
        inversions = 0
        for a in range(len(f)):
            if odd[f[a]]:
                for b in range(a + 1, len(f)):
                    if odd[f[b]] and f[b] < f[a]:
                        inversions += 1
        mono = tuple(sorted(f))
        for a in range(1, len(mono)):
            if mono[a] == mono[a - 1] and odd[mono[a]]:
                return 0, None
        if len(mono) > self.degree:
            return 0, None
        return (-1 if inversions & 1 else 1), mono

    def monomial_parity(self, mono: tuple[int, ...]) -> int:
        odd = self._odd
        return sum(odd[k] for k in mono) & 1

    def _mono_mul(self, a: tuple, b: tuple):
        key = (a, b)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        if len(a) + len(b) > self.degree:
            res = (0, None)
        else:
            odd = self._odd
            oa = [x for x in a if odd[x]]
            inv = 0
            for y in b:
                if odd[y]:
                    if y in oa:
                        inv = -1
                        break
                    inv += sum(1 for x in oa if x > y)
            if inv < 0:
                res = (0, None)
            else:
                res = ((-1 if inv & 1 else 1), tuple(sorted(a + b)))
        self._mul_cache[key] = res
        return res

    def _mono_star(self, mono: tuple):
        hit = self._star_cache.get(mono)
        if hit is not None:
            return hit
        gens = self.generators
        sign = 1
        word = []
        for k in mono:
            g = gens[k]
            sign *= g.star_sign
            word.append(g.star_partner)
        s, m = self.normalize_monomial(word)
        res = (sign * s, m)
        self._star_cache[mono] = res
        return res

    # -- elements --------------------------------------------------------------

    def element(self, terms: Mapping | Iterable = ()) -> "AlgebraElement":
        """Build an element from ``{word: coeff}`` (or pairs); words need not be sorted."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        field = self.field
        acc: dict = {}
        for word, c in items:
            if isinstance(word, int):
                word = (word,)
            s, m = self.normalize_monomial(word)
            if not s:
                continue
            c = field.coerce(c)
            if s < 0:
                c = -c
            acc[m] = acc[m] + c if m in acc else c
        return AlgebraElement(self, _prune(field, acc))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return self.scalar(1)

    def scalar(self, c) -> "AlgebraElement":
        c = self.field.coerce(c)
        return AlgebraElement(self, {} if self.field.is_zero(c) else {(): c})

    def gen(self, k: int) -> "AlgebraElement":
        if not 0 <= k < len(self.generators):
            raise MalformedInputError(f"unknown generator id {k!r}")
        return AlgebraElement(self, {(k,): self.field.one})

    def coerce(self, x) -> "AlgebraElement":
        if isinstance(x, AlgebraElement):
            if x.table is not self:
                raise IncompatibleContextError("element belongs to another generator table")
            return x
        return self.scalar(x)

    def to_json(self) -> list[dict]:
        return [g.to_json() for g in self.generators]

    @classmethod
    def from_json(cls, gens: Sequence[Mapping], degree: int, mode: str = "exact") -> "GeneratorTable":
        if not isinstance(gens, (list, tuple)):
            raise MalformedInputError("generators must be a list")
        return cls([Generator.from_json(g) for g in gens], degree, mode)


def _prune(field, terms: dict) -> dict:
    is_zero = field.is_zero
    return {m: c for m, c in terms.items() if not is_zero(c)}


class AlgebraElement:
    """Immutable truncated series; use the arithmetic operators or the module functions."""

    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms: dict):
        self.table = table
        self.terms = terms

    # -- inspection ------------------------------------------------------------

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements (zero counts as even), ``None`` when mixed."""
        ps = {self.table.monomial_parity(m) for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def has_parity(self, p: int) -> bool:
        mp = self.table.monomial_parity
        return all(mp(m) == p for m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def coeff(self, word=()):
        s, m = self.table.normalize_monomial(word)
        c = self.terms.get(m, self.table.field.zero) if s else self.table.field.zero
        return -c if s < 0 else c

    @property
    def body(self):
        return self.terms.get((), self.table.field.zero)

    @property
    def soul(self) -> "AlgebraElement":
        return AlgebraElement(self.table, {m: c for m, c in self.terms.items() if m})

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            if other.table is not self.table:
                raise IncompatibleContextError("operands belong to different generator tables")
            return other
        return self.table.scalar(other)

    def __add__(self, other):
        other = self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc[m] + c if m in acc else c
        return AlgebraElement(self.table, _prune(self.table.field, acc))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "AlgebraElement":
        """Multiply by a complex scalar (scalars are even and central)."""
        field = self.table.field
        c = field.coerce(c)
        if field.is_zero(c):
            return self.table.zero()
        return AlgebraElement(self.table, _prune(field, {m: c * v for m, v in self.terms.items()}))

    def __pow__(self, k: int):
        if k < 0:
            return invert_even(self) ** (-k)
        out = self.table.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            try:
                other = self.table.scalar(other)
            except MalformedInputError:
                return NotImplemented
        if other.table is not self.table:
            return False
        field = self.table.field
        if field.name == "exact":
            return self.terms == other.terms
        for m in set(self.terms) | set(other.terms):
            if not field.equal(self.terms.get(m, 0j), other.terms.get(m, 0j)):
                return False
        return True

    __hash__ = None

    # -- structure -------------------------------------------------------------

    def star(self) -> "AlgebraElement":
        return star(self)

    def truncate(self, table: GeneratorTable) -> "AlgebraElement":
        """Image in ``table`` (same generators, lower degree): drop terms above its bound."""
        if table.generators != self.table.generators or table.mode != self.table.mode:
            raise IncompatibleContextError("truncation target has different generators")
        if table.degree > self.table.degree:
            raise IncompatibleContextError("can only truncate to a lower degree")
        d = table.degree
        return AlgebraElement(table, {m: c for m, c in self.terms.items() if len(m) <= d})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            word = "·".join(self.table.name(k) for k in m)
            parts.append(f"{c!r}" if not m else f"{c!r}*{word}")
        return " + ".join(parts)


def _mul_exact(table: GeneratorTable, A: dict, B: dict) -> dict:
    D = table.degree
    mono_mul = table._mono_mul
    groups: list[list] = [[] for _ in range(D + 1)]
    for m, c in B.items():
        groups[len(m)].append((m, c.re, c.im))
    acc_re: dict = {}
    acc_im: dict = {}
    for ma, ca in A.items():
        ar, ai = ca.re, ca.im
        for d in range(D - len(ma) + 1):
            for mb, br, bi in groups[d]:
                s, mc = mono_mul(ma, mb)
                if not s:
                    continue
                re = ar * br - ai * bi
                im = ar * bi + ai * br
                if s < 0:
                    re = -re
                    im = -im
                if mc in acc_re:
                    acc_re[mc] += re
                    acc_im[mc] += im
                else:
                    acc_re[mc] = re
                    acc_im[mc] = im
    out = {}
    for m, re in acc_re.items():
        im = acc_im[m]
        if re or im:
            out[m] = GaussianRational(re, im)
    return out


def _mul_float(table: GeneratorTable, A: dict, B: dict) -> dict:
    D = table.degree
    mono_mul = table._mono_mul
    groups: list[list] = [[] for _ in range(D + 1)]
    for m, c in B.items():
        groups[len(m)].append((m, c))
    acc: dict = {}
    for ma, ca in A.items():
        for d in range(D - len(ma) + 1):
            for mb, cb in groups[d]:
                s, mc = mono_mul(ma, mb)
                if not s:
                    continue
                v = ca * cb if s > 0 else -(ca * cb)
                acc[mc] = acc[mc] + v if mc in acc else v
    return _prune(table.field, acc)


def normalize_monomial(table: GeneratorTable, factors: Iterable[int]):
    """Canonical (sign, monomial) of a word of generator ids; sign 0 when it vanishes."""
    return table.normalize_monomial(factors)


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Graded-commutative product truncated at the table degree."""
    if a.table is not b.table:
        raise IncompatibleContextError("operands belong to different generator tables")
    table = a.table
    if not a.terms or not b.terms:
        return table.zero()
    if table.mode == "exact":
        return AlgebraElement(table, _mul_exact(table, a.terms, b.terms))
    return AlgebraElement(table, _mul_float(table, a.terms, b.terms))


def star(a: AlgebraElement) -> AlgebraElement:
    """Antilinear, parity-preserving algebra morphism given on generators by the table."""
    table = a.table
    conj = table.field.conj
    out = {}
    for m, c in a.terms.items():
        s, sm = table._mono_star(m)
        if not s:
            continue
        v = conj(c)
        v = v if s > 0 else -v
        out[sm] = out[sm] + v if sm in out else v
    return AlgebraElement(table, _prune(table.field, out))


def body(a: AlgebraElement):
    return a.body


def soul(a: AlgebraElement) -> AlgebraElement:
    return a.soul


def is_star_real(a: AlgebraElement) -> bool:
    return star(a) == a


def _require_even(a: AlgebraElement, what: str):
    p = a.parity
    if p is None:
        raise ParityError(f"{what} needs an even element, got mixed parity")
    if p == 1:
        raise ParityError(f"{what} needs an even element, got an odd one")


def invert_even(a: AlgebraElement) -> AlgebraElement:
    """Inverse of an even element with invertible body, via the nilpotent geometric series."""
    _require_even(a, "invert_even")
    table = a.table
    field = table.field
    b0 = a.body
    if field.is_zero(b0):
        raise NotInvertibleError("element has zero body and is not invertible")
    inv_b0 = field.one / b0
    x = -(a.soul.scale(inv_b0))
    total = table.one()
    power = table.one()
    for _ in range(table.degree):
        power = mul(power, x)
        if power.is_zero():
            break
        total = total + power
    return total.scale(inv_b0)


def _half_binomials(k_max: int):
    out = [_mpq(1)]
    c = _mpq(1)
    half = _mpq(1, 2)
    for k in range(1, k_max + 1):
        c = c * (half - (k - 1)) / k
        out.append(c)
    return out


def sqrt_even(a: AlgebraElement) -> AlgebraElement:
    """Square root with positive real body, by the binomial series in ``soul/body``.

    Exact mode accepts only normalized elements (body exactly 1); float mode
    accepts any real positive body.
    """
    try:
        _require_even(a, "sqrt_even")
    except ParityError as exc:
        raise DomainError(str(exc)) from exc
    table = a.table
    field = table.field
    b0 = a.body
    if field.name == "exact":
        if b0 != field.one:
            raise DomainError("exact-mode square root requires body exactly 1")
        root_b0 = field.one
        inv_b0 = field.one
        coeffs = [GaussianRational(c) for c in _half_binomials(table.degree)]
    else:
        if abs(b0.imag) > FLOAT_TOL * max(1.0, abs(b0.real)) or b0.real <= FLOAT_TOL:
            raise DomainError(f"float-mode square root requires a real positive body, got {b0!r}")
        root_b0 = complex(b0.real ** 0.5)
        inv_b0 = 1.0 / complex(b0.real)
        coeffs = [complex(float(c)) for c in _half_binomials(table.degree)]
    x = a.soul.scale(inv_b0)
    total = table.one()
    power = table.one()
    for k in range(1, table.degree + 1):
        power = mul(power, x)
        if power.is_zero():
            break
        total = total + power.scale(coeffs[k])
    return total.scale(root_b0)


class AlgebraMorphism:
    """Extension of a generator assignment to a (graded, possibly antilinear) map.

    ``images`` maps source generator ids to elements of ``target``; missing ids
    map to the same generator (only allowed when source and target share a
    table).  With ``reverse=True`` the map is a graded antimorphism,
    ``f(uv) = (-1)^{|u||v|} f(v) f(u)``.  Images should carry the parity of the
    generator and, for truncation compatibility, have zero body.
    """

    def __init__(
        self,
        source: GeneratorTable,
        images: Mapping[int, AlgebraElement],
        target: GeneratorTable | None = None,
        *,
        antilinear: bool = False,
        reverse: bool = False,
    ):
        self.source = source
        self.target = target or source
        self.antilinear = antilinear
        self.reverse = reverse
        imgs = {}
        for k in range(len(source.generators)):
            if k in images:
                img = images[k]
                if img.table is not self.target:
                    raise IncompatibleContextError("morphism image lives over the wrong table")
            elif self.target is source:
                img = source.gen(k)
            else:
                raise MalformedInputError(f"no image given for generator {k}")
            imgs[k] = img
        self.images = imgs
        self._cache: dict = {(): self.target.one()}

    def monomial_image(self, mono: tuple) -> AlgebraElement:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        if self.reverse:
            # f(g1 g2 ... gk) = (-1)^{|g1| |g2...gk|} f(g2...gk) f(g1)
            rest = self.monomial_image(mono[1:])
            img = mul(rest, self.images[mono[0]])
            if self.source._odd[mono[0]] and self.source.monomial_parity(mono[1:]):
                img = -img
        else:
            img = mul(self.monomial_image(mono[:-1]), self.images[mono[-1]])
        self._cache[mono] = img
        return img

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        if a.table is not self.source:
            raise IncompatibleContextError("morphism applied to an element of another table")
        target = self.target
        conj = target.field.conj
        acc: dict = {}
        for m, c in a.terms.items():
            c = target.field.coerce(c)
            if self.antilinear:
                c = conj(c)
            img = self.monomial_image(m)
            for mm, v in img.terms.items():
                w = c * v
                acc[mm] = acc[mm] + w if mm in acc else w
        return AlgebraElement(target, _prune(target.field, acc))


# -- serialization ---------------------------------------------------------------


def element_to_json(a: AlgebraElement) -> list[dict]:
    dump = a.table.field.dump
    return [
        {"coeff": dump(a.terms[m]), "monomial": list(m)}
        for m in sorted(a.terms, key=lambda m: (len(m), m))
    ]


def element_from_json(table: GeneratorTable, data) -> AlgebraElement:
    if not isinstance(data, list):
        raise MalformedInputError("an element must be a list of terms")
    terms = []
    for t in data:
        if not isinstance(t, Mapping) or "coeff" not in t or "monomial" not in t:
            raise MalformedInputError(f"bad term {t!r}")
        mono = t["monomial"]
        if not isinstance(mono, list):
            raise MalformedInputError(f"monomial must be a list, got {mono!r}")
        terms.append((tuple(mono), table.field.load(t["coeff"])))
    return table.element(terms)


def random_element(
    table: GeneratorTable,
    rng,
    parity: int | None = None,
    n_terms: int = 3,
    min_degree: int = 0,
    coeff: Callable | None = None,
) -> AlgebraElement:
    """Random element of the given parity using monomials of degree ``>= min_degree``.

    ``rng`` is a :class:`random.Random`; coefficients default to small Gaussian rationals.
    """
    coeff = coeff or (lambda: small_gaussian_rational(rng))
    G = len(table.generators)
    terms = []
    if G == 0:
        if parity in (None, 0) and min_degree == 0:
            terms.append(((), coeff()))
        return table.element(terms)
    for _ in range(n_terms):
        for _attempt in range(20):
            d = rng.randint(min_degree, table.degree)
            word = [rng.randrange(G) for _ in range(d)]
            s, m = table.normalize_monomial(word)
            if not s:
                continue
            if parity is not None and table.monomial_parity(m) != parity:
                continue
            terms.append((m, coeff()))
            break
    return table.element(terms)


def small_gaussian_rational(rng) -> GaussianRational:
    den = rng.choice((1, 1, 2, 3))
    return GaussianRational(Fraction(rng.randint(-3, 3), den), Fraction(rng.randint(-2, 2), rng.choice((1, 2))))
