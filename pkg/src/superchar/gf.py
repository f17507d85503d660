"""Exact arithmetic in GF(p^m).

Every field is built deterministically: the modulus is the lexicographically
smallest monic irreducible polynomial of degree m over GF(p), coefficients
compared from the constant term up.  Elements are coefficient vectors over
GF(p) in the power basis of the residue class of x; the element with
enumeration index k has the base-p digits of k as coefficients, constant
term first.  Subfield embeddings send the generator to the
enumeration-smallest root of the subfield modulus and are fixed once per
(subfield, superfield) pair, never composed through intermediate fields.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache

_FIELD_CAP = 1 << 16
_SPACE_CAP = 1 << 20
_TABLE_LIMIT = 256  # full operation tables are precomputed up to this order


def field_cap() -> int:
    """Largest admissible field order.  SUPERCHAR_CAP can only raise it."""
    raw = os.environ.get("SUPERCHAR_CAP")
    return _FIELD_CAP if raw is None else max(_FIELD_CAP, int(raw))


def space_cap() -> int:
    """Largest space (algebra, orbit union) that may be enumerated exhaustively."""
    raw = os.environ.get("SUPERCHAR_CAP")
    return _SPACE_CAP if raw is None else max(_SPACE_CAP, int(raw))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomials over GF(p), as tuples of ints, constant term first --------


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, b, p):
    # b must be nonzero; leading coefficient inverted mod p
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    inv_lead = pow(lead, p - 2, p)
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - db
        factor = (a[-1] * inv_lead) % p
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = tail + (1,)
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def _smallest_irreducible(p, m):
    for tail in itertools.product(range(p), repeat=m):
        poly = tail + (1,)
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible of degree {m} over GF({p})")


# -- field and element types ------------------------------------------------


class FieldElement:
    """An element of GF(p^m): an immutable coefficient vector plus its index."""

    __slots__ = ("field", "coeffs", "index")

    def __init__(self, field: "FiniteField", coeffs: tuple[int, ...], index: int):
        self.field = field
        self.coeffs = coeffs
        self.index = index

    def __bool__(self):
        return self.index != 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (
            self.index == other.index
            and self.field.p == other.field.p
            and self.field.m == other.field.m
        )

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.index))

    def __repr__(self):
        return f"GF({self.field.order})[{self.index}]"

    def __add__(self, other):
        f = self.field
        if other.field is not f and other.field != f:
            raise ValueError("mixed fields")
        if f._add is not None:
            return f._elts[f._add[self.index][other.index]]
        coeffs = tuple((a + b) % f.p for a, b in zip(self.coeffs, other.coeffs))
        return f._element(coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.field
        if f._neg is not None:
            return f._elts[f._neg[self.index]]
        coeffs = tuple((-a) % f.p for a in self.coeffs)
        return f._element(coeffs)

    def __mul__(self, other):
        f = self.field
        if other.field is not f and other.field != f:
            raise ValueError("mixed fields")
        if f._mul is not None:
            return f._elts[f._mul[self.index][other.index]]
        prod = _poly_mul(self.coeffs, other.coeffs, f.p)
        red = _poly_mod(prod, f.modulus, f.p)
        return f._element(red + (0,) * (f.m - len(red)))

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        if self.index == 0:
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if f._inv is not None:
            return f._elts[f._inv[self.index]]
        return self ** (f.order - 2)

    def __pow__(self, e: int) -> "FieldElement":
        f = self.field
        if self.index == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return f.one if e == 0 else self
        e %= f.order - 1
        result = f.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def lift(self) -> int:
        """Integer lift, defined for prime-field elements only."""
        if self.field.m != 1:
            raise ValueError("lift applies to prime-field elements")
        return self.coeffs[0]

    def to_json(self) -> list[int]:
        return list(self.coeffs)


class FiniteField:
    """GF(p^m) with the deterministic modulus; compare fields by (p, m)."""

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1:
            raise ValueError("degree must be >= 1")
        order = p**m
        if order > field_cap():
            raise ValueError(
                f"field order {order} exceeds the enumeration cap {field_cap()}"
                " (raise SUPERCHAR_CAP to allow it)"
            )
        self.p = p
        self.m = m
        self.order = order
        self.modulus = _smallest_irreducible(p, m)
        self._elts: list[FieldElement] | None = None
        self._add = self._mul = self._neg = self._inv = None
        self._trace_lift: dict[int, int] = {}
        if order <= _TABLE_LIMIT:
            self._build_tables()

    # elements

    def _coeffs_of_index(self, k: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(k % self.p)
            k //= self.p
        return tuple(out)

    def _element(self, coeffs: tuple[int, ...]) -> FieldElement:
        index = 0
        for c in reversed(coeffs):
            index = index * self.p + c
        if self._elts is not None:
            return self._elts[index]
        return FieldElement(self, coeffs, index)

    def element(self, coeffs) -> FieldElement:
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) > self.m:
            raise ValueError(f"too many coefficients for degree {self.m}")
        if any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.p})")
        return self._element(coeffs + (0,) * (self.m - len(coeffs)))

    def element_by_index(self, k: int) -> FieldElement:
        if not 0 <= k < self.order:
            raise ValueError(f"index {k} out of range for GF({self.order})")
        if self._elts is not None:
            return self._elts[k]
        return FieldElement(self, self._coeffs_of_index(k), k)

    def from_int(self, c: int) -> FieldElement:
        return self.element((c % self.p,))

    @property
    def zero(self) -> FieldElement:
        return self.element_by_index(0)

    @property
    def one(self) -> FieldElement:
        return self.element_by_index(1)

    @property
    def gen(self) -> FieldElement:
        """The residue class of x (zero when m == 1, where the modulus is x)."""
        return self.element_by_index(self.p % self.order)

    @property
    def elements(self) -> list[FieldElement]:
        if self._elts is None:
            self._elts = [
                FieldElement(self, self._coeffs_of_index(k), k)
                for k in range(self.order)
            ]
        return self._elts

    def _build_tables(self):
        elts = self.elements
        p, n = self.p, self.order
        add = []
        for a in elts:
            row = []
            ca = a.coeffs
            for b in elts:
                coeffs = tuple((x + y) % p for x, y in zip(ca, b.coeffs))
                idx = 0
                for c in reversed(coeffs):
                    idx = idx * p + c
                row.append(idx)
            add.append(row)
        mul = []
        for a in elts:
            row = []
            for b in elts:
                prod = _poly_mul(a.coeffs, b.coeffs, p)
                red = _poly_mod(prod, self.modulus, p)
                idx = 0
                for c in reversed(red + (0,) * (self.m - len(red))):
                    idx = idx * p + c
                row.append(idx)
            mul.append(row)
        neg = [0] * n
        for a in elts:
            coeffs = tuple((-c) % p for c in a.coeffs)
            idx = 0
            for c in reversed(coeffs):
                idx = idx * p + c
            neg[a.index] = idx
        inv = [0] * n
        for i in range(1, n):
            for j in range(1, n):
                if mul[i][j] == 1:
                    inv[i] = j
                    break
        self._add, self._mul, self._neg, self._inv = add, mul, neg, inv

    def nonzero(self) -> list[FieldElement]:
        return self.elements[1:]

    # serialization

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteField":
        f = field_construct(int(obj["p"]), int(obj["m"]))
        if "modulus" in obj and tuple(obj["modulus"]) != f.modulus:
            raise ValueError("modulus does not match the deterministic construction")
        return f

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.m == other.m
        )

    def __hash__(self):
        return hash((self.p, self.m))

    def __repr__(self):
        return f"GF({self.order})"


@lru_cache(maxsize=None)
def field_construct(p: int, m: int) -> FiniteField:
    return FiniteField(p, m)


def field_enumerate(field: FiniteField) -> list[FieldElement]:
    """All elements, zero first, in index order."""
    return list(field.elements)


# -- embeddings and traces ---------------------------------------------------


class Embedding:
    """The fixed embedding GF(p^m) -> GF(p^M) for m | M."""

    __slots__ = ("sub", "sup", "root", "_images", "_preimages")

    def __init__(self, sub: FiniteField, sup: FiniteField):
        self.sub = sub
        self.sup = sup
        self.root = self._find_root()
        self._images: dict[int, FieldElement] = {}
        self._preimages: dict[int, FieldElement] | None = None

    def _find_root(self) -> FieldElement:
        mod = self.sub.modulus
        consts = [self.sup.from_int(c) for c in mod]
        for r in self.sup.elements:
            acc = self.sup.zero
            for c in reversed(consts):
                acc = acc * r + c
            if not acc:
                return r
        raise AssertionError("subfield modulus has no root in the superfield")

    def __call__(self, x: FieldElement) -> FieldElement:
        cached = self._images.get(x.index)
        if cached is not None:
            return cached
        acc = self.sup.zero
        for c in reversed(x.coeffs):
            acc = acc * self.root + self.sup.from_int(c)
        self._images[x.index] = acc
        return acc

    def preimage(self, y: FieldElement) -> FieldElement:
        if self._preimages is None:
            self._preimages = {self(x).index: x for x in self.sub.elements}
        try:
            return self._preimages[y.index]
        except KeyError:
            raise ValueError("element lies outside the embedded subfield") from None


@lru_cache(maxsize=None)
def field_embed(sub: FiniteField, sup: FiniteField) -> Embedding:
    """The fixed (cached) embedding map GF(p^m) -> GF(p^M), m | M."""
    if sub.p != sup.p:
        raise ValueError("characteristics differ")
    if sup.m % sub.m != 0:
        raise ValueError(f"GF({sub.order}) does not embed in GF({sup.order})")
    return Embedding(sub, sup)


def embed_into(x: FieldElement, target: FiniteField) -> FieldElement:
    """Image of x under the fixed embedding into target."""
    if x.field == target:
        return x
    return field_embed(x.field, target)(x)


def field_trace(x: FieldElement, target_degree: int = 1) -> FieldElement:
    """Relative trace down to GF(p^target_degree), in subfield coordinates."""
    field = x.field
    if field.m % target_degree != 0:
        raise ValueError(f"{target_degree} does not divide {field.m}")
    sub = field_construct(field.p, target_degree)
    if target_degree == field.m:
        return x
    q = field.p**target_degree
    acc = x
    y = x
    for _ in range(field.m // target_degree - 1):
        y = y**q
        acc = acc + y
    if target_degree == 1:
        # absolute trace lands in the prime subfield: a constant vector
        assert not any(acc.coeffs[1:]), "trace left the prime subfield"
        return sub.element_by_index(acc.coeffs[0])
    return field_embed(sub, field).preimage(acc)


def trace_lift(x: FieldElement) -> int:
    """Integer lift of the absolute trace; cached per field."""
    cache = x.field._trace_lift
    t = cache.get(x.index)
    if t is None:
        t = field_trace(x, 1).lift()
        cache[x.index] = t
    return t
