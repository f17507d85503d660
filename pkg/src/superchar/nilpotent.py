"""Strictly upper-triangular nil algebras and the algebra group G = 1 + A.

Matrices are sparse maps (i, j) -> nonzero field element over the positions
1 <= i < j <= n.  The canonical hash encoding of a matrix is the dense tuple
of field enumeration indices over positions in row-major order, which makes
orbit bookkeeping bit-exact.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .gf import FieldElement, FiniteField, space_cap


@lru_cache(maxsize=None)
def positions(n: int) -> tuple[tuple[int, int], ...]:
    """All (i, j) with 1 <= i < j <= n, row-major."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def position_rank(n: int) -> dict[tuple[int, int], int]:
    return {pos: k for k, pos in enumerate(positions(n))}


class NilMatrix:
    """A strictly upper-triangular n x n matrix over a finite field."""

    __slots__ = ("n", "field", "entries", "_key")

    def __init__(self, n: int, field: FiniteField, entries: dict):
        self.n = n
        self.field = field
        self.entries = {pos: v for pos, v in entries.items() if v}
        for (i, j) in self.entries:
            if not 1 <= i < j <= n:
                raise ValueError(f"entry position {(i, j)} not strictly upper")
        self._key = None

    @classmethod
    def zero(cls, n: int, field: FiniteField) -> "NilMatrix":
        return cls(n, field, {})

    @classmethod
    def single(cls, n, field, i, j, alpha) -> "NilMatrix":
        return cls(n, field, {(i, j): alpha})

    @classmethod
    def from_dense(cls, n, field, indices) -> "NilMatrix":
        pos = positions(n)
        assert len(indices) == len(pos)
        entries = {
            pos[k]: field.element_by_index(v) for k, v in enumerate(indices) if v
        }
        return cls(n, field, entries)

    def dense(self) -> tuple[int, ...]:
        if self._key is None:
            e = self.entries
            self._key = tuple(
                e[pos].index if pos in e else 0 for pos in positions(self.n)
            )
        return self._key

    def entry(self, i: int, j: int) -> FieldElement:
        v = self.entries.get((i, j))
        return v if v is not None else self.field.zero

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, NilMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self.field == other.field
            and self.dense() == other.dense()
        )

    def __hash__(self):
        return hash((self.n, self.field.p, self.field.m, self.dense()))

    def _check_peer(self, other):
        if self.n != other.n or self.field != other.field:
            raise ValueError("size or field mismatch")

    def __add__(self, other):
        self._check_peer(other)
        out = dict(self.entries)
        for pos, v in other.entries.items():
            cur = out.get(pos)
            out[pos] = v if cur is None else cur + v
        return NilMatrix(self.n, self.field, out)

    def __neg__(self):
        return NilMatrix(self.n, self.field, {p: -v for p, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        """Algebra product; strictly upper shape is preserved automatically."""
        self._check_peer(other)
        out: dict = {}
        for (i, j), va in self.entries.items():
            for (k, l), vb in other.entries.items():
                if k == j:
                    term = va * vb
                    cur = out.get((i, l))
                    out[(i, l)] = term if cur is None else cur + term
        return NilMatrix(self.n, self.field, out)

    def scale(self, alpha: FieldElement) -> "NilMatrix":
        return NilMatrix(
            self.n, self.field, {p: alpha * v for p, v in self.entries.items()}
        )

    def __repr__(self):
        if not self.entries:
            return f"NilMatrix({self.n}, 0)"
        return f"NilMatrix({self.n}, {format_matrix(self)!r})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": {
                f"{i},{j}": list(self.entries[(i, j)].coeffs)
                for (i, j) in sorted(self.entries)
            },
        }

    @classmethod
    def from_json(cls, obj: dict, field: FiniteField) -> "NilMatrix":
        n = int(obj["n"])
        entries = {}
        for key, coeffs in obj["entries"].items():
            i, j = (int(t) for t in key.split(","))
            entries[(i, j)] = field.element(coeffs)
        return cls(n, field, entries)


# -- matrix text format ------------------------------------------------------


def format_matrix(a: NilMatrix) -> str:
    """Comma-separated assignments; bare integers over a prime field."""
    if a.n > 9:
        raise ValueError("text format uses single-digit indices (n <= 9)")
    parts = []
    for (i, j) in sorted(a.entries):
        v = a.entries[(i, j)]
        if a.field.m == 1:
            parts.append(f"a{i}{j}={v.lift()}")
        else:
            parts.append(f"a{i}{j}=[{','.join(str(c) for c in v.coeffs)}]")
    return ",".join(parts)


def _split_assignments(text: str) -> list[str]:
    # top-level commas only; commas inside [...] separate coefficients
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_matrix(text: str, n: int, field: FiniteField) -> NilMatrix:
    if n > 9:
        raise ValueError("text format uses single-digit indices (n <= 9)")
    entries: dict = {}
    for part in _split_assignments(text):
        lhs, _, rhs = part.partition("=")
        lhs = lhs.strip()
        rhs = rhs.strip()
        if not (len(lhs) == 3 and lhs[0] == "a" and lhs[1:].isdigit() and rhs):
            raise ValueError(f"bad assignment {part!r}")
        i, j = int(lhs[1]), int(lhs[2])
        if not 1 <= i < j <= n:
            raise ValueError(f"position ({i},{j}) out of range for n={n}")
        if rhs.startswith("["):
            if not rhs.endswith("]"):
                raise ValueError(f"unterminated coefficient list in {part!r}")
            coeffs = [int(t) % field.p for t in rhs[1:-1].split(",")]
            value = field.element(coeffs)
        else:
            value = field.from_int(int(rhs))
        if (i, j) in entries:
            raise ValueError(f"duplicate entry ({i},{j})")
        entries[(i, j)] = value
    return NilMatrix(n, field, entries)


# -- the algebra group -------------------------------------------------------


class GroupElement:
    """The formal 1 + body for a strictly upper-triangular body."""

    __slots__ = ("body",)

    def __init__(self, body: NilMatrix):
        self.body = body

    @classmethod
    def identity(cls, n: int, field: FiniteField) -> "GroupElement":
        return cls(NilMatrix.zero(n, field))

    def __mul__(self, other):
        return group_mul(self, other)

    def inv(self) -> "GroupElement":
        return group_inv(self)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.body == other.body

    def __hash__(self):
        return hash(("1+", self.body.dense()))

    def __repr__(self):
        return f"1 + {self.body!r}"


def group_mul(x: GroupElement, y: GroupElement) -> GroupElement:
    a, b = x.body, y.body
    return GroupElement(a + b + (a @ b))


def group_inv(x: GroupElement) -> GroupElement:
    # -a + a^2 - a^3 + ...; terminates since a^n = 0
    a = x.body
    acc = -a
    power = a
    sign = 1
    while True:
        power = power @ a
        if power.is_zero():
            return GroupElement(acc)
        acc = acc + power if sign > 0 else acc - power
        sign = -sign


def elementary_generators(n: int, field: FiniteField) -> list[GroupElement]:
    """All 1 + alpha*e_ij in (i, j, enumeration-index) order."""
    gens = []
    for (i, j) in positions(n):
        for alpha in field.nonzero():
            gens.append(GroupElement(NilMatrix.single(n, field, i, j, alpha)))
    return gens


def enumerate_algebra(n: int, field: FiniteField):
    """All of A = u_n in dense-tuple lexicographic order (zero first)."""
    count = len(positions(n))
    if field.order**count > space_cap():
        raise ValueError(
            f"|A| = {field.order}^{count} exceeds the space cap {space_cap()}"
        )
    for indices in itertools.product(range(field.order), repeat=count):
        yield NilMatrix.from_dense(n, field, indices)


class PatternAlgebra:
    """A subalgebra of u_n spanned by e_ij over a multiplicatively closed
    position set.  Closure is checked exhaustively at construction."""

    def __init__(self, n: int, field: FiniteField, pattern):
        pattern = frozenset(pattern)
        for (i, j) in pattern:
            if not 1 <= i < j <= n:
                raise ValueError(f"pattern position {(i, j)} not strictly upper")
        for (i, j) in pattern:
            for (k, l) in pattern:
                if k == j and (i, l) not in pattern:
                    raise ValueError(
                        f"pattern not closed: ({i},{j})*({j},{l}) leaves it"
                    )
        self.n = n
        self.field = field
        self.pattern = pattern

    def contains(self, a: NilMatrix) -> bool:
        return set(a.entries) <= self.pattern

    def generators(self) -> list[GroupElement]:
        gens = []
        for (i, j) in sorted(self.pattern):
            for alpha in self.field.nonzero():
                gens.append(
                    GroupElement(NilMatrix.single(self.n, self.field, i, j, alpha))
                )
        return gens

    def elements(self):
        """All matrices supported on the pattern, deterministic order."""
        pats = sorted(self.pattern)
        if self.field.order ** len(pats) > space_cap():
            raise ValueError("pattern space exceeds the space cap")
        for combo in itertools.product(self.field.elements, repeat=len(pats)):
            yield NilMatrix(self.n, self.field, dict(zip(pats, combo)))
