"""Superclasses: two-sided orbits GaG in A, their BFS enumeration, and the
reduction of any matrix to its canonical coloured-set-partition label.

Orbit states are kept as sparse entry dicts and hashed by the dense index
tuple.  A left multiplication by 1 + alpha*e_ij adds alpha times row j to
row i; a right multiplication adds alpha times column i to column j.  Both
moves stay strictly upper, so no projection is ever needed.
"""

from __future__ import annotations

from .gf import FiniteField, space_cap
from .nilpotent import NilMatrix, positions
from .partitions import (
    ColouredPartition,
    build_e,
    enumerate_labels,
    partition_from_arcs,
)


def _to_state(n: int, entries: dict) -> tuple[int, ...]:
    return tuple(
        entries[p].index if p in entries else 0 for p in positions(n)
    )


def _add_into(b: dict, key, term) -> None:
    cur = b.get(key)
    if cur is None:
        b[key] = term
        return
    s = cur + term
    if s:
        b[key] = s
    else:
        del b[key]


def _expand(n: int, field: FiniteField, a: dict) -> list[dict]:
    """All images of the entry dict a under one elementary move, either side."""
    rows: dict = {}
    cols: dict = {}
    for (r, s), v in a.items():
        rows.setdefault(r, []).append((s, v))
        cols.setdefault(s, []).append((r, v))
    out = []
    nonzero = field.nonzero()
    for (i, j) in positions(n):
        row_j = rows.get(j)
        if row_j:
            for alpha in nonzero:
                b = dict(a)
                for s, v in row_j:
                    _add_into(b, (i, s), alpha * v)
                out.append(b)
        col_i = cols.get(i)
        if col_i:
            for alpha in nonzero:
                b = dict(a)
                for r, v in col_i:
                    _add_into(b, (r, j), alpha * v)
                out.append(b)
    return out


def _orbit_states(n: int, field: FiniteField, start: dict) -> set:
    if field.order ** len(positions(n)) > space_cap():
        raise ValueError(
            f"|A| = {field.order}^{len(positions(n))} exceeds the space cap"
        )
    visited = {_to_state(n, start)}
    frontier = [start]
    while frontier:
        new = []
        for a in frontier:
            for b in _expand(n, field, a):
                key = _to_state(n, b)
                if key not in visited:
                    visited.add(key)
                    new.append(b)
        frontier = new
    return visited


def superclass_orbit(a: NilMatrix) -> set[NilMatrix]:
    """The full two-sided orbit GaG."""
    states = _orbit_states(a.n, a.field, dict(a.entries))
    return {NilMatrix.from_dense(a.n, a.field, s) for s in states}


def _verge_arcs(entries: dict) -> frozenset | None:
    """Arc set of a verge matrix, or None if a row or column repeats."""
    rows, cols = set(), set()
    for (i, j) in entries:
        if i in rows or j in cols:
            return None
        rows.add(i)
        cols.add(j)
    return frozenset(entries)


def canonical_form(a: NilMatrix) -> ColouredPartition:
    """The unique coloured partition labelling the superclass of a.

    Bottom-up elimination: rows n-1 down to 1; the leftmost entry in an
    unused column is the pivot; the column above it is cleared by left
    multiplications before the row to its right is cleared by right
    multiplications (in that order, so the column operations touch only
    the pivot row).  Every operation is an orbit move, so membership is
    structural; only the verge shape of the result is re-checked, with a
    BFS fallback that cannot fire unless the elimination logic rots.
    """
    n, field = a.n, a.field
    w = dict(a.entries)
    used_cols: set[int] = set()
    for i in range(n - 1, 0, -1):
        pivot_j = None
        for j in range(i + 1, n + 1):
            if (i, j) in w and j not in used_cols:
                pivot_j = j
                break
        if pivot_j is None:
            continue
        pivot = w[(i, pivot_j)]
        for k in range(1, i):
            v = w.get((k, pivot_j))
            if v is not None:
                lam = -v / pivot
                for (r, s), u in [it for it in w.items() if it[0][0] == i]:
                    _add_into(w, (k, s), lam * u)
        for l in range(pivot_j + 1, n + 1):
            v = w.get((i, l))
            if v is not None:
                lam = -v / pivot
                for (r, s), u in [it for it in w.items() if it[0][1] == pivot_j]:
                    _add_into(w, (r, l), lam * u)
        used_cols.add(pivot_j)
    arcs = _verge_arcs(w)
    if arcs is None:
        w = _verge_fallback(a)
        arcs = _verge_arcs(w)
        assert arcs is not None
    return ColouredPartition(partition_from_arcs(n, arcs), w)


def _verge_fallback(a: NilMatrix) -> dict:
    found = None
    for state in sorted(_orbit_states(a.n, a.field, dict(a.entries))):
        entries = dict(NilMatrix.from_dense(a.n, a.field, state).entries)
        if _verge_arcs(entries) is not None:
            assert found is None, "orbit holds two verge matrices"
            found = entries
    assert found is not None, "orbit holds no verge matrix"
    return found


class Superclass:
    __slots__ = ("label", "rep", "size", "members")

    def __init__(self, label: ColouredPartition, rep: NilMatrix, size: int, members):
        self.label = label
        self.rep = rep
        self.size = size
        self.members = members  # sorted tuple of dense states, or None

    def member_matrices(self):
        for state in self.members:
            yield NilMatrix.from_dense(self.rep.n, self.rep.field, state)

    def __repr__(self):
        return f"Superclass({self.label!r}, size={self.size})"


def enumerate_superclasses(n: int, field: FiniteField) -> list[Superclass]:
    """One superclass per coloured partition, canonical order, cover-checked."""
    out = []
    seen: set = set()
    for label in enumerate_labels(n, field):
        rep = build_e(label, field)
        states = _orbit_states(n, field, dict(rep.entries))
        if seen & states:
            raise AssertionError(f"superclass of {label!r} overlaps an earlier one")
        seen |= states
        out.append(Superclass(label, rep, len(states), tuple(sorted(states))))
    total = field.order ** len(positions(n))
    if len(seen) != total:
        raise AssertionError(
            f"superclasses cover {len(seen)} of {total} algebra elements"
        )
    return out
