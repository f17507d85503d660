"""The dual group A° through the trace pairing, and its two-sided orbits.

A character of the additive group of A is tau(Tr(b^T a)) for a unique
pairing matrix b, where tau is the standardized base character
tau(x) = zeta_p^lift(Tr(x)).  In pairing coordinates the contragredient
action of (g, h) transports b to the strictly upper part of
(g^{-1})^T b h^T; for elementary g, h this is a single row or column move,
which is what the orbit BFS applies.
"""

from __future__ import annotations

from .cyclotomic import Cyclotomic, cyclo_root
from .gf import FieldElement, FiniteField, space_cap, trace_lift
from .nilpotent import GroupElement, NilMatrix, group_inv, positions
from .orbits import _add_into, _to_state
from .partitions import (
    ColouredPartition,
    build_e,
    enumerate_labels,
    partition_from_arcs,
)


def base_character(field: FiniteField, x: FieldElement) -> Cyclotomic:
    """tau(x) = zeta_p^lift(Tr(x)), the fixed nontrivial character of the field."""
    if x.field != field:
        raise ValueError("element not in the field")
    return cyclo_root(field.p, trace_lift(x))


def pairing_exponent(b: NilMatrix, a: NilMatrix) -> int:
    """lift(Tr(sum b_ij * a_ij)), the zeta exponent of the pairing character."""
    if b.n != a.n or b.field != a.field:
        raise ValueError("shape or field mismatch")
    t = 0
    be = b.entries
    for pos, va in a.entries.items():
        vb = be.get(pos)
        if vb is not None:
            t += trace_lift(vb * va)
    return t % b.field.p


def dual_eval(b: NilMatrix, a: NilMatrix) -> Cyclotomic:
    """The character value theta_b(a) = tau(Tr(b^T a))."""
    return cyclo_root(b.field.p, pairing_exponent(b, a))


def _mul_dicts(x: dict, y: dict) -> dict:
    out: dict = {}
    for (i, j), u in x.items():
        for (k, l), v in y.items():
            if k == j:
                _add_into(out, (i, l), u * v)
    return out


def dual_act(g: GroupElement, h: GroupElement, b: NilMatrix) -> NilMatrix:
    """Transport of the pairing matrix: strict upper part of (g^-1)^T b h^T."""
    if g.body.n != b.n or g.body.field != b.field:
        raise ValueError("shape or field mismatch")
    ct = {(j, i): v for (i, j), v in group_inv(g).body.entries.items()}
    dt = {(j, i): v for (i, j), v in h.body.entries.items()}
    total = dict(b.entries)
    for pos, v in _mul_dicts(ct, b.entries).items():
        _add_into(total, pos, v)
    for pos, v in _mul_dicts(total, dt).items():
        _add_into(total, pos, v)
    upper = {(i, j): v for (i, j), v in total.items() if i < j}
    return NilMatrix(b.n, b.field, upper)


def _dual_expand(n: int, field: FiniteField, b: dict) -> list[dict]:
    """Images of the pairing dict under one elementary move on either side.

    Left by 1+alpha*e_ij: row j gains -alpha times row i, kept right of j.
    Right by 1+alpha*e_ij: column i gains alpha times column j, kept above i.
    """
    rows: dict = {}
    cols: dict = {}
    for (r, s), v in b.items():
        rows.setdefault(r, []).append((s, v))
        cols.setdefault(s, []).append((r, v))
    out = []
    nonzero = field.nonzero()
    for (i, j) in positions(n):
        row_i = rows.get(i)
        if row_i and any(s > j for s, _ in row_i):
            for alpha in nonzero:
                c = dict(b)
                for s, v in row_i:
                    if s > j:
                        _add_into(c, (j, s), -(alpha * v))
                out.append(c)
        col_j = cols.get(j)
        if col_j and any(r < i for r, _ in col_j):
            for alpha in nonzero:
                c = dict(b)
                for r, v in col_j:
                    if r < i:
                        _add_into(c, (r, i), alpha * v)
                out.append(c)
    return out


def _dual_orbit_states(
    n: int, field: FiniteField, start: dict, validate: bool = False
) -> set:
    if field.order ** len(positions(n)) > space_cap():
        raise ValueError(
            f"|A| = {field.order}^{len(positions(n))} exceeds the space cap"
        )
    visited = {_to_state(n, start)}
    frontier = [start]
    while frontier:
        new = []
        for b in frontier:
            if validate:
                _validate_moves(n, field, b)
            for c in _dual_expand(n, field, b):
                key = _to_state(n, c)
                if key not in visited:
                    visited.add(key)
                    new.append(c)
        frontier = new
    return visited


def _validate_moves(n: int, field: FiniteField, bdict: dict) -> None:
    """Check one BFS state: the fast one-step images must equal the images
    under the generic transport action, and the transport itself must obey
    the defining property on a basis of A."""
    b = NilMatrix(n, field, bdict)
    one = GroupElement.identity(n, field)
    basis = [NilMatrix.single(n, field, i, j, field.one) for (i, j) in positions(n)]
    here = _to_state(n, bdict)
    fast = {_to_state(n, c) for c in _dual_expand(n, field, bdict)} | {here}
    slow = {here}
    for (i, j) in positions(n):
        for alpha in field.nonzero():
            g = GroupElement(NilMatrix.single(n, field, i, j, alpha))
            gi = group_inv(g)
            for left in (True, False):
                moved = dual_act(g, one, b) if left else dual_act(one, g, b)
                slow.add(_to_state(n, moved.entries))
                for e in basis:
                    twisted = (
                        (gi.body @ e) + e if left else (e @ g.body) + e
                    )  # g^-1*e or e*g, the identity summand dropped
                    if dual_eval(moved, e) != dual_eval(b, twisted):
                        raise AssertionError(
                            f"dual move ({i},{j}) alpha={alpha} violates the "
                            "defining property"
                        )
    if fast != slow:
        raise AssertionError("fast dual moves disagree with the transport action")


def dual_orbit(b: NilMatrix, validate: bool = False) -> set[NilMatrix]:
    """The orbit of theta_b under the contragredient two-sided action."""
    states = _dual_orbit_states(b.n, b.field, dict(b.entries), validate=validate)
    return {NilMatrix.from_dense(b.n, b.field, s) for s in states}


def _verge_arcs(entries: dict) -> frozenset | None:
    rows, cols = set(), set()
    for (i, j) in entries:
        if i in rows or j in cols:
            return None
        rows.add(i)
        cols.add(j)
    return frozenset(entries)


def dual_canonical(b: NilMatrix) -> ColouredPartition:
    """The unique (pi, tau) label of the orbit of theta_b.

    Found by scanning the orbit for its verge member; exactly one must
    exist, and a second one is an internal error surfaced loudly.
    """
    states = _dual_orbit_states(b.n, b.field, dict(b.entries))
    found = None
    for state in sorted(states):
        m = NilMatrix.from_dense(b.n, b.field, state)
        if _verge_arcs(m.entries) is not None:
            assert found is None, "dual orbit holds two verge matrices"
            found = m
    assert found is not None, "dual orbit holds no verge matrix"
    return ColouredPartition(
        partition_from_arcs(b.n, frozenset(found.entries)), found.entries, dual=True
    )


class DualOrbit:
    __slots__ = ("label", "rep", "size", "members")

    def __init__(self, label: ColouredPartition, rep: NilMatrix, size: int, members):
        self.label = label
        self.rep = rep
        self.size = size
        self.members = members  # sorted tuple of dense states

    def member_matrices(self):
        for state in self.members:
            yield NilMatrix.from_dense(self.rep.n, self.rep.field, state)

    def __repr__(self):
        return f"DualOrbit({self.label!r}, size={self.size})"


def enumerate_dual_orbits(
    n: int, field: FiniteField, validate: bool = False
) -> list[DualOrbit]:
    """One orbit per dual coloured partition, canonical order, cover-checked."""
    out = []
    seen: set = set()
    for label in enumerate_labels(n, field, dual=True):
        rep = build_e(label, field)
        states = _dual_orbit_states(n, field, dict(rep.entries), validate=validate)
        if seen & states:
            raise AssertionError(f"dual orbit of {label!r} overlaps an earlier one")
        seen |= states
        out.append(DualOrbit(label, rep, len(states), tuple(sorted(states))))
    total = field.order ** len(positions(n))
    if len(seen) != total:
        raise AssertionError(
            f"dual orbits cover {len(seen)} of {total} characters"
        )
    return out
