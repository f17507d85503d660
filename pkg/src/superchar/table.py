"""Supercharacter tables by two independent routes, and their verification.

Route one averages the pairing character over a materialized dual orbit.
Route two is the closed formula on coloured-set-partition labels: zero
unless every arc of the row label survives the column label's shadow, and
otherwise a root of unity damped by q^-nesting.  The two routes share no
code beyond field arithmetic, which is the point: build_table computes by
the closed formula and cross-validates against the average.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import Cyclotomic, cyclo_root
from .dual import DualOrbit, enumerate_dual_orbits
from .gf import FiniteField, trace_lift
from .nilpotent import GroupElement, NilMatrix, group_inv, position_rank, positions
from .orbits import Superclass, canonical_form, enumerate_superclasses
from .partitions import ColouredPartition, compute_SR, count_labels, format_coloured, nest

_FULL_VALIDATION_LIMIT = 1 << 12
_SPOT_CHECKS = 64


class RouteDisagreement(AssertionError):
    """The closed formula and the orbit average disagree on one table cell."""

    def __init__(self, row_label, col_label, closed, brute):
        self.row_label = row_label
        self.col_label = col_label
        self.closed = closed
        self.brute = brute
        super().__init__(
            f"routes disagree at row {format_coloured(row_label)!r}, "
            f"column {format_coloured(col_label)!r}: "
            f"closed {closed.basis_str()} vs average {brute.basis_str()}"
        )


@lru_cache(maxsize=None)
def _trace_lift_list(field: FiniteField) -> list[int]:
    return [trace_lift(x) for x in field.elements]


def _hist_to_cyclo(p: int, hist: list[int], denom: int) -> Cyclotomic:
    coeffs = [Fraction(h, denom) for h in hist[: p - 1]]
    top = hist[p - 1]
    if top:
        coeffs = [c - Fraction(top, denom) for c in coeffs]
    return Cyclotomic(p, tuple(coeffs))


def _pairing_hist(members, a: NilMatrix) -> list[int]:
    """Histogram of zeta exponents of <b, a> over the member states."""
    field = a.field
    p = field.p
    rank = position_rank(a.n)
    compiled = [(rank[pos], v.index) for pos, v in a.entries.items()]
    trl = _trace_lift_list(field)
    hist = [0] * p
    mul = field._mul
    if mul is not None:
        for state in members:
            t = 0
            for k, aidx in compiled:
                bidx = state[k]
                if bidx:
                    t += trl[mul[bidx][aidx]]
            hist[t % p] += 1
    else:
        elts = field.elements
        for state in members:
            t = 0
            for k, aidx in compiled:
                bidx = state[k]
                if bidx:
                    t += trl[(elts[bidx] * elts[aidx]).index]
            hist[t % p] += 1
    return hist


def sch_bruteforce(orbit: DualOrbit, g: GroupElement) -> Cyclotomic:
    """The averaging formula: mean of theta_b(g - 1) over the orbit."""
    a = g.body
    hist = _pairing_hist(orbit.members, a)
    return _hist_to_cyclo(a.field.p, hist, orbit.size)


def sch_closed(
    row: ColouredPartition, col: ColouredPartition, field: FiniteField
) -> Cyclotomic:
    """The closed formula on labels; never touches any orbit."""
    p = field.p
    pi, pip = row.partition, col.partition
    if pi.n != pip.n:
        raise ValueError("label sizes differ")
    _, reach = compute_SR(pip)
    if not (pi.arcs() <= reach):
        return Cyclotomic.zero(p)
    t = 0
    for arc in pi.arcs() & pip.arcs():
        t += trace_lift(row.colours[arc] * col.colours[arc])
    value = cyclo_root(p, t % p)
    depth = nest(pi, pip)
    if depth:
        value = value.scale(Fraction(1, field.order**depth))
    return value


class SupercharTable:
    """Rows are dual orbits, columns are superclasses, both in canonical
    label order; values are exact cyclotomics normalized to xi(1) = 1."""

    def __init__(self, n, field, dual_orbits, superclasses, values):
        self.n = n
        self.field = field
        self.dual_orbits = dual_orbits
        self.superclasses = superclasses
        self.values = values
        self.order = field.order ** len(positions(n))

    @property
    def size(self) -> int:
        return len(self.dual_orbits)

    def row_labels(self):
        return [o.label for o in self.dual_orbits]

    def col_labels(self):
        return [k.label for k in self.superclasses]

    def weight(self, i: int) -> Fraction:
        return Fraction(self.dual_orbits[i].size, self.order)

    def __eq__(self, other):
        if not isinstance(other, SupercharTable):
            return NotImplemented
        return (
            self.n == other.n
            and self.field == other.field
            and self.row_labels() == other.row_labels()
            and self.col_labels() == other.col_labels()
            and [o.size for o in self.dual_orbits]
            == [o.size for o in other.dual_orbits]
            and [k.size for k in self.superclasses]
            == [k.size for k in other.superclasses]
            and self.values == other.values
        )


def build_table(n: int, field: FiniteField, validate: str | None = None) -> SupercharTable:
    """The full table by the closed formula, cross-checked against the
    orbit average ('full' on every cell, 'spot' on 64 seeded cells, 'off').
    The default picks full when |A| <= 2^12 and spot above."""
    dual_orbits = enumerate_dual_orbits(n, field)
    superclasses = enumerate_superclasses(n, field)
    values = [
        [sch_closed(o.label, k.label, field) for k in superclasses]
        for o in dual_orbits
    ]
    table = SupercharTable(n, field, dual_orbits, superclasses, values)
    if validate is None:
        validate = "full" if table.order <= _FULL_VALIDATION_LIMIT else "spot"
    if validate == "full":
        pairs = [
            (i, j) for i in range(table.size) for j in range(table.size)
        ]
    elif validate == "spot":
        rng = random.Random(20240 + n * 1000 + field.order)
        pairs = [
            (rng.randrange(table.size), rng.randrange(table.size))
            for _ in range(_SPOT_CHECKS)
        ]
    elif validate == "off":
        pairs = []
    else:
        raise ValueError(f"unknown validation mode {validate!r}")
    for i, j in pairs:
        brute = sch_bruteforce(dual_orbits[i], GroupElement(superclasses[j].rep))
        if brute != values[i][j]:
            raise RouteDisagreement(
                dual_orbits[i].label, superclasses[j].label, values[i][j], brute
            )
    return table


def inner_product(table: SupercharTable, i: int, j: int) -> Cyclotomic:
    """<xi_i, xi_j> = (1/|G|) sum over classes of |K| xi_i(K) conj(xi_j(K))."""
    p = table.field.p
    acc = Cyclotomic.zero(p)
    for k, cls in enumerate(table.superclasses):
        term = table.values[i][k] * table.values[j][k].conjugate()
        acc = acc + term.scale(cls.size)
    return acc.scale(Fraction(1, table.order))


def plancherel(table: SupercharTable) -> dict:
    """The regular-character decomposition: weights |O|/|A| against each
    supercharacter must reproduce the delta at the identity, exactly."""
    p = table.field.p
    weights = [table.weight(i) for i in range(table.size)]
    failures = []
    for j, cls in enumerate(table.superclasses):
        acc = Cyclotomic.zero(p)
        for i in range(table.size):
            acc = acc + table.values[i][j].scale(weights[i])
        expected = (
            Cyclotomic.one(p) if cls.rep.is_zero() else Cyclotomic.zero(p)
        )
        if acc != expected:
            failures.append(format_coloured(cls.label))
    return {
        "weights": [
            (format_coloured(o.label), weights[i])
            for i, o in enumerate(table.dual_orbits)
        ],
        "identity_holds": not failures,
        "failures": failures,
    }


def _inverse_column(table: SupercharTable, j: int) -> int:
    """Index of the superclass holding the group inverses of column j."""
    inv_body = group_inv(GroupElement(table.superclasses[j].rep)).body
    label = canonical_form(inv_body)
    for k, cls in enumerate(table.superclasses):
        if cls.label == label:
            return k
    raise AssertionError("inverse superclass missing from the table")


def verify_theory(table: SupercharTable, constancy: str | None = None) -> list[tuple]:
    """The axiom and identity suite; returns (name, passed, detail) triples.

    constancy: 'full' scans every member of every superclass against every
    row by the averaging route; 'spot' samples 64 seeded members; default
    picks full when |A| <= 2^12.
    """
    checks: list[tuple] = []
    n, field = table.n, table.field
    expected = count_labels(n, field.order)

    ok = table.size == len(table.superclasses) == expected
    checks.append(
        ("label-count", ok, f"|E| = {table.size}, |K| = {len(table.superclasses)}, "
         f"coloured partitions = {expected}")
    )

    total = sum(k.size for k in table.superclasses)
    checks.append(
        ("class-sizes-sum", total == table.order, f"{total} vs |A| = {table.order}")
    )
    total = sum(o.size for o in table.dual_orbits)
    checks.append(
        ("dual-sizes-sum", total == table.order, f"{total} vs |A°| = {table.order}")
    )

    id_ok = (
        table.superclasses[0].rep.is_zero()
        and table.superclasses[0].size == 1
        and all(row[0] == Cyclotomic.one(field.p) for row in table.values)
    )
    checks.append(("identity-normalization", id_ok, "xi(1) = 1 on every row"))

    if constancy is None:
        constancy = "full" if table.order <= _FULL_VALIDATION_LIMIT else "spot"
    bad = None
    tested = 0
    rng = random.Random(77)
    for j, cls in enumerate(table.superclasses):
        members = cls.members
        if constancy == "spot" and len(members) > _SPOT_CHECKS:
            members = rng.sample(members, _SPOT_CHECKS)
        for state in members:
            a = NilMatrix.from_dense(n, field, state)
            for i, orbit in enumerate(table.dual_orbits):
                hist = _pairing_hist(orbit.members, a)
                got = _hist_to_cyclo(field.p, hist, orbit.size)
                tested += 1
                if got != table.values[i][j]:
                    bad = (i, j, state)
                    break
            if bad:
                break
        if bad:
            break
    checks.append(
        ("superclass-constancy", bad is None,
         f"{tested} member evaluations" if bad is None
         else f"row {bad[0]}, column {bad[1]}, member {bad[2]}")
    )

    bad_pair = None
    for i in range(table.size):
        for j in range(table.size):
            expected_ip = (
                Cyclotomic.from_rational(
                    field.p, Fraction(1, table.dual_orbits[i].size)
                )
                if i == j
                else Cyclotomic.zero(field.p)
            )
            if inner_product(table, i, j) != expected_ip:
                bad_pair = (i, j)
                break
        if bad_pair:
            break
    checks.append(
        ("orthogonality", bad_pair is None,
         "<xi_i, xi_j> = delta_ij / |O_i|" if bad_pair is None
         else f"fails at rows {bad_pair}")
    )

    pl = plancherel(table)
    checks.append(
        ("plancherel-identity", pl["identity_holds"],
         "sum of |O|/|A| xi(g) = delta_{g,1}" if pl["identity_holds"]
         else f"fails on classes {pl['failures']}")
    )

    bad_conj = None
    for j in range(table.size):
        jinv = _inverse_column(table, j)
        for i in range(table.size):
            if table.values[i][jinv] != table.values[i][j].conjugate():
                bad_conj = (i, j)
                break
        if bad_conj:
            break
    checks.append(
        ("conjugate-symmetry", bad_conj is None,
         "xi(g^-1) = conj(xi(g))" if bad_conj is None
         else f"fails at row {bad_conj[0]}, column {bad_conj[1]}")
    )
    return checks


# -- serialization ------------------------------------------------------------


def table_to_json(table: SupercharTable) -> dict:
    return {
        "group": {
            "n": table.n,
            "p": table.field.p,
            "m": table.field.m,
            "q": table.field.order,
            "modulus": list(table.field.modulus),
            "order": table.order,
        },
        "rows": [
            {
                "label": o.label.to_json(),
                "label_text": format_coloured(o.label),
                "size": o.size,
                "weight": f"{table.weight(i).numerator}/{table.weight(i).denominator}",
            }
            for i, o in enumerate(table.dual_orbits)
        ],
        "cols": [
            {
                "label": k.label.to_json(),
                "label_text": format_coloured(k.label),
                "size": k.size,
            }
            for k in table.superclasses
        ],
        "values": [[v.to_json() for v in row] for row in table.values],
    }


class _ParsedAxis:
    """Label/size carrier for tables read back from JSON."""

    __slots__ = ("label", "size", "members")

    def __init__(self, label, size):
        self.label = label
        self.size = size
        self.members = None


def table_from_json(obj: dict) -> SupercharTable:
    from .gf import field_construct

    group = obj["group"]
    n = int(group["n"])
    field = field_construct(int(group["p"]), int(group["m"]))
    if "modulus" in group and tuple(group["modulus"]) != field.modulus:
        raise ValueError("modulus does not match the deterministic construction")
    rows = [
        _ParsedAxis(ColouredPartition.from_json(r["label"], n, field), int(r["size"]))
        for r in obj["rows"]
    ]
    cols = [
        _ParsedAxis(ColouredPartition.from_json(c["label"], n, field), int(c["size"]))
        for c in obj["cols"]
    ]
    values = [[Cyclotomic.from_json(v) for v in row] for row in obj["values"]]
    return SupercharTable(n, field, rows, cols, values)


def table_to_csv(table: SupercharTable) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["label", "size", "weight"]
        + [format_coloured(k.label) for k in table.superclasses]
    )
    writer.writerow(
        ["class-size", "", ""] + [str(k.size) for k in table.superclasses]
    )
    for i, o in enumerate(table.dual_orbits):
        w = table.weight(i)
        writer.writerow(
            [format_coloured(o.label), str(o.size), f"{w.numerator}/{w.denominator}"]
            + [v.basis_str() for v in table.values[i]]
        )
    return buf.getvalue()
