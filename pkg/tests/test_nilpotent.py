"""Strictly upper-triangular matrices and the group 1 + A.

Oracle: dense (n x n) list-of-list arithmetic over the field, with the
unit diagonal written out explicitly, so the group law is checked against
plain matrix multiplication rather than the body-level shortcut.
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from superchar import (
    GroupElement,
    NilMatrix,
    PatternAlgebra,
    elementary_generators,
    enumerate_algebra,
    field_construct,
    format_matrix,
    group_inv,
    group_mul,
    parse_matrix,
)
from superchar.nilpotent import position_rank, positions


# ---------------------------------------------------------------- oracles

def _to_dense(g: GroupElement):
    body = g.body
    n, f = body.n, body.field
    rows = [[f.one if r == c else f.zero for c in range(n)] for r in range(n)]
    for (i, j), v in body.entries.items():
        rows[i - 1][j - 1] = v
    return rows


def _dense_mul(a, b, f):
    n = len(a)
    out = [[f.zero] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            acc = f.zero
            for k in range(n):
                acc = acc + a[r][k] * b[k][c]
            out[r][c] = acc
    return out


def _from_dense(rows, f):
    n = len(rows)
    entries = {}
    for r in range(n):
        assert rows[r][r] == f.one
        for c in range(r):
            assert rows[r][c] == f.zero
        for c in range(r + 1, n):
            if rows[r][c] != f.zero:
                entries[(r + 1, c + 1)] = rows[r][c]
    return GroupElement(NilMatrix(n, f, entries))


def _random_element(n, f, rng):
    entries = {}
    for pos in positions(n):
        v = f.element_by_index(rng.randrange(f.order))
        if v != f.zero:
            entries[pos] = v
    return GroupElement(NilMatrix(n, f, entries))


# ----------------------------------------------------------------- basics

def test_positions_row_major():
    assert positions(3) == ((1, 2), (1, 3), (2, 3))
    assert positions(4) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert position_rank(3) == {(1, 2): 0, (1, 3): 1, (2, 3): 2}
    assert positions(1) == ()


def test_nilmatrix_drops_zero_entries_and_validates():
    f = field_construct(3, 1)
    a = NilMatrix(3, f, {(1, 2): f.zero, (1, 3): f.one})
    assert (1, 2) not in a.entries and a.entry(1, 2) == f.zero
    assert a.entry(1, 3) == f.one
    with pytest.raises(ValueError):
        NilMatrix(3, f, {(2, 2): f.one})
    with pytest.raises(ValueError):
        NilMatrix(3, f, {(3, 1): f.one})


def test_algebra_product_shifts_support():
    f = field_construct(2, 1)
    e12 = NilMatrix.single(3, f, 1, 2, f.one)
    e23 = NilMatrix.single(3, f, 2, 3, f.one)
    e13 = NilMatrix.single(3, f, 1, 3, f.one)
    assert e12 @ e23 == e13
    assert e23 @ e12 == NilMatrix.zero(3, f)
    assert e12 @ e12 == NilMatrix.zero(3, f)


def test_nilpotency_degree():
    rng = random.Random(5)
    for n, q in [(3, 2), (4, 3), (5, 2)]:
        f = field_construct(q, 1)
        for _ in range(20):
            a = _random_element(n, f, rng).body
            power = a
            for _ in range(n - 1):
                power = power @ a
            assert power.is_zero()


# -------------------------------------------------------------- group law

def test_group_mul_worked_examples():
    f = field_construct(2, 1)
    one = f.one
    x = GroupElement(NilMatrix.single(3, f, 1, 2, one))
    y = GroupElement(NilMatrix.single(3, f, 2, 3, one))
    xy = x * y
    assert xy.body.entries == {(1, 2): one, (2, 3): one, (1, 3): one}
    yx = y * x
    assert yx.body.entries == {(1, 2): one, (2, 3): one}
    assert x * x == GroupElement.identity(3, f)  # char 2 involution


def test_group_inverse_series():
    f = field_construct(3, 1)
    one = f.one
    a = NilMatrix(3, f, {(1, 2): one, (2, 3): one})
    g = GroupElement(a)
    # body of the inverse is -a + a^2 here: a^2 = e13, a^3 = 0
    expected = {(1, 2): -one, (2, 3): -one, (1, 3): one}
    assert g.inv().body.entries == expected
    assert g * g.inv() == GroupElement.identity(3, f)
    assert g.inv() * g == GroupElement.identity(3, f)


def test_group_mul_matches_dense_oracle():
    rng = random.Random(11)
    for n, p, m in [(3, 2, 1), (4, 3, 1), (4, 2, 2), (5, 2, 1)]:
        f = field_construct(p, m)
        for _ in range(40):
            x = _random_element(n, f, rng)
            y = _random_element(n, f, rng)
            direct = group_mul(x, y)
            dense = _from_dense(_dense_mul(_to_dense(x), _to_dense(y), f), f)
            assert direct == dense
            assert group_inv(x) * x == GroupElement.identity(n, f)


def test_group_associativity_random():
    rng = random.Random(23)
    f = field_construct(2, 2)
    for _ in range(60):
        x, y, z = (_random_element(4, f, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_generators_generate_whole_group():
    for n, q in [(2, 2), (3, 2), (3, 3), (4, 2)]:
        f = field_construct(q, 1)
        gens = elementary_generators(n, f)
        assert len(gens) == len(positions(n)) * (q - 1)
        seen = {GroupElement.identity(n, f)}
        frontier = [GroupElement.identity(n, f)]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = g * s
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        assert len(seen) == q ** len(positions(n))


def test_generator_order():
    f = field_construct(3, 1)
    gens = elementary_generators(3, f)
    tags = [(next(iter(g.body.entries)), next(iter(g.body.entries.values())).index)
            for g in gens]
    assert tags == [((1, 2), 1), ((1, 2), 2), ((1, 3), 1), ((1, 3), 2),
                    ((2, 3), 1), ((2, 3), 2)]


# ------------------------------------------------------------ enumeration

def test_enumerate_algebra_counts_and_order():
    f = field_construct(2, 1)
    algebra = list(enumerate_algebra(3, f))
    assert len(algebra) == 8
    assert algebra[0].is_zero()
    assert len(set(algebra)) == 8
    f9 = field_construct(3, 2)
    assert sum(1 for _ in enumerate_algebra(2, f9)) == 9


def test_enumerate_algebra_respects_space_cap(monkeypatch):
    monkeypatch.delenv("SUPERCHAR_CAP", raising=False)
    f = field_construct(2, 1)
    with pytest.raises(ValueError):
        list(enumerate_algebra(8, f))  # 2^28 states


# ------------------------------------------------------- text and json io

def test_format_parse_round_trip_prime_field():
    f = field_construct(5, 1)
    a = NilMatrix(4, f, {(1, 2): f.from_int(3), (2, 4): f.from_int(1)})
    text = format_matrix(a)
    assert text == "a12=3,a24=1"
    assert parse_matrix(text, 4, f) == a
    assert format_matrix(NilMatrix.zero(3, f)) == ""
    assert parse_matrix("", 3, f) == NilMatrix.zero(3, f)


def test_format_parse_round_trip_extension_field():
    f4 = field_construct(2, 2)
    w = f4.gen
    a = NilMatrix(3, f4, {(1, 3): w, (2, 3): w + f4.one})
    text = format_matrix(a)
    assert text == "a13=[0,1],a23=[1,1]"
    assert parse_matrix(text, 3, f4) == a


def test_parse_matrix_rejects_bad_input():
    f = field_construct(2, 1)
    with pytest.raises(ValueError):
        parse_matrix("a21=1", 3, f)  # lower triangle
    with pytest.raises(ValueError):
        parse_matrix("a12=1,a12=1", 3, f)  # duplicate
    with pytest.raises(ValueError):
        parse_matrix("a14=1", 3, f)  # out of range
    with pytest.raises(ValueError):
        parse_matrix("a12", 3, f)  # no value


def test_json_round_trip():
    f9 = field_construct(3, 2)
    a = NilMatrix(4, f9, {(1, 4): f9.gen, (2, 3): f9.one})
    blob = a.to_json()
    assert NilMatrix.from_json(blob, f9) == a
    assert blob["entries"] == {"1,4": [0, 1], "2,3": [1, 0]}


# ---------------------------------------------------------------- pattern

def test_pattern_algebra_closure():
    f = field_construct(2, 1)
    PatternAlgebra(4, f, {(1, 2), (1, 3), (1, 4), (2, 4)})  # closed: 12*24=14
    with pytest.raises(ValueError):
        PatternAlgebra(4, f, {(1, 2), (2, 4)})  # missing (1,4)
    with pytest.raises(ValueError):
        PatternAlgebra(3, f, {(2, 1)})


def test_pattern_algebra_membership_and_elements():
    f = field_construct(3, 1)
    sub = PatternAlgebra(3, f, {(1, 3)})
    assert sub.contains(NilMatrix.single(3, f, 1, 3, f.one))
    assert not sub.contains(NilMatrix.single(3, f, 1, 2, f.one))
    elems = list(sub.elements())
    assert len(elems) == 3
    assert len(sub.generators()) == 2
    # centre of u_3: products vanish, group is elementary abelian
    for a in elems:
        for b in elems:
            assert (a @ b).is_zero()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(3, 2, 1), (3, 3, 1), (4, 2, 1), (3, 2, 2)]), st.data())
def test_body_identities(config, data):
    n, p, m = config
    f = field_construct(p, m)
    idx = st.integers(min_value=0, max_value=f.order ** len(positions(n)) - 1)

    def draw_matrix():
        k = data.draw(idx)
        digits = []
        for _ in positions(n):
            digits.append(k % f.order)
            k //= f.order
        return NilMatrix.from_dense(n, f, digits)

    a, b, c = draw_matrix(), draw_matrix(), draw_matrix()
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a - a == NilMatrix.zero(n, f)
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    x, y = GroupElement(a), GroupElement(b)
    # group law in terms of bodies
    assert (x * y).body == a + b + a @ b
