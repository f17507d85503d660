"""Field towers, compatible character sequences, and finite approximation.

A tower is a divisor chain of degrees over one prime.  A character of the
limit field is carried as the sequence of its restrictions: elements beta_m
with Tr(beta_{m+1}) = beta_m at every consecutive pair.  Zero betas form a
prefix (a trace of zero is zero), so each nontrivial sequence has a first
nonzero level m0, before which its supercharacters are undefined.  Level
values come from the closed formula; the limit is zero unless every row
arc survives with zero nesting, in which case the value freezes at the
first fully-defined level.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic
from .dual import _dual_orbit_states
from .gf import FieldElement, FiniteField, field_construct, field_embed, trace_lift
from .nilpotent import positions
from .orbits import _orbit_states
from .partitions import (
    ColouredPartition,
    SetPartition,
    compute_SR,
    enumerate_labels,
    format_coloured,
    nest,
)
from .table import sch_closed


class FieldTower:
    """GF(p^c1) < GF(p^c2) < ... for a strictly increasing divisor chain."""

    def __init__(self, p: int, degrees):
        degrees = tuple(int(d) for d in degrees)
        if not degrees:
            raise ValueError("empty tower")
        for a, b in zip(degrees, degrees[1:]):
            if not (a < b and b % a == 0):
                raise ValueError(f"degrees {degrees} are not a divisor chain")
        self.p = p
        self.degrees = degrees
        self.fields = [field_construct(p, d) for d in degrees]

    def __len__(self):
        return len(self.degrees)

    def field(self, level: int) -> FiniteField:
        """Levels are 1-based."""
        if not 1 <= level <= len(self.degrees):
            raise ValueError(f"level {level} outside tower of height {len(self)}")
        return self.fields[level - 1]

    def embed(self, x: FieldElement, level: int) -> FieldElement:
        """Direct per-pair embedding of a lower-level element into a level."""
        target = self.field(level)
        if x.field == target:
            return x
        if x.field not in self.fields:
            raise ValueError("element does not belong to a tower level")
        return field_embed(x.field, target)(x)

    def __repr__(self):
        return f"FieldTower(p={self.p}, degrees={self.degrees})"


def char_extend(beta: FieldElement, sup: FiniteField) -> FieldElement:
    """The enumeration-smallest element of sup whose trace down is beta."""
    sub = beta.field
    if sup.m % sub.m != 0 or sup.p != sub.p:
        raise ValueError("not a subfield pair")
    from .gf import field_trace

    for x in sup.elements:
        if field_trace(x, sub.m) == beta:
            return x
    raise AssertionError("trace is surjective; no preimage found")


class TowerCharacter:
    """A compatible sequence of betas, one per tower level.

    Compatibility Tr(beta_{m+1}) = beta_m is what restriction of the
    character beta*tau to the subfield means; the constructor does not
    take that on faith but replays it as a character identity over every
    subfield element.
    """

    __slots__ = ("tower", "betas", "m0")

    def __init__(self, tower: FieldTower, betas):
        betas = list(betas)
        if len(betas) != len(tower):
            raise ValueError("one beta per tower level required")
        from .gf import field_trace

        for m, (lo, hi) in enumerate(zip(tower.fields, tower.fields[1:])):
            if betas[m].field != lo or betas[m + 1].field != hi:
                raise ValueError(f"beta at level {m + 1} lives in the wrong field")
            if field_trace(betas[m + 1], lo.m) != betas[m]:
                raise ValueError(
                    f"trace compatibility fails between levels {m + 1} and {m + 2}"
                )
            emb = field_embed(lo, hi)
            for x in lo.elements:
                if trace_lift(betas[m + 1] * emb(x)) != trace_lift(betas[m] * x):
                    raise AssertionError(
                        "trace-compatible betas do not restrict as characters"
                    )
        self.tower = tower
        self.betas = betas
        self.m0 = next(
            (m + 1 for m, b in enumerate(betas) if b), None
        )  # None = the trivial sequence

    @classmethod
    def from_level1(cls, tower: FieldTower, beta1: FieldElement) -> "TowerCharacter":
        if beta1.field != tower.fields[0]:
            raise ValueError("beta1 must live in the bottom field")
        betas = [beta1]
        for hi in tower.fields[1:]:
            betas.append(char_extend(betas[-1], hi))
        return cls(tower, betas)

    def __repr__(self):
        return f"TowerCharacter({[b.index for b in self.betas]})"


def char_restrict(t: TowerCharacter, level: int) -> FieldElement:
    """beta at a level; the compatibility that makes this restriction was
    checked when t was built."""
    if not 1 <= level <= len(t.tower):
        raise ValueError(f"level {level} outside the tower")
    return t.betas[level - 1]


class TowerLabel:
    """A set partition with a tower character on every arc."""

    __slots__ = ("tower", "partition", "colours", "m0")

    def __init__(self, tower: FieldTower, partition: SetPartition, colours: dict):
        if set(colours) != set(partition.arcs()):
            raise ValueError("colour domain differs from the arc set")
        for arc, tc in colours.items():
            if tc.tower is not tower and tc.tower.degrees != tower.degrees:
                raise ValueError("colour tower mismatch")
            if tc.m0 is None:
                raise ValueError(f"arc {arc} carries the trivial character sequence")
        self.tower = tower
        self.partition = partition
        self.colours = dict(sorted(colours.items()))
        self.m0 = max((tc.m0 for tc in colours.values()), default=1)

    @classmethod
    def from_level1(
        cls, tower: FieldTower, level1: ColouredPartition
    ) -> "TowerLabel":
        colours = {
            arc: TowerCharacter.from_level1(tower, beta)
            for arc, beta in level1.colours.items()
        }
        return cls(tower, level1.partition, colours)

    def level_label(self, level: int) -> ColouredPartition:
        if level < self.m0:
            raise ValueError(
                f"level {level} is below m0 = {self.m0}; some colour is still trivial"
            )
        return ColouredPartition(
            self.partition,
            {arc: char_restrict(tc, level) for arc, tc in self.colours.items()},
            dual=True,
        )

    def __repr__(self):
        return f"TowerLabel({format_coloured(self.level_label(self.m0))!r}, m0={self.m0})"


def tower_supercharacter(
    label: TowerLabel, level: int, col: ColouredPartition
) -> Cyclotomic:
    """The level supercharacter value; the column label must already be
    coloured in the level's field."""
    field = label.tower.field(level)
    for v in col.colours.values():
        if v.field != field:
            raise ValueError(f"column colours must live at level {level}")
    return sch_closed(label.level_label(level), col, field)


def _embed_column(
    tower: FieldTower, col: ColouredPartition, level: int
) -> ColouredPartition:
    return ColouredPartition(
        col.partition,
        {arc: tower.embed(v, level) for arc, v in col.colours.items()},
        dual=col.dual,
    )


def _column_level(tower: FieldTower, col: ColouredPartition) -> int:
    if not col.colours:
        return 1
    f = next(iter(col.colours.values())).field
    for m, tf in enumerate(tower.fields, start=1):
        if tf == f:
            return m
    raise ValueError("column colours do not live at any tower level")


def limit_value(label: TowerLabel, col: ColouredPartition) -> Cyclotomic:
    """Zero unless every row arc survives the column shadow with zero
    nesting; otherwise the pairing product, frozen at the first level
    where both the label and the column are defined."""
    p = label.tower.p
    pi, pip = label.partition, col.partition
    _, reach = compute_SR(pip)
    if not (pi.arcs() <= reach) or nest(pi, pip) > 0:
        return Cyclotomic.zero(p)
    level = max(label.m0, _column_level(label.tower, col))
    return tower_supercharacter(label, level, _embed_column(label.tower, col, level))


def convergence_report(
    label: TowerLabel, col: ColouredPartition, max_level: int | None = None
) -> dict:
    """Exact level values against the predicted limit.

    The column is given at its own level and embedded upward.  Levels
    below m0 or below the column's level are reported as undefined.
    """
    tower = label.tower
    top = len(tower) if max_level is None else min(max_level, len(tower))
    first = max(label.m0, _column_level(tower, col))
    depth = nest(label.partition, col.partition)
    limit = limit_value(label, col)
    levels = []
    values = []
    for m in range(1, top + 1):
        q = tower.field(m).order
        if m < first:
            levels.append({"level": m, "q": q, "defined": False})
            continue
        v = tower_supercharacter(label, m, _embed_column(tower, col, m))
        values.append(v)
        abs2 = (v * v.conjugate()).rational_part()
        levels.append(
            {
                "level": m,
                "q": q,
                "defined": True,
                "value": v,
                "abs2": abs2,
            }
        )
    if not values:
        stabilized = False
        verdict = "no defined levels in range"
    elif limit:
        stabilized = all(v == limit for v in values)
        verdict = (
            f"stabilized at level {first}" if stabilized else "not stabilized"
        )
    elif all(not v for v in values):
        # identically zero: the arc pattern dies at every level
        verdict = f"stabilized at level {first}"
        stabilized = True
    else:
        for entry in levels:
            if entry["defined"]:
                expected = Fraction(1, entry["q"] ** (2 * depth))
                assert entry["abs2"] == expected, "magnitude law broken"
        verdict = f"norm decays as q_m^-{depth}"
        stabilized = False
    return {
        "m0": label.m0,
        "first_defined_level": first,
        "nest": depth,
        "levels": levels,
        "limit": limit,
        "stabilized": stabilized,
        "verdict": verdict,
    }


# -- growth diagnostics --------------------------------------------------------


def _level_feasible(n: int, field: FiniteField) -> bool:
    from .gf import space_cap

    return field.order ** len(positions(n)) <= space_cap()


def _size_scan(n: int, tower: FieldTower, levels, dual: bool) -> list[tuple]:
    """Orbit sizes per level for every level-1 canonical label."""
    base = tower.fields[0]
    out = []
    for label in enumerate_labels(n, base, dual=dual):
        sizes = []
        for m in levels:
            field = tower.field(m)
            entries = {
                arc: tower.embed(v, m) for arc, v in label.colours.items()
            }
            if dual:
                sizes.append(len(_dual_orbit_states(n, field, entries)))
            else:
                sizes.append(len(_orbit_states(n, field, entries)))
        out.append((label, sizes))
    return out


def fsc_diagnostic(n: int, tower: FieldTower, levels=None) -> dict:
    """Classify level-1 labels by orbit growth along the tower.

    A label is level-stable when its orbit size is the same at every
    scanned level.  For U_n the stable superclasses should be the trivial
    one and the full-span arc (1, n) alone, and the stable dual orbits the
    all-superdiagonal labels; the report records whether that held.
    """
    if levels is None:
        levels = [m for m in range(1, len(tower) + 1) if _level_feasible(n, tower.field(m))]
    for m in levels:
        if not _level_feasible(n, tower.field(m)):
            raise ValueError(f"level {m} exceeds the space cap for n = {n}")
    if len(levels) < 2:
        raise ValueError("growth needs at least two feasible levels")

    def classify(scan):
        rows = []
        for label, sizes in scan:
            rows.append(
                {
                    "label": format_coloured(label),
                    "arcs": sorted(label.arcs()),
                    "sizes": sizes,
                    "stable": len(set(sizes)) == 1,
                }
            )
        return rows

    superclasses = classify(_size_scan(n, tower, levels, dual=False))
    dual_orbits = classify(_size_scan(n, tower, levels, dual=True))
    expected_sc = {frozenset(), frozenset({(1, n)})} if n > 1 else {frozenset()}
    sc_match = all(
        r["stable"] == (frozenset(tuple(a) for a in r["arcs"]) in expected_sc)
        for r in superclasses
    )
    dual_match = all(
        r["stable"] == all(j == i + 1 for (i, j) in r["arcs"])
        for r in dual_orbits
    )
    return {
        "n": n,
        "p": tower.p,
        "degrees": list(tower.degrees),
        "levels": list(levels),
        "superclasses": superclasses,
        "dual_orbits": dual_orbits,
        "stable_superclasses_match_center": sc_match,
        "stable_dual_orbits_match_superdiagonal": dual_match,
    }


def plancherel_profile(n: int, tower: FieldTower, levels=None) -> dict:
    """Super-Plancherel weight carried by the dual orbits whose label arcs
    stay inside the arcs of the scan-stable superclasses, per level.

    Membership is decided by arc containment, not by a vanishing scan: the
    trivial orbit concentrates on the stable classes without vanishing
    anywhere, and it must count toward the weight.
    """
    if levels is None:
        levels = [m for m in range(1, len(tower) + 1) if _level_feasible(n, tower.field(m))]
    for m in levels:
        if not _level_feasible(n, tower.field(m)):
            raise ValueError(f"level {m} exceeds the space cap for n = {n}")
    if len(levels) < 2:
        raise ValueError("a profile needs at least two feasible levels")

    scan = _size_scan(n, tower, levels, dual=False)
    fsc_arcs: set = set()
    for label, sizes in scan:
        if len(set(sizes)) == 1:
            fsc_arcs |= set(label.arcs())

    profile = []
    for m in levels:
        field = tower.field(m)
        total = field.order ** len(positions(n))
        qualifying = Fraction(0)
        for label, sizes in _size_scan_level_dual(n, tower, m):
            if set(label.arcs()) <= fsc_arcs:
                qualifying += Fraction(sizes, total)
        profile.append({"level": m, "q": field.order, "weight": qualifying})
    weights = [entry["weight"] for entry in profile]
    increasing = all(a < b for a, b in zip(weights, weights[1:]))
    return {
        "n": n,
        "p": tower.p,
        "degrees": list(tower.degrees),
        "levels": list(levels),
        "fsc_arcs": sorted(fsc_arcs),
        "profile": profile,
        "strictly_increasing": increasing,
    }


def _size_scan_level_dual(n: int, tower: FieldTower, level: int):
    """Dual labels at one level with their orbit sizes, enumerated at that
    level's own field (not embedded from level 1: higher levels have more
    colours than level 1 offers)."""
    field = tower.field(level)
    for label in enumerate_labels(n, field, dual=True):
        yield label, len(_dual_orbit_states(n, field, dict(label.colours)))
