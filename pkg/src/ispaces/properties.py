"""Property checkers for interval spaces, with counterexample witnesses.

Each named property (point-transitive, stiff, interval-convex, ...) has a
witness function returning the lexicographically smallest counterexample
tuple, or None when the property holds, plus a boolean wrapper.  The two
condition vectors bundle the nine formulations equivalent to
interval-transitivity (C1..C9) and the five equivalent to
interval-antisymmetry (D1..D5).  Every condition is evaluated from its own
defining formula, not derived from the others, so the equivalences can be
verified extensionally over enumerated or sampled spaces.

Scan order is ascending point ids (and ascending bit masks for subset
quantifiers) everywhere, which makes reported witnesses deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import SUBSET_TRIPLE_CAP, FiniteIntervalSpace, PointSet
from .closure import (
    HypothesisNotMetError,
    antiexchange_witness,
    antimatroid_report,
    combinatorial_witness,
    convex_closure_system,
    is_antiexchange,
    is_antimatroid,
    is_combinatorial,
)

TRANSITIVITY_CONDITIONS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9")
ANTISYMMETRY_CONDITIONS = ("D1", "D2", "D3", "D4", "D5")

PROPERTY_NAMES = (
    "point-transitive",
    "point-antisymmetric",
    "interval-transitive",
    "interval-antisymmetric",
    "interval-convex",
    "stiff",
)

CLOSURE_FLAG_NAMES = ("antiexchange", "combinatorial", "antimatroid")


# ---------------------------------------------------------------------------
# Shared row-level helpers


def _transitive_rows_witness(rows: list[int] | tuple[int, ...]) -> tuple[int, int, int] | None:
    for x, row_x in enumerate(rows):
        rest = row_x
        while rest:
            low = rest & -rest
            y = low.bit_length() - 1
            rest ^= low
            extra = rows[y] & ~row_x
            if extra:
                return (x, y, (extra & -extra).bit_length() - 1)
    return None


def _antisymmetric_rows_witness(rows: list[int] | tuple[int, ...], scope: int) -> tuple[int, int] | None:
    rest_x = scope
    while rest_x:
        low = rest_x & -rest_x
        x = low.bit_length() - 1
        rest_x ^= low
        cands = rows[x] & scope & ~((1 << (x + 1)) - 1)
        while cands:
            lo = cands & -cands
            y = lo.bit_length() - 1
            cands ^= lo
            if (rows[y] >> x) & 1:
                return (x, y)
    return None


def _convexity_breach(space: FiniteIntervalSpace, sm: int) -> tuple[int, int, int] | None:
    """Smallest (u, v, w) with u, v in S, w between them, w outside S."""
    n = space.n
    ivl = space._ivl
    rest_u = sm
    while rest_u:
        low_u = rest_u & -rest_u
        u = low_u.bit_length() - 1
        rest_u ^= low_u
        rest_v = sm
        while rest_v:
            low_v = rest_v & -rest_v
            v = low_v.bit_length() - 1
            rest_v ^= low_v
            outside = ivl[u * n + v] & ~sm
            if outside:
                return (u, v, (outside & -outside).bit_length() - 1)
    return None


# ---------------------------------------------------------------------------
# Named properties


def point_transitivity_witness(space: FiniteIntervalSpace) -> tuple[int, int, int, int] | None:
    """Smallest (a, x, y, z) with <a,x,y> and <a,y,z> but not <a,x,z>."""
    n = space.n
    fwd = space._fwd
    for a in range(n):
        base = a * n
        w = _transitive_rows_witness(fwd[base:base + n])
        if w is not None:
            return (a, *w)
    return None


def is_point_transitive(space: FiniteIntervalSpace) -> bool:
    return point_transitivity_witness(space) is None


def point_antisymmetry_witness(space: FiniteIntervalSpace) -> tuple[int, int, int] | None:
    """Smallest (a, x, y), x < y, with <a,x,y> and <a,y,x>."""
    n = space.n
    fwd = space._fwd
    full = (1 << n) - 1
    for a in range(n):
        base = a * n
        w = _antisymmetric_rows_witness(fwd[base:base + n], full)
        if w is not None:
            return (a, *w)
    return None


def is_point_antisymmetric(space: FiniteIntervalSpace) -> bool:
    return point_antisymmetry_witness(space) is None


def interval_transitivity_witness(space: FiniteIntervalSpace) -> tuple[int, int, int, int, int] | None:
    """Smallest (a, b, x, y, z) where the base order of [a, b] breaks transitivity."""
    n = space.n
    ivl = space._ivl
    for a in range(n):
        for b in range(n):
            rows = space._base_set_rows(ivl[a * n + b])
            w = _transitive_rows_witness(rows)
            if w is not None:
                return (a, b, *w)
    return None


def is_interval_transitive(space: FiniteIntervalSpace) -> bool:
    return interval_transitivity_witness(space) is None


def interval_antisymmetry_witness(space: FiniteIntervalSpace) -> tuple[int, int, int, int] | None:
    """Smallest (a, b, x, y): x, y outside [a, b], related both ways by its base order."""
    n = space.n
    ivl = space._ivl
    full = (1 << n) - 1
    for a in range(n):
        for b in range(n):
            im = ivl[a * n + b]
            outside = full & ~im
            if outside == 0:
                continue
            rows = space._base_set_rows(im)
            w = _antisymmetric_rows_witness(rows, outside)
            if w is not None:
                return (a, b, *w)
    return None


def is_interval_antisymmetric(space: FiniteIntervalSpace) -> bool:
    return interval_antisymmetry_witness(space) is None


def interval_convexity_witness(space: FiniteIntervalSpace) -> tuple[int, int, int, int, int] | None:
    """Smallest (a, b, u, v, w) where [a, b] fails to contain [u, v] for u, v in it."""
    n = space.n
    ivl = space._ivl
    for a in range(n):
        for b in range(n):
            breach = _convexity_breach(space, ivl[a * n + b])
            if breach is not None:
                return (a, b, *breach)
    return None


def is_interval_convex(space: FiniteIntervalSpace) -> bool:
    return interval_convexity_witness(space) is None


def stiffness_witness(space: FiniteIntervalSpace) -> tuple[int, int, int, int] | None:
    """Smallest (a, b, c, d) with <a,b,c>, b != c, <b,c,d>, but not <a,b,d>."""
    n = space.n
    fwd = space._fwd
    for a in range(n):
        for b in range(n):
            row_ab = fwd[a * n + b]
            cands = fwd[a * n + b] & ~(1 << b)
            rest_c = cands
            while rest_c:
                low = rest_c & -rest_c
                c = low.bit_length() - 1
                rest_c ^= low
                extra = fwd[b * n + c] & ~row_ab
                if extra:
                    return (a, b, c, (extra & -extra).bit_length() - 1)
    return None


def is_stiff(space: FiniteIntervalSpace) -> bool:
    return stiffness_witness(space) is None


# ---------------------------------------------------------------------------
# Condition vectors


@dataclass(frozen=True)
class ConditionVector:
    """Values of one theorem's equivalent conditions on one space.

    ``values`` holds one entry per condition in order; None marks a
    condition that was skipped (subset-triple cap), never one that was
    guessed.  Every False entry has a witness.  ``hypothesis_met`` records
    whether the space satisfied the hypothesis the equivalence needs
    (interval-transitivity, for the antisymmetry conditions).
    """

    theorem: str
    values: tuple[bool | None, ...]
    witness_items: tuple[tuple[str, tuple], ...] = ()
    hypothesis_met: bool = True

    def __post_init__(self) -> None:
        if self.theorem not in ("transitivity", "antisymmetry"):
            raise ValueError(f"unknown theorem {self.theorem!r}")
        if len(self.values) != len(self.names):
            raise ValueError(f"{self.theorem} needs {len(self.names)} values, got {len(self.values)}")

    @property
    def names(self) -> tuple[str, ...]:
        return TRANSITIVITY_CONDITIONS if self.theorem == "transitivity" else ANTISYMMETRY_CONDITIONS

    @property
    def witnesses(self) -> dict[str, tuple]:
        return dict(self.witness_items)

    def flags(self) -> dict[str, bool | None]:
        return dict(zip(self.names, self.values))

    @property
    def skipped(self) -> tuple[str, ...]:
        return tuple(name for name, v in zip(self.names, self.values) if v is None)

    def decided(self) -> tuple[bool, ...]:
        return tuple(v for v in self.values if v is not None)

    def all_equal(self) -> bool:
        """Whether every evaluated condition agrees (skipped entries ignored)."""
        decided = self.decided()
        return all(v == decided[0] for v in decided) if decided else True


def _c2_c3_witnesses(space: FiniteIntervalSpace) -> tuple[tuple | None, tuple | None]:
    """Witnesses for [{a},[b,c]] <= [[a,b],{c}] and for equality of the two."""
    n = space.n
    ivl = space._ivl
    w2 = w3 = None
    for a in range(n):
        for b in range(n):
            ab = ivl[a * n + b]
            for c in range(n):
                lhs = 0
                rest = ivl[b * n + c]
                while rest:
                    low = rest & -rest
                    lhs |= ivl[a * n + low.bit_length() - 1]
                    rest ^= low
                rhs = 0
                rest = ab
                while rest:
                    low = rest & -rest
                    rhs |= ivl[(low.bit_length() - 1) * n + c]
                    rest ^= low
                if w2 is None:
                    extra = lhs & ~rhs
                    if extra:
                        w2 = (a, b, c, (extra & -extra).bit_length() - 1)
                if w3 is None:
                    diff = lhs ^ rhs
                    if diff:
                        w3 = (a, b, c, (diff & -diff).bit_length() - 1)
                if w2 is not None and w3 is not None:
                    return (w2, w3)
    return (w2, w3)


def _associativity_witness(space: FiniteIntervalSpace, tab: list[list[int]]) -> tuple | None:
    """Smallest (A, B, C, x) with x in exactly one of [[A,B],C] and [A,[B,C]]."""
    size = len(tab)
    n = space.n
    for am in range(size):
        row_a = tab[am]
        for bm in range(size):
            left_row = tab[row_a[bm]]
            row_b = tab[bm]
            right_row = [row_a[t] for t in row_b]
            if left_row != right_row:
                for cm in range(size):
                    diff = left_row[cm] ^ right_row[cm]
                    if diff:
                        x = (diff & -diff).bit_length() - 1
                        return (PointSet(n, am), PointSet(n, bm), PointSet(n, cm), x)
    return None


def _commutativity_witness(space: FiniteIntervalSpace, tab: list[list[int]]) -> tuple | None:
    size = len(tab)
    n = space.n
    for am in range(size):
        row_a = tab[am]
        for bm in range(am + 1, size):
            diff = row_a[bm] ^ tab[bm][am]
            if diff:
                x = (diff & -diff).bit_length() - 1
                return (PointSet(n, am), PointSet(n, bm), x)
    return None


def _c6_witness(space: FiniteIntervalSpace, convex_masks: list[int]) -> tuple | None:
    """Interval-convexity breaches scan first, then base-order transitivity per convex set."""
    w = interval_convexity_witness(space)
    if w is not None:
        return w
    for am in convex_masks:
        rows = space._base_set_rows(am)
        tw = _transitive_rows_witness(rows)
        if tw is not None:
            return (PointSet(space.n, am), *tw)
    return None


def _c7_witness(
    space: FiniteIntervalSpace, convex_masks: list[int], tab: list[list[int]] | None
) -> tuple | None:
    for am in convex_masks:
        for bm in convex_masks:
            t = tab[am][bm] if tab is not None else space._set_interval_mask(am, bm)
            breach = _convexity_breach(space, t)
            if breach is not None:
                return (PointSet(space.n, am), PointSet(space.n, bm), *breach)
    return None


def _pair_point_interval_mask(space: FiniteIntervalSpace, a: int, b: int, c: int) -> int:
    """[[a, b], {c}] as a mask."""
    n = space.n
    ivl = space._ivl
    out = 0
    rest = ivl[a * n + b]
    while rest:
        low = rest & -rest
        out |= ivl[(low.bit_length() - 1) * n + c]
        rest ^= low
    return out


def _c8_witness(space: FiniteIntervalSpace) -> tuple | None:
    n = space.n
    for a in range(n):
        for b in range(n):
            for c in range(n):
                breach = _convexity_breach(space, _pair_point_interval_mask(space, a, b, c))
                if breach is not None:
                    return (a, b, c, *breach)
    return None


def _c9_witness(space: FiniteIntervalSpace) -> tuple | None:
    """Smallest (a, b, c, x) with x in exactly one of co({a,b,c}) and [[a,b],{c}]."""
    n = space.n
    for a in range(n):
        for b in range(n):
            for c in range(n):
                t = _pair_point_interval_mask(space, a, b, c)
                h = space._hull_mask((1 << a) | (1 << b) | (1 << c))
                diff = t ^ h
                if diff:
                    return (a, b, c, (diff & -diff).bit_length() - 1)
    return None


def transitivity_conditions(
    space: FiniteIntervalSpace,
    *,
    semigroup_conditions: bool | None = None,
    allow_large: bool = False,
) -> ConditionVector:
    """Evaluate the nine conditions equivalent to interval-transitivity.

    C4 and C5 quantify over all (2^n)^3 subset triples; with
    ``semigroup_conditions=None`` they are evaluated exactly when n is
    within `SUBSET_TRIPLE_CAP` and reported as skipped (None) otherwise.
    Pass True to force them or False to skip regardless.  The full [A, B]
    table is built once and shared by the subset-level conditions.
    """
    if semigroup_conditions is None:
        semigroup_conditions = space.n <= SUBSET_TRIPLE_CAP
    convex = space._convex_masks(allow_large=allow_large)
    tab = space._subset_table(allow_large=True) if semigroup_conditions else None

    witnesses: list[tuple[str, tuple]] = []
    values: list[bool | None] = []

    w1 = interval_transitivity_witness(space)
    w2, w3 = _c2_c3_witnesses(space)
    if tab is not None:
        w4 = _associativity_witness(space, tab)
        w5 = w4 if w4 is not None else _commutativity_witness(space, tab)
    w6 = _c6_witness(space, convex)
    w7 = _c7_witness(space, convex, tab)
    w8 = _c8_witness(space)
    w9 = _c9_witness(space)

    for name, witness in zip(("C1", "C2", "C3"), (w1, w2, w3)):
        values.append(witness is None)
        if witness is not None:
            witnesses.append((name, witness))
    if tab is None:
        values.extend([None, None])
    else:
        for name, witness in zip(("C4", "C5"), (w4, w5)):
            values.append(witness is None)
            if witness is not None:
                witnesses.append((name, witness))
    for name, witness in zip(("C6", "C7", "C8", "C9"), (w6, w7, w8, w9)):
        values.append(witness is None)
        if witness is not None:
            witnesses.append((name, witness))
    return ConditionVector("transitivity", tuple(values), tuple(witnesses))


def _d3_witness(space: FiniteIntervalSpace, convex_masks: list[int]) -> tuple | None:
    """Smallest (A, x, y): A convex, x < y outside A, base order of A relates both ways."""
    full = (1 << space.n) - 1
    for am in convex_masks:
        outside = full & ~am
        if outside == 0:
            continue
        rows = space._base_set_rows(am)
        w = _antisymmetric_rows_witness(rows, outside)
        if w is not None:
            return (PointSet(space.n, am), *w)
    return None


def antisymmetry_conditions(
    space: FiniteIntervalSpace,
    *,
    allow_non_interval_transitive: bool = False,
    allow_large: bool = False,
) -> ConditionVector:
    """Evaluate the five conditions equivalent to interval-antisymmetry.

    The equivalence holds for interval-transitive spaces; by default a
    space failing that hypothesis is rejected.  With
    ``allow_non_interval_transitive=True`` the conditions are still
    evaluated (they remain individually well-defined) and the breach is
    recorded via ``hypothesis_met=False``; the five values need not agree
    then.
    """
    hypothesis_met = interval_transitivity_witness(space) is None
    if not hypothesis_met and not allow_non_interval_transitive:
        raise HypothesisNotMetError(
            "space is not interval-transitive; pass allow_non_interval_transitive=True to evaluate anyway"
        )
    convex = space._convex_masks(allow_large=allow_large)
    cs = convex_closure_system(space, allow_large=allow_large)

    w1 = interval_antisymmetry_witness(space)
    w2 = stiffness_witness(space)
    w3 = _d3_witness(space, convex)
    w4 = antiexchange_witness(cs)
    am_report = antimatroid_report(cs)
    if am_report["antimatroid"]:
        w5 = None
    else:
        w5 = am_report.get("antiexchange_witness")
        if w5 is None:
            chain = combinatorial_witness(cs)
            w5 = ("chain-union-not-closed", chain) if chain is not None else ("empty-set-not-closed",)

    witnesses = []
    values = []
    for name, witness in zip(ANTISYMMETRY_CONDITIONS, (w1, w2, w3, w4, w5)):
        values.append(witness is None)
        if witness is not None:
            witnesses.append((name, witness))
    return ConditionVector("antisymmetry", tuple(values), tuple(witnesses), hypothesis_met)


# ---------------------------------------------------------------------------
# Universally valid implications


def base_interval_transitivity_prop_witness(space: FiniteIntervalSpace) -> tuple | None:
    """Smallest (a, b, c, x) breaking: base order of [a,b] transitive implies
    [{a},[b,c]] <= [[a,b],{c}].  None on every interval space."""
    n = space.n
    ivl = space._ivl
    for a in range(n):
        for b in range(n):
            rows = space._base_set_rows(ivl[a * n + b])
            if _transitive_rows_witness(rows) is not None:
                continue
            for c in range(n):
                lhs = 0
                rest = ivl[b * n + c]
                while rest:
                    low = rest & -rest
                    lhs |= ivl[a * n + low.bit_length() - 1]
                    rest ^= low
                extra = lhs & ~_pair_point_interval_mask(space, a, b, c)
                if extra:
                    return (a, b, c, (extra & -extra).bit_length() - 1)
    return None


def check_base_interval_transitivity_prop(space: FiniteIntervalSpace) -> bool:
    return base_interval_transitivity_prop_witness(space) is None


def base_interval_antisymmetry_prop_witness(space: FiniteIntervalSpace) -> tuple | None:
    """Smallest (a, d, b, c) breaking: in a point-transitive space, if the base
    order of [a,d] is antisymmetric outside [a,d], then <a,b,c>, b != c and
    <b,c,d> force <a,b,d>.  Vacuously None when not point-transitive."""
    if point_transitivity_witness(space) is not None:
        return None
    n = space.n
    ivl = space._ivl
    fwd = space._fwd
    full = (1 << n) - 1
    for a in range(n):
        for d in range(n):
            im = ivl[a * n + d]
            rows = space._base_set_rows(im)
            if _antisymmetric_rows_witness(rows, full & ~im) is not None:
                continue
            for b in range(n):
                row_ab = fwd[a * n + b]
                if not (row_ab >> d) & 1:
                    rest_c = row_ab & ~(1 << b)
                    while rest_c:
                        low = rest_c & -rest_c
                        c = low.bit_length() - 1
                        rest_c ^= low
                        if (fwd[b * n + c] >> d) & 1:
                            return (a, d, b, c)
    return None


def check_base_interval_antisymmetry_prop(space: FiniteIntervalSpace) -> bool:
    return base_interval_antisymmetry_prop_witness(space) is None


def stiff_convex_antisymmetry_witness(space: FiniteIntervalSpace, *, allow_large: bool = False) -> tuple | None:
    """Smallest (A, x, y) breaking: stiff implies every convex base order is
    antisymmetric off its base set.  Vacuously None when not stiff."""
    if stiffness_witness(space) is not None:
        return None
    return _d3_witness(space, space._convex_masks(allow_large=allow_large))


def check_stiff_implies_convex_antisymmetry(space: FiniteIntervalSpace, *, allow_large: bool = False) -> bool:
    return stiff_convex_antisymmetry_witness(space, allow_large=allow_large) is None


# ---------------------------------------------------------------------------
# Aggregated reports and the named-predicate registry


@dataclass
class PropertyReport:
    """Named flags plus witnesses for one space.

    ``flags`` maps each requested name to True/False, or None when the
    entry was skipped (subset-triple cap); ``notes`` explains every None
    and every hypothesis breach.  Every False flag has a witness.
    """

    n: int
    flags: dict[str, bool | None] = field(default_factory=dict)
    witnesses: dict[str, tuple] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)


def _antiexchange_flag(space: FiniteIntervalSpace) -> bool:
    return is_antiexchange(convex_closure_system(space))


def _combinatorial_flag(space: FiniteIntervalSpace) -> bool:
    return is_combinatorial(convex_closure_system(space))


def _antimatroid_flag(space: FiniteIntervalSpace) -> bool:
    return is_antimatroid(convex_closure_system(space))


#: Named boolean predicates usable in searches and the command line.
PROPERTY_CHECKS: dict[str, Callable[[FiniteIntervalSpace], bool]] = {
    "point-transitive": is_point_transitive,
    "point-antisymmetric": is_point_antisymmetric,
    "interval-transitive": is_interval_transitive,
    "interval-antisymmetric": is_interval_antisymmetric,
    "interval-convex": is_interval_convex,
    "stiff": is_stiff,
    "antiexchange": _antiexchange_flag,
    "combinatorial": _combinatorial_flag,
    "antimatroid": _antimatroid_flag,
}

_PROPERTY_WITNESSES: dict[str, Callable[[FiniteIntervalSpace], tuple | None]] = {
    "point-transitive": point_transitivity_witness,
    "point-antisymmetric": point_antisymmetry_witness,
    "interval-transitive": interval_transitivity_witness,
    "interval-antisymmetric": interval_antisymmetry_witness,
    "interval-convex": interval_convexity_witness,
    "stiff": stiffness_witness,
}


def resolve_properties(names: Iterable[str]) -> list[str]:
    """Validate predicate names against the registry, preserving order."""
    out = []
    for name in names:
        if name not in PROPERTY_CHECKS:
            known = ", ".join(sorted(PROPERTY_CHECKS))
            raise ValueError(f"unknown property {name!r}; known: {known}")
        out.append(name)
    return out


def property_report(
    space: FiniteIntervalSpace,
    names: Iterable[str] | None = None,
    *,
    include_conditions: bool = True,
    semigroup_conditions: bool | None = None,
    allow_large: bool = False,
) -> PropertyReport:
    """Evaluate named properties (all of them by default) on one space.

    With ``include_conditions`` the report also carries C1..C9 and D1..D5;
    the D conditions are always evaluated here, with a note recording the
    hypothesis breach when the space is not interval-transitive.
    """
    report = PropertyReport(n=space.n)
    selected = list(PROPERTY_NAMES) + list(CLOSURE_FLAG_NAMES) if names is None else resolve_properties(names)

    cs = None
    for name in selected:
        if name in _PROPERTY_WITNESSES:
            witness = _PROPERTY_WITNESSES[name](space)
            report.flags[name] = witness is None
            if witness is not None:
                report.witnesses[name] = witness
        else:
            if cs is None:
                cs = convex_closure_system(space, allow_large=allow_large)
            if name == "antiexchange":
                witness = antiexchange_witness(cs)
                report.flags[name] = witness is None
                if witness is not None:
                    report.witnesses[name] = witness
            elif name == "combinatorial":
                chain = combinatorial_witness(cs)
                report.flags[name] = chain is None
                if chain is not None:
                    report.witnesses[name] = chain
            elif name == "antimatroid":
                am = antimatroid_report(cs)
                report.flags[name] = am["antimatroid"]
                if not am["antimatroid"]:
                    report.witnesses[name] = am.get("antiexchange_witness", ("empty-set-not-closed",))

    if include_conditions:
        cv = transitivity_conditions(
            space, semigroup_conditions=semigroup_conditions, allow_large=allow_large
        )
        report.flags.update(cv.flags())
        report.witnesses.update(cv.witnesses)
        for name in cv.skipped:
            report.notes[name] = "skipped: subset-triple cap"
        dv = antisymmetry_conditions(
            space, allow_non_interval_transitive=True, allow_large=allow_large
        )
        report.flags.update(dv.flags())
        report.witnesses.update(dv.witnesses)
        if not dv.hypothesis_met:
            report.notes["antisymmetry-conditions"] = (
                "space is not interval-transitive; D1..D5 evaluated anyway and need not agree"
            )
    return report
