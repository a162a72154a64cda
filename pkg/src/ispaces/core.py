"""Finite interval spaces over dense integer point universes.

Points are the integers [0, n).  A betweenness table is a total ternary
relation <a, x, c> ("x lies between a and c") stored as one bit per ordered
triple.  A table satisfying the three interval-space axioms

  * endpoint reflexivity: <x, x, a> and <a, x, x> hold for all a, x,
  * middle symmetry:      <x, a, z> iff <z, a, x>,
  * thinness:             <x, y, x> implies y = x,

is promoted to a :class:`FiniteIntervalSpace`, which provides the interval
operators [a, c] and [A, C], convexity tests, convex hulls, and the
base-point / base-set "in front of" relations.

Subsets of the universe are bit masks wrapped in :class:`PointSet`; equality
is extensional.  Spaces, tables, sets and relations are immutable value
types and every operation is pure, so instances may be shared freely across
threads or worker processes.  Operations that materialize the full subset
lattice are gated behind explicit caps (`SUBSET_ENUMERATION_CAP`,
`SUBSET_TRIPLE_CAP`); exceeding a cap raises :class:`CapExceededError`
instead of silently blowing up.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator

#: Largest n for which 2^n subsets may be enumerated (convex_sets and friends).
SUBSET_ENUMERATION_CAP = 16

#: Largest n for which the full 2^n x 2^n set-interval table may be built
#: and scanned over subset triples.
SUBSET_TRIPLE_CAP = 10


class CapExceededError(RuntimeError):
    """An operation would enumerate more of the subset lattice than its cap allows."""


def bits_of(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_point(n: int, i: int, name: str = "point") -> None:
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
        raise ValueError(f"{name} id {i!r} out of range [0, {n})")


# ---------------------------------------------------------------------------
# Point sets


@dataclass(frozen=True)
class PointSet:
    """An extensional subset of the point universe [0, n), bit-indexed.

    Bit i of ``mask`` is set iff point i is a member.  Set algebra is only
    defined between sets over the same universe.
    """

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("universe size must be nonnegative")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"set members exceed universe [0, {self.n})")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "PointSet":
        m = 0
        for i in members:
            _check_point(n, i, "member")
            m |= 1 << i
        return cls(n, m)

    @classmethod
    def empty(cls, n: int) -> "PointSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "PointSet":
        return cls(n, (1 << n) - 1)

    @property
    def members(self) -> frozenset[int]:
        return frozenset(bits_of(self.mask))

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.n and (self.mask >> i) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def _same_universe(self, other: "PointSet") -> None:
        if not isinstance(other, PointSet):
            raise TypeError(f"expected PointSet, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"mixed universes: {self.n} vs {other.n}")

    def __or__(self, other: "PointSet") -> "PointSet":
        self._same_universe(other)
        return PointSet(self.n, self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._same_universe(other)
        return PointSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._same_universe(other)
        return PointSet(self.n, self.mask & ~other.mask)

    def issubset(self, other: "PointSet") -> bool:
        self._same_universe(other)
        return self.mask & ~other.mask == 0

    def complement(self) -> "PointSet":
        return PointSet(self.n, ~self.mask & ((1 << self.n) - 1))

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self) + "}"

    def __repr__(self) -> str:
        return f"PointSet.of({self.n}, {sorted(self.members)})"


# ---------------------------------------------------------------------------
# Betweenness tables and axiom validation


def _triple_index(n: int, a: int, x: int, c: int) -> int:
    return (a * n + x) * n + c


def _forced_bits(n: int) -> int:
    """Bits every interval space must have: <x, x, a> and <a, x, x> true."""
    bits = 0
    for a in range(n):
        for x in range(n):
            bits |= 1 << _triple_index(n, x, x, a)
            bits |= 1 << _triple_index(n, a, x, x)
    return bits


@dataclass(frozen=True)
class BetweennessTable:
    """A total ternary relation on [0, n): bit (a*n + x)*n + c holds <a, x, c>.

    Tables are raw data and may violate the interval-space axioms; use
    :func:`validate` (or :func:`axiom_violations`) to promote or diagnose.
    """

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("betweenness table needs at least one point")
        if self.bits < 0 or self.bits >> self.n ** 3:
            raise ValueError("relation bits exceed the n^3 triple range")

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[tuple[int, int, int]]) -> "BetweennessTable":
        """Table with exactly the given <a, x, c> triples true."""
        bits = 0
        for a, x, c in triples:
            _check_point(n, a)
            _check_point(n, x)
            _check_point(n, c)
            bits |= 1 << _triple_index(n, a, x, c)
        return cls(n, bits)

    @classmethod
    def completed(cls, n: int, triples: Iterable[tuple[int, int, int]]) -> "BetweennessTable":
        """Table with the given triples plus everything the axioms force.

        Adds all reflexivity-forced triples and the middle-symmetric partner
        <c, x, a> of every listed <a, x, c>.  A listed triple of the shape
        <a, x, a> with x != a can never sit in a valid space and is rejected.
        """
        bits = _forced_bits(n)
        for a, x, c in triples:
            _check_point(n, a)
            _check_point(n, x)
            _check_point(n, c)
            if a == c and x != a:
                raise ValueError(f"triple <{a},{x},{c}> breaks thinness: middle differs from repeated endpoint")
            bits |= 1 << _triple_index(n, a, x, c)
            bits |= 1 << _triple_index(n, c, x, a)
        return cls(n, bits)

    @classmethod
    def from_function(cls, n: int, rel: Callable[[int, int, int], bool]) -> "BetweennessTable":
        bits = 0
        for a in range(n):
            for x in range(n):
                for c in range(n):
                    if rel(a, x, c):
                        bits |= 1 << _triple_index(n, a, x, c)
        return cls(n, bits)

    def holds(self, a: int, x: int, c: int) -> bool:
        _check_point(self.n, a)
        _check_point(self.n, x)
        _check_point(self.n, c)
        return (self.bits >> _triple_index(self.n, a, x, c)) & 1 == 1

    def triples(self) -> Iterator[tuple[int, int, int]]:
        """All true triples, lexicographic."""
        n = self.n
        for a in range(n):
            for x in range(n):
                for c in range(n):
                    if (self.bits >> _triple_index(n, a, x, c)) & 1:
                        yield (a, x, c)


class Axiom(Enum):
    REFLEXIVITY = "reflexivity"
    MIDDLE_SYMMETRY = "middle-symmetry"
    THINNESS = "thinness"


@dataclass(frozen=True)
class AxiomViolation:
    """A triple witnessing that a table breaks one named axiom."""

    axiom: Axiom
    witness: tuple[int, int, int]

    def __str__(self) -> str:
        a, x, c = self.witness
        return f"{self.axiom.value} violated at <{a},{x},{c}>"


class ValidationError(ValueError):
    """Raised when a table fails axiom validation; carries every violation."""

    def __init__(self, violations: list[AxiomViolation]):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:4])
        more = "" if len(self.violations) <= 4 else f" (+{len(self.violations) - 4} more)"
        super().__init__(f"not an interval space: {head}{more}")


def axiom_violations(table: BetweennessTable) -> list[AxiomViolation]:
    """Every axiom violation in the table, with witness triples.

    Violations are listed per axiom (reflexivity, then middle symmetry, then
    thinness), each group in lexicographic witness order.  A symmetry breach
    is witnessed by the representative <x, a, z> with x < z.
    """
    n, bits = table.n, table.bits
    out: list[AxiomViolation] = []
    for a in range(n):
        for x in range(n):
            if not (bits >> _triple_index(n, x, x, a)) & 1:
                out.append(AxiomViolation(Axiom.REFLEXIVITY, (x, x, a)))
            if a != x and not (bits >> _triple_index(n, a, x, x)) & 1:
                out.append(AxiomViolation(Axiom.REFLEXIVITY, (a, x, x)))
    for x in range(n):
        for a in range(n):
            for z in range(x + 1, n):
                if ((bits >> _triple_index(n, x, a, z)) & 1) != ((bits >> _triple_index(n, z, a, x)) & 1):
                    out.append(AxiomViolation(Axiom.MIDDLE_SYMMETRY, (x, a, z)))
    for x in range(n):
        for y in range(n):
            if y != x and (bits >> _triple_index(n, x, y, x)) & 1:
                out.append(AxiomViolation(Axiom.THINNESS, (x, y, x)))
    return out


def validate(table: BetweennessTable) -> "FiniteIntervalSpace":
    """Promote a table to an interval space, or raise with every violation.

    The raised :class:`ValidationError` carries the complete violation list
    so hand-written tables can be diagnosed in one pass.
    """
    return FiniteIntervalSpace(table)


# ---------------------------------------------------------------------------
# Binary relations (base-point / base-set orders)


@dataclass(frozen=True)
class BinaryRelation:
    """A total binary relation on [0, n); ``rows[x]`` bit y holds R(x, y)."""

    n: int
    rows: tuple[int, ...]

    def holds(self, x: int, y: int) -> bool:
        _check_point(self.n, x)
        _check_point(self.n, y)
        return (self.rows[x] >> y) & 1 == 1

    def is_reflexive(self) -> bool:
        return all((self.rows[x] >> x) & 1 for x in range(self.n))

    def transitivity_witness(self) -> tuple[int, int, int] | None:
        """Lexicographically smallest (x, y, z) with R(x,y), R(y,z), not R(x,z)."""
        rows = self.rows
        for x in range(self.n):
            row_x = rows[x]
            rest = row_x
            while rest:
                low = rest & -rest
                y = low.bit_length() - 1
                rest ^= low
                extra = rows[y] & ~row_x
                if extra:
                    z = (extra & -extra).bit_length() - 1
                    return (x, y, z)
        return None

    def is_transitive(self) -> bool:
        return self.transitivity_witness() is None

    def antisymmetry_witness(self, within: PointSet | None = None) -> tuple[int, int] | None:
        """Smallest (x, y), x < y, both in ``within``, with R(x,y) and R(y,x).

        ``within`` restricts both quantifiers; None means all of [0, n).
        """
        scope = (1 << self.n) - 1 if within is None else within.mask
        rows = self.rows
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

    def is_antisymmetric(self, within: PointSet | None = None) -> bool:
        return self.antisymmetry_witness(within) is None

    def is_partial_order(self) -> bool:
        return self.is_reflexive() and self.is_transitive() and self.is_antisymmetric()


# ---------------------------------------------------------------------------
# Interval spaces


class FiniteIntervalSpace:
    """A betweenness table known to satisfy the interval-space axioms.

    Construction validates the three axioms and raises
    :class:`ValidationError` otherwise.  Instances are immutable; the only
    internal state beyond the table is a lazily built set-interval lookup
    table, which is a pure memo.
    """

    __slots__ = ("table", "n", "_ivl", "_fwd", "_tab")

    def __init__(self, table: BetweennessTable):
        violations = axiom_violations(table)
        if violations:
            raise ValidationError(violations)
        self._setup(table)

    @classmethod
    def _trusted(cls, table: BetweennessTable) -> "FiniteIntervalSpace":
        """Construction fast path for tables valid by construction."""
        space = cls.__new__(cls)
        space._setup(table)
        return space

    def _setup(self, table: BetweennessTable) -> None:
        n = table.n
        bits = table.bits
        self.table = table
        self.n = n
        # _ivl[a*n + c] over x, _fwd[a*n + x] over y: two slicings of <a, x, c>.
        ivl = [0] * (n * n)
        fwd = [0] * (n * n)
        idx = 0
        for a in range(n):
            for x in range(n):
                row = (bits >> idx) & ((1 << n) - 1)  # bits <a, x, 0..n-1>
                idx += n
                fwd[a * n + x] = row
                rest = row
                while rest:
                    low = rest & -rest
                    c = low.bit_length() - 1
                    rest ^= low
                    ivl[a * n + c] |= 1 << x
        self._ivl = tuple(ivl)
        self._fwd = tuple(fwd)
        self._tab: list[list[int]] | None = None

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteIntervalSpace):
            return NotImplemented
        return self.n == other.n and self.table.bits == other.table.bits

    def __hash__(self) -> int:
        return hash((self.n, self.table.bits))

    def __repr__(self) -> str:
        return f"FiniteIntervalSpace(n={self.n}, triples={self.table.bits.bit_count()})"

    def points(self) -> range:
        return range(self.n)

    @property
    def _full_mask(self) -> int:
        return (1 << self.n) - 1

    # -- the ternary relation and intervals ---------------------------------

    def holds(self, a: int, x: int, c: int) -> bool:
        """Whether x lies between a and c."""
        n = self.n
        _check_point(n, a)
        _check_point(n, x)
        _check_point(n, c)
        return (self._fwd[a * n + x] >> c) & 1 == 1

    def interval(self, a: int, c: int) -> PointSet:
        """[a, c]: every point between a and c (always contains both)."""
        _check_point(self.n, a)
        _check_point(self.n, c)
        return PointSet(self.n, self._ivl[a * self.n + c])

    def set_between(self, a_set: PointSet, x: int, c_set: PointSet) -> bool:
        """Whether <a, x, c> holds for some a in a_set, c in c_set."""
        self._check_set(a_set)
        self._check_set(c_set)
        _check_point(self.n, x)
        n = self.n
        fwd = self._fwd
        rest = a_set.mask
        cm = c_set.mask
        while rest:
            low = rest & -rest
            a = low.bit_length() - 1
            rest ^= low
            if fwd[a * n + x] & cm:
                return True
        return False

    def set_interval(self, a_set: PointSet, c_set: PointSet) -> PointSet:
        """[A, C]: points between some a in A and some c in C."""
        self._check_set(a_set)
        self._check_set(c_set)
        return PointSet(self.n, self._set_interval_mask(a_set.mask, c_set.mask))

    def is_convex(self, s: PointSet) -> bool:
        """Whether [S, S] is contained in S."""
        self._check_set(s)
        return self._is_convex_mask(s.mask)

    def hull(self, a_set: PointSet) -> PointSet:
        """Convex hull: least fixpoint of S -> S | [S, S] starting at a_set."""
        self._check_set(a_set)
        return PointSet(self.n, self._hull_mask(a_set.mask))

    def convex_sets(self, *, allow_large: bool = False) -> list[PointSet]:
        """All convex subsets, ascending by bit mask; always holds {} and X."""
        return [PointSet(self.n, m) for m in self._convex_masks(allow_large=allow_large)]

    # -- base orders ---------------------------------------------------------

    def base_point_order(self, a: int) -> BinaryRelation:
        """The "in front of a" relation: R(x, y) iff <a, x, y>."""
        _check_point(self.n, a)
        n = self.n
        return BinaryRelation(n, tuple(self._fwd[a * n + x] for x in range(n)))

    def base_set_order(self, a_set: PointSet) -> BinaryRelation:
        """R(x, y) iff <a, x, y> for some a in a_set."""
        self._check_set(a_set)
        return BinaryRelation(self.n, tuple(self._base_set_rows(a_set.mask)))

    # -- substructure --------------------------------------------------------

    def restrict(self, s: PointSet) -> "FiniteIntervalSpace":
        """Induced subspace on a nonempty subset.

        Points are relabeled in ascending order of their original ids; the
        axioms are universally quantified, so the restriction always
        validates.
        """
        self._check_set(s)
        if s.mask == 0:
            raise ValueError("cannot restrict to the empty set")
        keep = list(bits_of(s.mask))
        n_old = self.n
        fwd = self._fwd
        table = BetweennessTable.from_function(
            len(keep),
            lambda a, x, c: (fwd[keep[a] * n_old + keep[x]] >> keep[c]) & 1 == 1,
        )
        return FiniteIntervalSpace(table)

    # -- mask-level internals (shared with the checker modules) --------------

    def _check_set(self, s: PointSet) -> None:
        if not isinstance(s, PointSet):
            raise TypeError(f"expected PointSet, got {type(s).__name__}")
        if s.n != self.n:
            raise ValueError(f"point set universe {s.n} does not match space universe {self.n}")

    def _set_interval_mask(self, am: int, cm: int) -> int:
        # [A, C] is the union of [a, c] over a in A, c in C.
        n = self.n
        ivl = self._ivl
        out = 0
        rest_a = am
        while rest_a:
            low_a = rest_a & -rest_a
            base = (low_a.bit_length() - 1) * n
            rest_a ^= low_a
            rest_c = cm
            while rest_c:
                low_c = rest_c & -rest_c
                out |= ivl[base + low_c.bit_length() - 1]
                rest_c ^= low_c
        return out

    def _is_convex_mask(self, sm: int) -> bool:
        n = self.n
        ivl = self._ivl
        rest_a = sm
        while rest_a:
            low_a = rest_a & -rest_a
            base = (low_a.bit_length() - 1) * n
            rest_a ^= low_a
            rest_c = sm
            while rest_c:
                low_c = rest_c & -rest_c
                if ivl[base + low_c.bit_length() - 1] & ~sm:
                    return False
                rest_c ^= low_c
        return True

    def _hull_mask(self, am: int) -> int:
        cur = am
        while True:
            nxt = cur | self._set_interval_mask(cur, cur)
            if nxt == cur:
                return cur
            cur = nxt

    def _convex_masks(self, *, allow_large: bool = False) -> list[int]:
        if self.n > SUBSET_ENUMERATION_CAP and not allow_large:
            raise CapExceededError(
                f"enumerating 2^{self.n} subsets exceeds the cap n <= {SUBSET_ENUMERATION_CAP}; "
                "pass allow_large=True to override"
            )
        return [m for m in range(1 << self.n) if self._is_convex_mask(m)]

    def _base_set_rows(self, am: int) -> list[int]:
        n = self.n
        fwd = self._fwd
        rows = [0] * n
        rest = am
        while rest:
            low = rest & -rest
            base = (low.bit_length() - 1) * n
            rest ^= low
            for x in range(n):
                rows[x] |= fwd[base + x]
        return rows

    def _subset_table(self, *, allow_large: bool = False) -> list[list[int]]:
        """Full [A, C] lookup table over all 2^n x 2^n subset pairs (memoized)."""
        if self._tab is not None:
            return self._tab
        if self.n > SUBSET_TRIPLE_CAP and not allow_large:
            raise CapExceededError(
                f"the 4^{self.n}-entry set-interval table exceeds the cap n <= {SUBSET_TRIPLE_CAP}; "
                "pass allow_large=True to override"
            )
        n = self.n
        size = 1 << n
        ivl = self._ivl
        # cols[c][A] = union of [a, c] over a in A, by subset dynamic programming.
        cols = []
        for c in range(n):
            col = [0] * size
            for a_mask in range(1, size):
                low = a_mask & -a_mask
                col[a_mask] = col[a_mask ^ low] | ivl[(low.bit_length() - 1) * n + c]
            cols.append(col)
        tab = []
        for a_mask in range(size):
            row = [0] * size
            for c_mask in range(1, size):
                low = c_mask & -c_mask
                row[c_mask] = row[c_mask ^ low] | cols[low.bit_length() - 1][a_mask]
            tab.append(row)
        self._tab = tab
        return tab
